#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/scalar.hpp"

namespace commeq {

// Canonical monomial order: total degree descending, then exponent vector
// lexicographically descending. Drives both map iteration and printing.
struct MonomialOrder {
    bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        unsigned da = 0, db = 0;
        for (unsigned e : a) da += e;
        for (unsigned e : b) db += e;
        if (da != db) return da > db;
        // Compare position by position, treating missing entries as zero.
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            unsigned ea = k < a.size() ? a[k] : 0;
            unsigned eb = k < b.size() ? b[k] : 0;
            if (ea != eb) return ea > eb;
        }
        return false;
    }
};

// Sparse multivariate polynomial with rational coefficients over a named,
// ordered variable list. Zero coefficients are never stored.
class MultiPoly {
public:
    using Terms = std::map<std::vector<unsigned>, Rational, MonomialOrder>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const Rational& c, std::vector<std::string> vars = {}) {
        MultiPoly p(std::move(vars));
        if (!c.is_zero()) p.terms_[std::vector<unsigned>(p.vars_.size(), 0)] = c;
        return p;
    }

    static MultiPoly variable(const std::string& name, const std::vector<std::string>& vars) {
        MultiPoly p(vars);
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw VariableMismatch("unknown variable " + name);
        std::vector<unsigned> e(vars.size(), 0);
        e[static_cast<std::size_t>(it - vars.begin())] = 1;
        p.terms_[std::move(e)] = Rational(1);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::vector<unsigned> expo, const Rational& c) {
        if (c.is_zero()) return;
        expo.resize(vars_.size(), 0);
        auto [it, inserted] = terms_.try_emplace(std::move(expo), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // Reinterpret over a wider variable list; the current list must be a
    // prefix of the new one.
    MultiPoly extended_to(const std::vector<std::string>& vars) const {
        if (vars.size() < vars_.size() ||
            !std::equal(vars_.begin(), vars_.end(), vars.begin()))
            throw VariableMismatch("variable list is not an extension");
        MultiPoly r(vars);
        for (const auto& [e, c] : terms_) {
            std::vector<unsigned> ee = e;
            ee.resize(vars.size(), 0);
            r.terms_[std::move(ee)] = c;
        }
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, c);
        return x;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
        return x;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        MultiPoly r(x.vars_);
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                std::vector<unsigned> e(x.vars_.size());
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const Rational& s) {
        MultiPoly r(a.vars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = c * s;
        return r;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a) { return a * s; }

    // Semantic equality: same coefficient for every monomial, matching
    // variables by name (unused trailing variables are irrelevant).
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_.size() >= b.vars_.size()) {
            if (!std::equal(b.vars_.begin(), b.vars_.end(), a.vars_.begin())) return false;
            return a.terms_ == b.extended_to(a.vars_).terms_;
        }
        return b == a;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Full evaluation; every variable that actually occurs must be assigned.
    Scalar substitute(const std::map<std::string, Scalar>& values) const {
        Scalar total;
        for (const auto& [e, c] : terms_) {
            Scalar term(c);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                auto it = values.find(vars_[k]);
                if (it == values.end())
                    throw VariableMismatch("no value for variable " + vars_[k]);
                term *= it->second.pow(e[k]);
            }
            total += term;
        }
        return total;
    }

    // Weighted degree with per-variable weights; used by homogeneity checks.
    bool is_weighted_homogeneous(const std::map<std::string, unsigned>& weight,
                                 unsigned target) const {
        for (const auto& [e, c] : terms_) {
            unsigned w = 0;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                auto it = weight.find(vars_[k]);
                if (it == weight.end())
                    throw VariableMismatch("no weight for variable " + vars_[k]);
                w += e[k] * it->second;
            }
            if (w != target) return false;
        }
        return true;
    }

    // Canonical text: terms in monomial order, "coeff*var^e*..." with a
    // unit coefficient omitted; " + " / " - " separators carry the sign.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational coeff = c;
            if (first) {
                if (coeff.sign() < 0) {
                    out += "-";
                    coeff = -coeff;
                }
                first = false;
            } else {
                out += coeff.sign() < 0 ? " - " : " + ";
                coeff = coeff.abs();
            }
            std::string mono;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[k];
                if (e[k] > 1) mono += "^" + std::to_string(e[k]);
            }
            if (mono.empty()) {
                out += coeff.str();
            } else {
                if (!coeff.is_one()) out += coeff.str() + "*";
                out += mono;
            }
        }
        return out;
    }

    // Parses the canonical text form over a known variable list.
    static MultiPoly parse(std::string_view text, const std::vector<std::string>& vars) {
        MultiPoly p(vars);
        if (text == "0") return p;
        std::size_t pos = 0;
        bool negative = false;
        if (!text.empty() && text[0] == '-') {
            negative = true;
            pos = 1;
        }
        while (pos < text.size()) {
            std::size_t next = text.find(' ', pos);
            std::string_view term = text.substr(pos, next == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : next - pos);
            p.add_parsed_term(term, negative);
            if (next == std::string_view::npos) break;
            // Expect " + " or " - " between terms.
            if (next + 2 >= text.size() || text[next + 2] != ' ')
                throw ParseError("bad polynomial separator");
            char op = text[next + 1];
            if (op == '+') negative = false;
            else if (op == '-') negative = true;
            else throw ParseError("bad polynomial separator");
            pos = next + 3;
        }
        return p;
    }

private:
    // Pads the narrower operand so both share a variable list.
    static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_.size() == b.vars_.size()) {
            if (a.vars_ != b.vars_) throw VariableMismatch("variable lists differ");
            return {a, b};
        }
        if (a.vars_.size() < b.vars_.size()) return {a.extended_to(b.vars_), b};
        return {a, b.extended_to(a.vars_)};
    }

    void add_parsed_term(std::string_view term, bool negative) {
        if (term.empty()) throw ParseError("empty polynomial term");
        Rational coeff(1);
        std::vector<unsigned> e(vars_.size(), 0);
        std::size_t pos = 0;
        bool saw_factor = false, saw_coeff = false;
        while (pos <= term.size()) {
            std::size_t star = term.find('*', pos);
            std::string_view factor = term.substr(
                pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
            if (factor.empty()) throw ParseError("empty factor in term");
            bool numeric = factor[0] == '-' || factor[0] == '+' ||
                           (factor[0] >= '0' && factor[0] <= '9');
            if (numeric) {
                if (saw_factor || saw_coeff) throw ParseError("misplaced coefficient");
                coeff = Rational::parse(factor);
                saw_coeff = true;
            } else {
                std::size_t caret = factor.find('^');
                std::string name(factor.substr(0, caret));
                unsigned ex = 1;
                if (caret != std::string_view::npos) {
                    std::string etext(factor.substr(caret + 1));
                    if (etext.empty()) throw ParseError("empty exponent");
                    ex = 0;
                    for (char ch : etext) {
                        if (ch < '0' || ch > '9') throw ParseError("bad exponent");
                        ex = ex * 10 + static_cast<unsigned>(ch - '0');
                    }
                }
                auto it = std::find(vars_.begin(), vars_.end(), name);
                if (it == vars_.end()) throw VariableMismatch("unknown variable " + name);
                e[static_cast<std::size_t>(it - vars_.begin())] += ex;
                saw_factor = true;
            }
            if (star == std::string_view::npos) break;
            pos = star + 1;
        }
        add_term(std::move(e), negative ? -coeff : coeff);
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

} // namespace commeq
