#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "commeq/errors.hpp"

namespace commeq {

// Arbitrary-precision rational with eagerly canonical representation:
// coprime numerator/denominator, denominator > 0. All construction paths
// canonicalize, so equality is plain representation equality.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}            // NOLINT: implicit by design
    Rational(long num, long den) {
        if (den == 0) throw SingularError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    // Accepts "p", "-p", "p/q" with optional sign on either part.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw ParseError("empty rational literal");
        auto digits_ok = [](std::string_view s) {
            if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        std::string_view num = text, den;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            num = text.substr(0, slash);
            den = text.substr(slash + 1);
            if (!digits_ok(den))
                throw ParseError("bad rational literal: " + std::string(text));
        }
        if (!digits_ok(num))
            throw ParseError("bad rational literal: " + std::string(text));
        auto strip_plus = [](std::string_view s) {
            if (!s.empty() && s[0] == '+') s.remove_prefix(1);  // mpz rejects a leading '+'
            return std::string(s);
        };
        mpz_class n(strip_plus(num), 10);
        if (den.empty()) return Rational(mpq_class(n));
        mpz_class d(strip_plus(den), 10);
        if (d == 0) throw ParseError("zero denominator: " + std::string(text));
        mpq_class q(n, d);
        q.canonicalize();
        Rational r;
        r.v_ = q;
        return r;
    }

    // Canonical text: "p/q", "/q" omitted when q == 1.
    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw SingularError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw SingularError("inverse of zero");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }

    Rational pow(unsigned e) const {
        Rational acc(1), base = *this;
        unsigned k = e;
        while (k) {
            if (k & 1u) acc *= base;
            base *= base;
            k >>= 1u;
        }
        return acc;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    static Rational factorial(unsigned n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(f);
    }

private:
    mpq_class v_;
};

// Element of Q(i): a + b*i with exact rational parts. Field operations
// take a pure-rational fast path when both imaginary parts vanish, which
// matters in the solver inner loops.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : re_(n) {}             // NOLINT: implicit by design
    Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    Scalar(long num, long den) : re_(num, den) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_integer() const { return im_.is_zero() && re_.is_integer(); }

    Scalar conj() const { return Scalar(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw SingularError("scalar division by zero");
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ /= o.re_;
            return *this;
        }
        Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const {
        if (is_zero()) throw SingularError("inverse of zero");
        if (im_.is_zero()) return Scalar(re_.inverse());
        Rational n = norm();
        return Scalar(re_ / n, -(im_ / n));
    }

    Scalar pow(unsigned e) const {
        Scalar acc(1), base = *this;
        unsigned k = e;
        while (k) {
            if (k & 1u) acc *= base;
            base *= base;
            k >>= 1u;
        }
        return acc;
    }

    // Compact text: "p/q" when real, "bi" when purely imaginary,
    // "a+bi" / "a-bi" otherwise. Round-trips through parse().
    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string imag;
        if (im_.is_one())
            imag = "i";
        else if ((-im_).is_one())
            imag = "-i";
        else
            imag = im_.str() + "i";
        if (re_.is_zero()) return imag;
        if (im_.sign() > 0 && imag[0] != '+') return re_.str() + "+" + imag;
        return re_.str() + imag;  // a negative part already carries its '-'
    }

    static Scalar parse(std::string_view text) {
        if (text.empty()) throw ParseError("empty scalar literal");
        if (text.back() != 'i') return Scalar(Rational::parse(text));
        std::string_view body = text.substr(0, text.size() - 1);
        if (body.empty() || body == "+") return i();
        if (body == "-") return -i();
        // Split "a+bi" / "a-bi" at the sign that starts the imaginary part:
        // the last '+'/'-' not at position 0 and not directly after '/'.
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
                split = k;
                break;
            }
        }
        if (split == std::string_view::npos)
            return Scalar(Rational(0), Rational::parse(body));
        Rational re = Rational::parse(body.substr(0, split));
        std::string_view imtext = body.substr(split);
        if (imtext == "+") return Scalar(re, Rational(1));
        if (imtext == "-") return Scalar(re, Rational(-1));
        if (imtext[0] == '+') imtext.remove_prefix(1);
        return Scalar(re, Rational::parse(imtext));
    }

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

private:
    Rational re_;
    Rational im_;
};

// Deterministic total order used for sorting spectra and map keys.
// Q(i) has no field order; this is purely lexicographic on (re, im).
inline bool total_less(const Scalar& a, const Scalar& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

struct ScalarLess {
    bool operator()(const Scalar& a, const Scalar& b) const { return total_less(a, b); }
};

} // namespace commeq
