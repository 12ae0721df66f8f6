#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/inverse.hpp"
#include "commeq/io.hpp"
#include "commeq/solver_critical.hpp"
#include "commeq/solver_regular.hpp"
#include "commeq/verify.hpp"

// In-process command implementations. The binary in tools/ only parses
// argv and forwards here, so tests can drive every command through
// string streams and assert on exit codes.
//
// Exit codes: 0 success / all checks pass, 1 validation or parse error,
// 2 verification failure, 3 solver constraint failure.

namespace commeq::cli {

struct AnalyzeOptions {
    std::string problem;
};

struct SolveOptions {
    std::string problem;
    std::string params;  // instantiation coefficients, one vector per slot
    std::optional<unsigned long long> seed;
    long long range = 10;
    std::string out;
};

struct VerifyOptions {
    std::string problem;
    std::string solution;  // line-delimited matrix documents
    std::string out;
};

struct PrPolysOptions {
    int rmax = 6;
    std::string subst;  // "log" substitutes a_i = (-1)^{i-1}/i
};

struct SpecialOptions {
    std::string family;  // "dim3" | "square"
    std::string params;  // comma-separated scalars
    std::optional<unsigned long long> seed;
    long long range = 10;
    std::string out;
};

inline int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConstraintViolation*>(&e) != nullptr ||
        dynamic_cast<const PivotFailure*>(&e) != nullptr ||
        dynamic_cast<const DerogatoryInput*>(&e) != nullptr ||
        dynamic_cast<const Unsupported*>(&e) != nullptr)
        return 3;
    return 1;
}

namespace detail {

inline std::vector<std::pair<int, json>> load_ndjson(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_ndjson(f);
}

inline json load_single_json(const std::string& path) {
    auto docs = load_ndjson(path);
    if (docs.size() != 1)
        throw ParseError(path + ": expected exactly one document, found " +
                         std::to_string(docs.size()));
    return docs[0].second;
}

inline int with_output(const std::string& path, std::ostream& fallback,
                       const std::function<int(std::ostream&)>& body) {
    if (path.empty()) return body(fallback);
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open output file " + path);
    return body(f);
}

// Uniform integer draws in [-range, range].
class Sampler {
public:
    Sampler(unsigned long long seed, long long range) : rng_(seed), range_(range) {
        if (range < 1) throw ParseError("--range must be at least 1");
    }

    Scalar draw() {
        auto span = static_cast<unsigned long long>(2 * range_ + 1);
        auto v = static_cast<long long>(rng_() % span) - range_;
        return Scalar(Rational(static_cast<long>(v)));
    }

    Scalar draw_nonzero() {
        for (;;) {
            Scalar s = draw();
            if (!s.is_zero()) return s;
        }
    }

private:
    std::mt19937_64 rng_;
    long long range_;
};

// Direct-mode dispatch: the sign of f'(alpha) picks the solver.
struct DirectDispatch {
    TaylorSpec spec;
    std::vector<Scalar> spectrum;
    std::optional<CriticalContext> crit;
    std::optional<RegularContext> reg;

    const SolutionFamily& family() const { return crit ? crit->family : reg->family; }

    Matrix instantiate(const std::vector<std::vector<Scalar>>& slots) const {
        return crit ? instantiate_critical(*crit, slots) : instantiate_regular(*reg, slots);
    }
};

inline DirectDispatch dispatch_direct(const ProblemFile& pf) {
    DirectDispatch d;
    d.spec = direct_spec(pf);
    d.spectrum = problem_spectrum(pf);
    if (d.spec.c(1).is_zero())
        d.crit = prepare_critical(pf.a, d.spectrum, d.spec);
    else
        d.reg = prepare_regular(pf.a, d.spectrum, d.spec);
    return d;
}

// Inverse-mode dispatch: reversion when f'(0) != 0, else the lone known
// closed-form route (f = t^2, n = 3, distinct diagonal A).
struct InverseDispatch {
    InverseSpec ispec;
    std::optional<TaylorSpec> reduced;
    std::optional<RegularContext> reg;
    std::optional<Dim3Params> dim3_base;  // u, v, w fixed; q, r to fill in
    SolutionFamily family;
};

inline bool is_distinct_diagonal(const Matrix& a) {
    int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !a.at(i, j).is_zero()) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.at(i, i) == a.at(j, j)) return false;
    return true;
}

inline InverseDispatch dispatch_inverse(const ProblemFile& pf) {
    InverseDispatch d;
    d.ispec = inverse_spec(pf);
    d.reduced = reduce_inverse(d.ispec, pf.a.n());
    if (d.reduced) {
        d.reg = prepare_regular(pf.a, problem_spectrum(pf), *d.reduced);
        d.family = d.reg->family;
        return d;
    }
    bool is_square_monomial = d.ispec.order() == 2 && d.ispec.c(1).is_zero() &&
                              d.ispec.c(2) == Scalar(1) && d.ispec.f0.is_zero();
    if (is_square_monomial && pf.a.n() == 3 && is_distinct_diagonal(pf.a)) {
        Dim3Params base{pf.a.at(0, 0), pf.a.at(1, 1), pf.a.at(2, 2), Scalar(1), Scalar(1)};
        d.dim3_base = base;
        d.family.kind = FamilyKind::inverse_special;
        d.family.parameter_count = 2;
        FamilySlot slot;
        slot.block = 0;
        slot.free_entries = {{1, 2}, {2, 3}};
        slot.constraints = {"x(1,2) != 0", "x(2,3) != 0"};
        d.family.slots.push_back(std::move(slot));
        d.family.assembly.blocks = {{Scalar(0), 3}};
        d.family.assembly.p = Matrix::identity(3);
        d.family.assembly.p_inv = Matrix::identity(3);
        d.family.assembly.identity_similarity = true;
        return d;
    }
    throw Unsupported("the equation has f'(0) = 0 and no known solution family for this input");
}

inline std::string scalar_pair(const Scalar& a, const Scalar& b) {
    return "(" + a.str() + "," + b.str() + ")";
}

inline std::string chains_text(const ChainPartition& part) {
    std::string s;
    for (const auto& chain : part.chains) {
        if (!s.empty()) s += " ";
        s += "{";
        for (std::size_t i = 0; i < chain.values.size(); ++i) {
            if (i) s += ", ";
            s += chain.values[i].str();
        }
        s += "}";
    }
    return s.empty() ? "(none)" : s;
}

inline std::string count_text(int n, const char* noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

} // namespace detail

// Prints classification facts for one problem: expansion point, f'(alpha),
// critical/regular split, existence verdict with a witnessing eigenvalue
// pair, chain partition (regular), block structure (critical).
inline int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        auto docs = detail::load_ndjson(opts.problem);
        if (docs.empty()) throw ParseError(opts.problem + ": no problem documents");
        for (const auto& [lineno, doc] : docs) {
            ProblemFile pf;
            try {
                pf = problem_from_json(doc);
            } catch (const Error& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
            if (docs.size() > 1) out << "# line " << lineno << "\n";
            auto spectrum = problem_spectrum(pf);
            int n = pf.a.n();

            if (pf.mode == ProblemMode::inverse) {
                InverseSpec ispec = inverse_spec(pf);
                out << "mode: inverse\n";
                out << "f(0): " << ispec.f0.str() << "\n";
                out << "f'(0): " << ispec.c(1).str() << "\n";
                if (ispec.c(1).is_zero()) {
                    try {
                        auto d = detail::dispatch_inverse(pf);
                        out << "summary: special closed-form family, "
                            << detail::count_text(d.family.parameter_count, "parameter") << "\n";
                    } catch (const Unsupported& e) {
                        out << "summary: unsupported (" << e.what() << ")\n";
                    }
                    continue;
                }
                TaylorSpec reduced = *reduce_inverse(ispec, n);
                out << "reduction: XA-AX = g(X) with g the reversed series about alpha = "
                    << reduced.alpha.str() << "\n";
                pf.mode = ProblemMode::direct;
                pf.f.preset.reset();
                pf.f.alpha = reduced.alpha;
                pf.f.coeffs = reduced.coeffs;
            }

            TaylorSpec spec = direct_spec(pf);
            Scalar c1 = spec.c(1);
            out << "alpha: " << spec.alpha.str() << "\n";
            out << "f'(alpha): " << c1.str() << "\n";
            ExistenceResult ex = existence_check(spectrum, c1);
            out << "nontrivial: "
                << (ex.nontrivial ? "yes, witness " + detail::scalar_pair(ex.lambda, ex.mu) : "no")
                << "\n";

            if (!c1.is_zero()) {
                Scalar inv = c1.inverse();
                std::vector<Scalar> prime;
                prime.reserve(spectrum.size());
                for (const auto& v : spectrum) prime.push_back(v * inv);
                out << "chains: " << detail::chains_text(chain_partition(prime)) << "\n";
                RegularContext ctx = prepare_regular(pf.a, spectrum, spec);
                out << "summary: regular, "
                    << detail::count_text(ctx.family.parameter_count, "parameter") << "\n";
                continue;
            }

            JordanStructure js = jordan_structure(pf.a, spectrum);
            bool nd = is_non_derogatory(js);
            const char* kind = spec.is_flat() ? "flat (commutant family)" : "critical";
            if (!nd) {
                out << "summary: " << kind
                    << ", derogatory (family construction requires one block per eigenvalue)\n";
                continue;
            }
            int distinct = static_cast<int>(generalized_eigenspaces(pf.a, spectrum).eigenvalues.size());
            out << "summary: " << kind << ", non-derogatory, "
                << detail::count_text(n - distinct, "parameter") << "\n";
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

// Solves one problem: emits the solution family, then an instance when
// parameters or a seed are given. Instances are verified before emission.
inline int cmd_solve(const SolveOptions& opts, std::ostream& deflt, std::ostream& err) {
    try {
        if (!opts.params.empty() && opts.seed)
            throw ParseError("give either --params or --random-seed, not both");
        json doc = detail::load_single_json(opts.problem);
        ProblemFile pf = problem_from_json(doc);

        std::optional<detail::DirectDispatch> direct;
        std::optional<detail::InverseDispatch> inv;
        if (pf.mode == ProblemMode::direct)
            direct = detail::dispatch_direct(pf);
        else
            inv = detail::dispatch_inverse(pf);
        const SolutionFamily& family = direct ? direct->family() : inv->family;

        return detail::with_output(opts.out, deflt, [&](std::ostream& out) {
            out << json{{"family", family_to_json(family)}}.dump() << "\n";
            if (opts.params.empty() && !opts.seed) return 0;

            auto instantiate = [&](const std::vector<std::vector<Scalar>>& slots) -> Matrix {
                if (direct) return direct->instantiate(slots);
                if (inv->reg) return instantiate_regular(*inv->reg, slots);
                if (slots.size() != 1 || slots[0].size() != 2)
                    throw ConstraintViolation("this family takes one slot of two parameters");
                Dim3Params p = *inv->dim3_base;
                p.q = slots[0][0];
                p.r = slots[0][1];
                return dim3_family(p);
            };

            Matrix x;
            json instance;
            if (!opts.params.empty()) {
                auto slots = params_from_json(detail::load_single_json(opts.params));
                x = instantiate(slots);
            } else {
                detail::Sampler sampler(*opts.seed, opts.range);
                long long rejections = 0;
                const long long max_attempts = 10000;
                std::optional<Matrix> got;
                for (long long attempt = 0; attempt < max_attempts && !got; ++attempt) {
                    std::vector<std::vector<Scalar>> slots;
                    for (const auto& s : family.slots) {
                        std::vector<Scalar> v;
                        v.reserve(s.free_entries.size());
                        for (std::size_t i = 0; i < s.free_entries.size(); ++i)
                            v.push_back(sampler.draw());
                        slots.push_back(std::move(v));
                    }
                    try {
                        got = instantiate(slots);
                    } catch (const ConstraintViolation&) {
                        ++rejections;
                    } catch (const PivotFailure&) {
                        ++rejections;
                    }
                }
                if (!got)
                    throw ConstraintViolation("no admissible draw in " +
                                              std::to_string(max_attempts) + " attempts");
                x = *got;
                instance["seed"] = *opts.seed;
                instance["rejections"] = rejections;
            }

            VerificationReport rep;
            if (direct)
                rep = verify_direct(pf.a, x, direct->spec, direct->spectrum);
            else
                rep = verify_inverse(pf.a, x, inv->ispec);
            instance["matrix"] = matrix_to_json(x);
            instance["report"] = report_to_json(rep);
            out << instance.dump() << "\n";
            if (!rep.all_pass()) {
                err << "error: instance failed verification\n";
                return 2;
            }
            return 0;
        });
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

// Re-checks solution matrices against a problem file. Documents carrying a
// "family" key are skipped so solve output can be piped back in whole.
inline int cmd_verify(const VerifyOptions& opts, std::ostream& deflt, std::ostream& err) {
    try {
        auto problem_docs = detail::load_ndjson(opts.problem);
        if (problem_docs.empty()) throw ParseError(opts.problem + ": no problem documents");
        std::vector<ProblemFile> problems;
        for (const auto& [lineno, doc] : problem_docs) {
            try {
                problems.push_back(problem_from_json(doc));
            } catch (const Error& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
        }

        auto docs = detail::load_ndjson(opts.solution);
        std::vector<std::pair<int, Matrix>> xs;
        for (const auto& [lineno, doc] : docs) {
            if (doc.is_object() && doc.contains("family")) continue;
            const json& m = doc.is_object() && doc.contains("matrix") ? doc.at("matrix") : doc;
            try {
                xs.emplace_back(lineno, matrix_from_json(m));
            } catch (const Error& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        if (xs.empty()) throw ParseError(opts.solution + ": no solution matrices");
        if (problems.size() > 1 && xs.size() != problems.size())
            throw ParseError("matrix count does not match problem count");

        return detail::with_output(opts.out, deflt, [&](std::ostream& out) {
            bool all = true;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const ProblemFile& pf = problems.size() == 1 ? problems[0] : problems[i];
                VerificationReport rep;
                if (pf.mode == ProblemMode::direct)
                    rep = verify_direct(pf.a, xs[i].second, direct_spec(pf), problem_spectrum(pf));
                else
                    rep = verify_inverse(pf.a, xs[i].second, inverse_spec(pf));
                all = all && rep.all_pass();
                out << report_to_json(rep).dump() << "\n";
            }
            if (!all) err << "error: verification failed\n";
            return all ? 0 : 2;
        });
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

// Prints the reduced coefficient polynomials P_2 .. P_rmax in the chain
// variables a2, a3, ... With --subst log each line also evaluates at
// a_i = (-1)^{i-1}/i.
inline int cmd_pr_polys(const PrPolysOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.rmax < 2) throw ParseError("--rmax must be at least 2");
        if (!opts.subst.empty() && opts.subst != "log")
            throw ParseError("--subst only supports \"log\"");
        auto prs = pr_polynomials(opts.rmax);
        std::map<std::string, Scalar> logsub;
        if (!opts.subst.empty())
            for (int i = 2; i <= opts.rmax; ++i)
                logsub["a" + std::to_string(i)] =
                    Scalar(Rational(i % 2 == 0 ? -1 : 1, i));
        for (int r = 2; r <= opts.rmax; ++r) {
            out << "P_" << r << " = " << prs[static_cast<std::size_t>(r)].str();
            if (!opts.subst.empty())
                out << " | log substitution: "
                    << prs[static_cast<std::size_t>(r)].substitute(logsub).str();
            out << "\n";
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

namespace detail {

inline std::vector<Scalar> parse_scalar_csv(const std::string& text, std::size_t expect) {
    std::vector<Scalar> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) out.push_back(Scalar::parse(tok));
    if (out.size() != expect)
        throw ParseError("expected " + std::to_string(expect) + " comma-separated values, got " +
                         std::to_string(out.size()));
    return out;
}

inline VerificationReport dim3_report(const Dim3Params& p, const Matrix& x) {
    Matrix a = p.a();
    VerificationReport rep = verify_inverse(a, x, InverseSpec::monomial_preset(2, 3));
    Matrix y = commutator(x, a);
    rep.checks.push_back({"square-relation", y * y == x, ""});
    rep.checks.push_back({"solution-square-zero", (x * x).is_zero(), ""});
    bool basis_free = true;
    for (int j = 0; j < 3 && basis_free; ++j) {
        std::vector<Scalar> e(3);
        e[static_cast<std::size_t>(j)] = Scalar(1);
        if (commeq::detail::is_zero_vector(commeq::detail::apply(x, e))) basis_free = false;
    }
    rep.checks.push_back({"kernel-avoids-standard-basis", basis_free, ""});
    return rep;
}

} // namespace detail

// Closed-form families outside the Taylor dispatch: the 3x3 family for
// (XA-AX)^2 = X and the 2x2 family for (XA-AX)^2 = X^2.
inline int cmd_special(const SpecialOptions& opts, std::ostream& deflt, std::ostream& err) {
    try {
        if (opts.family != "dim3" && opts.family != "square")
            throw ParseError("--family must be dim3 or square");
        if (!opts.params.empty() && opts.seed)
            throw ParseError("give either --params or --random-seed, not both");
        if (opts.params.empty() && !opts.seed)
            throw ParseError("give --params or --random-seed");

        return detail::with_output(opts.out, deflt, [&](std::ostream& out) {
            Matrix a, x;
            VerificationReport rep;
            if (opts.family == "dim3") {
                std::optional<Dim3Params> p;
                if (!opts.params.empty()) {
                    auto v = detail::parse_scalar_csv(opts.params, 5);
                    p = Dim3Params{v[0], v[1], v[2], v[3], v[4]};
                } else {
                    detail::Sampler s(*opts.seed, opts.range);
                    for (;;) {
                        Scalar u = s.draw(), v = s.draw(), w = s.draw();
                        if (u == v || v == w || u == w) continue;
                        p = Dim3Params{u, v, w, s.draw_nonzero(), s.draw_nonzero()};
                        break;
                    }
                }
                a = p->a();
                x = dim3_family(*p);
                rep = detail::dim3_report(*p, x);
            } else {
                std::optional<SquareParams> p;
                if (!opts.params.empty()) {
                    auto v = detail::parse_scalar_csv(opts.params, 5);
                    p = SquareParams{v[0], v[1], v[2], v[3], v[4]};
                } else {
                    detail::Sampler s(*opts.seed, opts.range);
                    for (;;) {
                        Scalar u = s.draw(), v = s.draw();
                        if (u == v) continue;
                        Scalar aa = s.draw(), b = s.draw_nonzero();
                        Scalar d = u - v;
                        Scalar c = -(aa * aa) * (b * (d * d + Scalar(1))).inverse();
                        p = SquareParams{u, v, aa, b, c};
                        break;
                    }
                }
                a = p->amat();
                x = square_family(*p);
                rep = verify_mixed_square(a, x);
                bool bc_zero = (p->b * p->c).is_zero();
                rep.checks.push_back({"nilpotent-iff-offdiagonal-product-zero",
                                      is_nilpotent(x) == bc_zero, ""});
            }
            json doc{{"A", matrix_to_json(a)},
                     {"matrix", matrix_to_json(x)},
                     {"report", report_to_json(rep)}};
            out << doc.dump() << "\n";
            if (!rep.all_pass()) {
                err << "error: family member failed verification\n";
                return 2;
            }
            return 0;
        });
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace commeq::cli
