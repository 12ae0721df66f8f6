#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commeq/inverse.hpp"
#include "commeq/jordan.hpp"
#include "commeq/linsolve.hpp"
#include "commeq/matrix.hpp"
#include "commeq/taylor.hpp"

// Independent residual oracle. Everything is recomputed from (A, X, spec)
// alone with exact arithmetic; a failed check is a report entry, never an
// exception. Solvers share no code with this file beyond the arithmetic
// layer, so agreement between the two is meaningful evidence.

namespace commeq {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    bool residual_zero = false;
    std::optional<Scalar> spectrum_point;
    int nilpotency_index_of_n = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        if (!residual_zero) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline CheckResult check(std::string name, bool pass, std::string detail = "") {
    return CheckResult{std::move(name), pass, std::move(detail)};
}

// Does A map ker(N^j) into itself for every j up to the nilpotency index?
// Membership of A v in ker(N^j) is the exact test N^j (A v) = 0.
inline bool is_zero_vector(const std::vector<Scalar>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline bool kernel_tower_invariant(const Matrix& nmat, const Matrix& a, int index,
                                   std::string& detail) {
    Matrix pw = Matrix::identity(nmat.n());
    for (int j = 1; j <= index; ++j) {
        pw = pw * nmat;
        for (const auto& v : kernel_basis(pw)) {
            std::vector<Scalar> av = detail::apply(a, v);
            if (!is_zero_vector(detail::apply(pw, av))) {
                detail = "kernel of power " + std::to_string(j) + " not preserved";
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

// Full battery for XA - AX = f(X). Optional eigenvalues enable the
// generalized-eigenspace invariance check in the vanishing-derivative
// case; without them that check is skipped (not failed).
inline VerificationReport verify_direct(const Matrix& a, const Matrix& x, const TaylorSpec& spec,
                                        const std::optional<std::vector<Scalar>>& eigenvalues = std::nullopt) {
    VerificationReport rep;
    int n = a.n();
    if (x.n() != n) {
        rep.checks.push_back(detail::check("shape", false, "operand sizes differ"));
        return rep;
    }

    Matrix nmat = x;
    for (int d = 0; d < n; ++d) nmat.at(d, d) -= spec.alpha;
    bool point = is_nilpotent(nmat);
    rep.checks.push_back(detail::check("spectrum-point", point,
                                       point ? "" : "X - alpha I is not nilpotent"));
    if (!point) return rep;
    rep.spectrum_point = spec.alpha;
    rep.nilpotency_index_of_n = nilpotency_index(nmat);

    Matrix comm = commutator(x, a);
    Matrix fx = eval_f(spec, x);
    rep.residual_zero = (comm == fx);
    rep.checks.push_back(detail::check("residual-zero", rep.residual_zero));

    rep.checks.push_back(detail::check("commutator-nilpotent", is_nilpotent(comm)));

    // Bracket powers: [X^i, A] telescopes to i X^{i-1} f(X) because f(X)
    // commutes with X.
    bool powers_ok = true;
    std::string powers_detail;
    Matrix xi = Matrix::identity(n);   // X^{i-1}
    Matrix xi1 = x;                    // X^i
    for (int i = 1; i <= n; ++i) {
        if (commutator(xi1, a) != Scalar(i) * (xi * fx)) {
            powers_ok = false;
            powers_detail = "fails at power " + std::to_string(i);
            break;
        }
        xi = xi1;
        xi1 = xi1 * x;
    }
    rep.checks.push_back(detail::check("bracket-powers", powers_ok, powers_detail));

    std::string tower_detail;
    bool tower_ok = detail::kernel_tower_invariant(nmat, a, rep.nilpotency_index_of_n, tower_detail);
    rep.checks.push_back(detail::check("kernel-tower-invariant", tower_ok, tower_detail));

    if (spec.c(1).is_zero() && eigenvalues) {
        bool inv_ok = true;
        std::string inv_detail;
        try {
            EigenspaceDecomposition dec = generalized_eigenspaces(a, *eigenvalues);
            for (size_t s = 0; s < dec.bases.size() && inv_ok; ++s) {
                for (const auto& v : dec.bases[s]) {
                    if (!in_span(dec.bases[s], detail::apply(x, v))) {
                        inv_ok = false;
                        inv_detail = "eigenspace of " + dec.eigenvalues[s].str() + " not preserved";
                        break;
                    }
                }
            }
        } catch (const Error& e) {
            inv_ok = false;
            inv_detail = e.what();
        }
        rep.checks.push_back(detail::check("eigenspace-invariant", inv_ok, inv_detail));
    }
    return rep;
}

// Battery for f(XA - AX) = X: rebuild X from the commutator through the
// series and compare, then probe nilpotency structure.
inline VerificationReport verify_inverse(const Matrix& a, const Matrix& x, const InverseSpec& spec) {
    VerificationReport rep;
    int n = a.n();
    if (x.n() != n) {
        rep.checks.push_back(detail::check("shape", false, "operand sizes differ"));
        return rep;
    }

    Matrix y = commutator(x, a);
    bool ynil = is_nilpotent(y);
    rep.checks.push_back(detail::check("commutator-nilpotent", ynil,
                                       ynil ? "" : "series at the commutator undefined"));
    if (!ynil) return rep;

    int kmax = std::min(spec.order(), n - 1);
    Matrix rebuilt(n, n);
    for (int k = kmax; k >= 1; --k) {
        rebuilt = y * rebuilt;
        Scalar ck = spec.c(k);
        if (!ck.is_zero()) rebuilt += ck * y;
    }
    for (int d = 0; d < n; ++d) rebuilt.at(d, d) += spec.f0;
    rep.residual_zero = (rebuilt == x);
    rep.checks.push_back(detail::check("series-at-commutator", rep.residual_zero));

    Matrix nmat = x;
    for (int d = 0; d < n; ++d) nmat.at(d, d) -= spec.f0;
    bool point = is_nilpotent(nmat);
    rep.checks.push_back(detail::check("spectrum-point", point));
    if (point) {
        rep.spectrum_point = spec.f0;
        rep.nilpotency_index_of_n = nilpotency_index(nmat);
        try {
            bool k = kostant_check(nmat, a);
            rep.checks.push_back(detail::check("one-sided-products-nilpotent", k));
        } catch (const Error& e) {
            rep.checks.push_back(detail::check("one-sided-products-nilpotent", false, e.what()));
        }
    }
    return rep;
}

// Battery for the mixed equation (XA - AX)^2 = X^2.
inline VerificationReport verify_mixed_square(const Matrix& a, const Matrix& x) {
    VerificationReport rep;
    Matrix y = commutator(x, a);
    rep.residual_zero = (y * y == x * x);
    rep.checks.push_back(detail::check("commutator-square-matches", rep.residual_zero));
    rep.checks.push_back(detail::check("trace-free", x.trace().is_zero()));
    return rep;
}

} // namespace commeq
