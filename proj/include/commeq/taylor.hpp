#pragma once

#include <string>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/matrix.hpp"
#include "commeq/scalar.hpp"

namespace commeq {

// Where a spec came from; user-supplied specs keep their raw coefficients.
enum class SpecOrigin { user, preset_log, preset_exp, preset_monomial };

// f described by its expansion point alpha (the unique zero of f for the
// direct equation) and the Taylor coefficients c_k = f^(k)(alpha)/k!.
// Everything downstream only ever reads the first n-1 coefficients, since
// higher powers of a nilpotent n x n matrix vanish.
struct TaylorSpec {
    Scalar alpha;
    std::vector<Scalar> coeffs;  // coeffs[k-1] = c_k
    SpecOrigin origin = SpecOrigin::user;

    int order() const { return static_cast<int>(coeffs.size()); }

    Scalar c(int k) const {
        if (k < 1 || k > order()) return Scalar();
        return coeffs[static_cast<std::size_t>(k - 1)];
    }

    Scalar derivative_at_alpha() const { return c(1); }

    bool is_flat() const {
        for (const auto& x : coeffs)
            if (!x.is_zero()) return false;
        return true;
    }

    // Truncate to the n-1 coefficients that matter in dimension n.
    // Returns whether anything nonzero was discarded so the caller can warn.
    bool truncate_for_dimension(int n) {
        bool dropped = false;
        if (order() > n - 1) {
            for (int k = n; k <= order(); ++k)
                if (!c(k).is_zero()) dropped = true;
            coeffs.resize(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
        }
        return dropped;
    }

    // f = log: alpha = 1, c_k = (-1)^{k-1}/k.
    static TaylorSpec log_preset(int n) {
        TaylorSpec s;
        s.alpha = Scalar(1);
        for (int k = 1; k <= n - 1; ++k)
            s.coeffs.push_back(Scalar(Rational(k % 2 == 1 ? 1 : -1, k)));
        s.origin = SpecOrigin::preset_log;
        return s;
    }

    // f = t^p: alpha = 0, single coefficient c_p = 1 (clipped at n-1).
    static TaylorSpec monomial_preset(int p, int n) {
        if (p < 1) throw PreconditionFailed("monomial exponent must be positive");
        TaylorSpec s;
        s.alpha = Scalar(0);
        if (p <= n - 1) {
            s.coeffs.assign(static_cast<std::size_t>(p), Scalar());
            s.coeffs[static_cast<std::size_t>(p - 1)] = Scalar(1);
        }
        s.origin = SpecOrigin::preset_monomial;
        return s;
    }
};

// f(X) = sum_{k>=1} c_k (X - alpha I)^k, which is exact because the sum
// truncates at the nilpotency order of X - alpha I. Throws SpectrumNotPoint
// when the spectrum of X is not the single point alpha.
inline Matrix eval_f(const TaylorSpec& spec, const Matrix& x) {
    int n = x.n();
    Matrix nshift = x - spec.alpha * Matrix::identity(n);
    if (!is_nilpotent(nshift))
        throw SpectrumNotPoint("argument spectrum is not the single point alpha");
    int kmax = spec.order() < n - 1 ? spec.order() : n - 1;
    // Horner: acc <- N*acc + c_k*N accumulates sum c_k N^k exactly.
    Matrix acc(n, n);
    for (int k = kmax; k >= 1; --k) {
        acc = nshift * acc;
        Scalar ck = spec.c(k);
        if (!ck.is_zero()) acc += ck * nshift;
    }
    return acc;
}

} // namespace commeq
