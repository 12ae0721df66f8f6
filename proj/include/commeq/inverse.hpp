#pragma once

#include <optional>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/matrix.hpp"
#include "commeq/series.hpp"
#include "commeq/solver_regular.hpp"
#include "commeq/taylor.hpp"

// The reversed equation f(XA - AX) = X. With Y = XA - AX one has
// X = f0 I + h(Y) for h the fluctuation of f, so X is a polynomial in Y,
// commutes with it, and Y is nilpotent. When f'(0) != 0 the substitution
// M = h(Y) turns the equation into the direct one for the compositional
// inverse of h about f0, and the solution sets coincide matrix for matrix.
// When f'(0) = 0 only the two small closed-form families below are known.

namespace commeq {

struct InverseSpec {
    Scalar f0;           // f(0), the spectrum point of every solution
    SeriesCoeffs coeffs; // f^(k)(0)/k! for k >= 1

    Scalar c(int k) const { return coeffs.coeff(k); }
    int order() const { return coeffs.order(); }

    // f = exp about 0: f0 = 1, c_k = 1/k!.
    static InverseSpec exp_preset(int n) {
        InverseSpec s;
        s.f0 = Scalar(1);
        for (int k = 1; k <= n - 1; ++k)
            s.coeffs.c.push_back(Scalar(Rational(1) / Rational::factorial(static_cast<unsigned>(k))));
        return s;
    }

    // f = t^p about 0.
    static InverseSpec monomial_preset(int p, int n) {
        if (p < 1) throw DimensionMismatch("monomial degree must be positive");
        InverseSpec s;
        if (p <= n - 1) {
            s.coeffs.c.assign(static_cast<size_t>(p), Scalar());
            s.coeffs.c.back() = Scalar(1);
        }
        return s;
    }
};

// Reduction to the direct equation: X solves f(XA-AX) = X exactly when X
// solves XA - AX = g(X) for g the reversion of f's fluctuation expanded
// about alpha = f0. Empty when f'(0) = 0 (no reversion exists; the special
// families below are the known remnant).
inline std::optional<TaylorSpec> reduce_inverse(const InverseSpec& spec, int n) {
    if (spec.c(1).is_zero()) return std::nullopt;
    SeriesCoeffs capped;
    for (int k = 1; k <= std::min(spec.order(), n - 1); ++k) capped.c.push_back(spec.c(k));
    TaylorSpec direct;
    direct.alpha = spec.f0;
    direct.origin = SpecOrigin::user;
    direct.coeffs = series_reversion(capped, n - 1).c;
    while (!direct.coeffs.empty() && direct.coeffs.back().is_zero()) direct.coeffs.pop_back();
    return direct;
}

// e^{XA-AX} = X, solved through the reduction; the resulting direct
// equation is exactly the logarithm one, so the family matches solve_log
// object for object.
inline RegularContext solve_exp(const Matrix& a, const std::vector<Scalar>& eigenvalues) {
    std::optional<TaylorSpec> direct = reduce_inverse(InverseSpec::exp_preset(a.n()), a.n());
    if (!direct) throw Error("exp reduction unexpectedly failed");
    return prepare_regular(a, eigenvalues, *direct);
}

// Closed-form solutions of (XA - AX)^2 = X in dimension 3, A = diag(u,v,w)
// with pairwise distinct entries; q and r are free nonzero parameters.
// Every member satisfies X^2 = 0 and shares no eigenvector with A.
struct Dim3Params {
    Scalar u, v, w, q, r;

    Dim3Params(Scalar u_, Scalar v_, Scalar w_, Scalar q_, Scalar r_)
        : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)), q(std::move(q_)), r(std::move(r_)) {
        if (u == v || v == w || u == w)
            throw ConstraintViolation("diagonal entries must be pairwise distinct");
        if (q.is_zero() || r.is_zero())
            throw ConstraintViolation("both free parameters must be nonzero");
    }

    Matrix a() const { return Matrix::diagonal({u, v, w}); }
};

inline Matrix dim3_family(const Dim3Params& p) {
    Scalar uv = p.u - p.v;
    Scalar vw = p.v - p.w;
    Scalar wu = p.w - p.u;
    Matrix x(3, 3);
    x.at(0, 0) = (wu * uv).inverse();
    x.at(0, 1) = p.q;
    x.at(0, 2) = p.q * p.r * uv * vw;
    x.at(1, 0) = (p.q * uv * uv * vw * wu).inverse();
    x.at(1, 1) = (uv * vw).inverse();
    x.at(1, 2) = p.r;
    x.at(2, 0) = (p.q * p.r * uv * uv * vw * vw * wu * wu).inverse();
    x.at(2, 1) = (p.r * vw * vw * wu * uv).inverse();
    x.at(2, 2) = (vw * wu).inverse();
    return x;
}

// Closed-form solutions of the mixed equation (XA - AX)^2 = X^2 in
// dimension 2, A = diag(u,v) with u != v. X is trace-free and its entries
// satisfy one exact relation; X is nilpotent exactly when b*c = 0.
struct SquareParams {
    Scalar u, v, a, b, c;

    SquareParams(Scalar u_, Scalar v_, Scalar a_, Scalar b_, Scalar c_)
        : u(std::move(u_)), v(std::move(v_)), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (u == v) throw ConstraintViolation("diagonal entries must be distinct");
        Scalar d = u - v;
        if (!(a * a + b * c * (d * d + Scalar(1))).is_zero())
            throw ConstraintViolation("entries must satisfy a^2 + b*c*((u-v)^2 + 1) = 0");
    }

    Matrix amat() const { return Matrix::diagonal({u, v}); }
};

inline Matrix square_family(const SquareParams& p) {
    Matrix x(2, 2);
    x.at(0, 0) = p.a;
    x.at(0, 1) = p.b;
    x.at(1, 0) = p.c;
    x.at(1, 1) = -p.a;
    return x;
}

// For nilpotent N commuting with NA - AN, both NA and AN are nilpotent.
// Used as an invariant probe on every reversed-equation solution.
inline bool kostant_check(const Matrix& n, const Matrix& a) {
    if (!is_nilpotent(n)) throw PreconditionFailed("probe needs a nilpotent first argument");
    Matrix y = commutator(n, a);
    if (!commutator(n, y).is_zero())
        throw PreconditionFailed("probe needs the first argument to commute with its bracket");
    return is_nilpotent(n * a) && is_nilpotent(a * n);
}

} // namespace commeq
