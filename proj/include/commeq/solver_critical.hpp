#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/family.hpp"
#include "commeq/jordan.hpp"
#include "commeq/linsolve.hpp"
#include "commeq/matrix.hpp"
#include "commeq/taylor.hpp"

// Solver for the case f'(alpha) = 0. Writing X = alpha I + N with N
// nilpotent, the equation becomes N A - A N = h(N) where h(t) = t^p g(t),
// p >= 2 is the valuation of f at alpha and g(0) != 0. For non-derogatory
// A the solutions split along the Jordan blocks of A, and inside one
// block of size m the strictly upper entries of N are determined by the
// last column alone, one false diagonal at a time.

namespace commeq {

// Shifted series data: h(t) = t^p g(t) = f(alpha + t) - f(alpha) with the
// linear term removed (it is zero here). flat means h == 0, i.e. the plain
// commutation equation XA = AX.
struct CriticalForm {
    Scalar alpha;
    bool flat = true;
    int p = 0;
    std::vector<Scalar> g;  // g[j] = coefficient of t^(p+j); g[0] != 0 unless flat
    Scalar k2;              // coefficient of t^2 in h, nonzero only when p == 2

    // Coefficient of t^j in h(t).
    Scalar h(int j) const {
        if (flat || j < p) return Scalar();
        int idx = j - p;
        if (idx >= static_cast<int>(g.size())) return Scalar();
        return g[static_cast<size_t>(idx)];
    }

    int max_degree() const { return flat ? 0 : p + static_cast<int>(g.size()) - 1; }
};

inline CriticalForm derive_critical_form(const TaylorSpec& spec, int n) {
    if (!spec.c(1).is_zero())
        throw PreconditionFailed("critical form requires a vanishing linear coefficient");
    CriticalForm form;
    form.alpha = spec.alpha;
    int kmax = std::min(spec.order(), n - 1);
    int p = 0;
    for (int k = 2; k <= kmax; ++k) {
        if (!spec.c(k).is_zero()) { p = k; break; }
    }
    if (p == 0) return form;  // flat
    form.flat = false;
    form.p = p;
    for (int k = p; k <= kmax; ++k) form.g.push_back(spec.c(k));
    while (!form.g.empty() && form.g.back().is_zero()) form.g.pop_back();
    if (p == 2) form.k2 = form.g.front();
    return form;
}

// Existence of a nontrivial solution with X - alpha I nilpotent, decided
// on the spectrum alone: some ordered pair of positions i != j must have
// value difference equal to f'(alpha). With f'(alpha) = 0 this means a
// repeated eigenvalue; with f'(alpha) != 0 a gap of exactly that size.
struct ExistenceResult {
    bool nontrivial = false;
    Scalar lambda;  // first eigenvalue of the witnessing pair (lambda - mu = f'(alpha))
    Scalar mu;
};

inline ExistenceResult existence_check(const std::vector<Scalar>& spectrum, const Scalar& fprime) {
    ExistenceResult r;
    size_t n = spectrum.size();
    for (size_t a = 0; a < n && !r.nontrivial; ++a) {
        for (size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            if (spectrum[a] - spectrum[b] == fprime) {
                r.nontrivial = true;
                r.lambda = spectrum[a];
                r.mu = spectrum[b];
                break;
            }
        }
    }
    return r;
}

inline ExistenceResult existence_check(const std::vector<Scalar>& spectrum, const TaylorSpec& spec) {
    return existence_check(spectrum, spec.c(1));
}

namespace detail {

// Zero the (i, i+1) entry of upper triangular b with a Gauss transform,
// then swap positions i, i+1. Valid only when the diagonal values differ.
// Accumulates the similarity: b <- s^-1 b s with s = (I + x E_{i,i+1}) Pi.
inline void swap_adjacent_diagonal(Matrix& b, Matrix& sim, Matrix& sim_inv, int i) {
    int n = b.n();
    const Scalar d0 = b.at(i, i);
    const Scalar d1 = b.at(i + 1, i + 1);
    if (d0 == d1) throw Error("attempted swap across equal diagonal values");
    Scalar x = b.at(i, i + 1) * (d1 - d0).inverse();
    Matrix t = Matrix::identity(n);
    t.at(i, i + 1) = x;
    Matrix t_inv = Matrix::identity(n);
    t_inv.at(i, i + 1) = -x;
    Matrix pi = Matrix::identity(n);
    pi.at(i, i) = Scalar();
    pi.at(i + 1, i + 1) = Scalar();
    pi.at(i, i + 1) = Scalar(1);
    pi.at(i + 1, i) = Scalar(1);
    Matrix s = t * pi;
    Matrix s_inv = pi * t_inv;
    b = s_inv * b * s;
    sim = sim * s;
    sim_inv = s_inv * sim_inv;
}

} // namespace detail

// Build a rank-one solution X = alpha I + u v^T from an upper triangular A
// whose spectrum admits a pair with difference f'(alpha). The pair is moved
// to the corners (mu first, lambda last) by adjacent swaps that never cross
// equal diagonal values, after which alpha I + E_{1,n} solves the reordered
// equation and conjugating back gives X.
inline Matrix rank_one_witness(const Matrix& a, const TaylorSpec& spec) {
    int n = a.n();
    if (!a.is_upper_triangular())
        throw PreconditionFailed("witness construction needs an upper triangular matrix");
    std::vector<Scalar> diag = a.diagonal_entries();
    ExistenceResult ex = existence_check(diag, spec.c(1));
    if (!ex.nontrivial)
        throw ConstraintViolation("spectrum admits no nontrivial solution for this series");

    Matrix b = a;
    Matrix sim = Matrix::identity(n);
    Matrix sim_inv = Matrix::identity(n);

    // Bubble an occurrence of mu to position 0. When the neighbour above
    // already holds mu, relabel (track that occurrence) instead of swapping.
    int mu_pos = -1;
    for (int i = 0; i < n; ++i) {
        if (b.at(i, i) == ex.mu) { mu_pos = i; break; }
    }
    while (mu_pos > 0) {
        if (b.at(mu_pos - 1, mu_pos - 1) == ex.mu) {
            --mu_pos;
        } else {
            detail::swap_adjacent_diagonal(b, sim, sim_inv, mu_pos - 1);
            --mu_pos;
        }
    }

    // Bubble an occurrence of lambda to position n-1, using the last
    // occurrence beyond position 0 (when lambda == mu, multiplicity >= 2
    // guarantees one exists).
    int la_pos = -1;
    for (int i = n - 1; i >= 1; --i) {
        if (b.at(i, i) == ex.lambda) { la_pos = i; break; }
    }
    if (la_pos < 0)
        throw Error("witness pair lost during reordering");
    while (la_pos < n - 1) {
        if (b.at(la_pos + 1, la_pos + 1) == ex.lambda) {
            ++la_pos;
        } else {
            detail::swap_adjacent_diagonal(b, sim, sim_inv, la_pos);
            ++la_pos;
        }
    }

    // N = sim E_{1,n} sim^-1 is (first column of sim) x (last row of sim^-1).
    Matrix nmat(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            nmat.at(r, c) = sim.at(r, 0) * sim_inv.at(n - 1, c);
    Matrix x = Matrix::identity(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            x.at(r, c) = (r == c ? spec.alpha : Scalar()) + nmat.at(r, c);
    return x;
}

// Free-parameter check for a recursion block: every pivot met while solving
// size m from a last column ending in t is of the form
// (1 - (j+1) k2 t) / (1 - j k2 t), so the inequalities 1 - j*k2*t != 0 for
// j = 1..m-2 guard the whole solve.
inline void check_pivot_condition(int m, const Scalar& k2, const Scalar& subdiagonal_entry) {
    if (k2.is_zero()) return;
    for (int j = 1; j <= m - 2; ++j) {
        if ((Scalar(1) - Scalar(j) * k2 * subdiagonal_entry).is_zero())
            throw ConstraintViolation("pivot condition fails at factor " + std::to_string(j));
    }
}

// Solve one Jordan block of size m: find the unique strictly upper
// triangular N with the prescribed last column such that N J - J N = h(N),
// J the nilpotent Jordan block. Entries are produced one false diagonal at
// a time; each step divides by 1 - k2 * x_{i+L-1, i+L}. The input check
// above rejects columns that would make a pivot vanish; any pivot that
// still vanishes deeper in the recursion is reported with its location.
inline Matrix solve_jordan_block(int m, const CriticalForm& form, const std::vector<Scalar>& last_column) {
    if (m < 1) throw DimensionMismatch("block size must be positive");
    if (static_cast<int>(last_column.size()) != m - 1)
        throw DimensionMismatch("last column needs exactly " + std::to_string(m - 1) + " entries");
    if (m >= 3) check_pivot_condition(m, form.k2, last_column[static_cast<size_t>(m - 2)]);

    Matrix x(m, m);
    for (int r = 0; r < m - 1; ++r) x.at(r, m - 1) = last_column[static_cast<size_t>(r)];
    if (m <= 2) return x;

    // Highest power of N contributing inside an m x m block.
    int kmax = std::min(form.max_degree(), m - 1);
    std::vector<Scalar> hc(static_cast<size_t>(kmax + 1));
    for (int j = 2; j <= kmax; ++j) hc[static_cast<size_t>(j)] = form.h(j);
    const Scalar c2 = kmax >= 2 ? hc[2] : Scalar();

    // powers[k] holds N^k, filled by false diagonals as they become
    // computable: N^2 through diagonal L-1 and N^k (k >= 3) through
    // diagonal L once the solve reaches level L.
    std::vector<Matrix> powers;
    if (kmax >= 2) {
        powers.assign(static_cast<size_t>(kmax + 1), Matrix(m, m));
    }

    // Level L solves X's false diagonal L-1 from the commutator entries at
    // diagonal L. The last entry of each diagonal is the given last-column
    // value; rows then resolve upward.
    for (int L = 2; L <= m - 1; ++L) {
        // Fill newly computable power diagonals from already known X diagonals.
        if (kmax >= 2) {
            Matrix& p2 = powers[2];
            for (int i = 0; i + (L - 1) < m; ++i) {
                int j = i + (L - 1);
                Scalar s;
                for (int e = 1; e <= L - 2; ++e) s += x.at(i, i + e) * x.at(i + e, j);
                p2.at(i, j) = s;
            }
            for (int k = 3; k <= kmax; ++k) {
                const Matrix& prev = powers[static_cast<size_t>(k - 1)];
                Matrix& cur = powers[static_cast<size_t>(k)];
                for (int i = 0; i + L < m; ++i) {
                    int j = i + L;
                    Scalar s;
                    for (int e = k - 1; e <= L - 1; ++e) s += prev.at(i, i + e) * x.at(i + e, j);
                    cur.at(i, j) = s;
                }
            }
        }

        for (int i = m - L - 1; i >= 0; --i) {
            // Equation at entry (i, i+L): x_{i,i+L-1} - x_{i+1,i+L} = h(N)_{i,i+L}.
            const Scalar below = x.at(i + 1, i + L);  // same diagonal, already solved
            Scalar rhs = below;
            Scalar pivot(1);
            if (!c2.is_zero()) {
                if (L == 2) {
                    pivot = Scalar(1) - c2 * below;
                } else {
                    Scalar mid;
                    for (int e = 2; e <= L - 2; ++e) mid += x.at(i, i + e) * x.at(i + e, i + L);
                    rhs += c2 * (x.at(i, i + 1) * below + mid);
                    pivot = Scalar(1) - c2 * x.at(i + L - 1, i + L);
                }
            }
            for (int k = 3; k <= kmax; ++k) {
                if (hc[static_cast<size_t>(k)].is_zero()) continue;
                rhs += hc[static_cast<size_t>(k)] * powers[static_cast<size_t>(k)].at(i, i + L);
            }
            if (pivot.is_zero())
                throw PivotFailure(L - 1, i + 1,
                                   "pivot vanished at diagonal " + std::to_string(L - 1) +
                                       ", row " + std::to_string(i + 1));
            x.at(i, i + L - 1) = rhs * pivot.inverse();
        }
    }
    return x;
}

// Nilpotent commutant of one Jordan block: powers J, J^2, ..., J^{m-1}.
inline std::vector<Matrix> commutant_nilpotent_basis(int m) {
    std::vector<Matrix> basis;
    Matrix j = Matrix::jordan_nilpotent(m);
    Matrix acc = j;
    for (int k = 1; k <= m - 1; ++k) {
        basis.push_back(acc);
        acc = acc * j;
    }
    return basis;
}

// Family of nilpotent matrices commuting with a single Jordan block:
// strictly upper Toeplitz, equivalently the span of J..J^{m-1}, described
// by its free last column like every other block family.
inline SolutionFamily commutant_nilpotents(int m) {
    SolutionFamily fam;
    fam.kind = FamilyKind::commutant;
    fam.parameter_count = std::max(m - 1, 0);
    JordanStructure js;
    js.blocks.push_back({Scalar(), m});
    js.p = Matrix::identity(m);
    js.p_inv = Matrix::identity(m);
    js.identity_similarity = true;
    fam.assembly = std::move(js);
    FamilySlot slot;
    slot.block = 0;
    for (int r = 1; r <= m - 1; ++r) slot.free_entries.emplace_back(r, m);
    slot.constraints.push_back("entries are constant along each superdiagonal");
    fam.slots.push_back(std::move(slot));
    return fam;
}

// Everything needed to instantiate solutions for one matrix A in the
// critical case: the shifted series, A's Jordan data, and the family
// description (one slot per Jordan block, last column free).
struct CriticalContext {
    CriticalForm form;
    JordanStructure js;
    SolutionFamily family;
};

inline CriticalContext prepare_critical(const Matrix& a, const std::vector<Scalar>& eigenvalues,
                                        const TaylorSpec& spec) {
    CriticalContext ctx;
    ctx.form = derive_critical_form(spec, a.n());
    ctx.js = jordan_structure(a, eigenvalues);
    if (!is_non_derogatory(ctx.js))
        throw DerogatoryInput("matrix has a repeated eigenvalue across blocks; the block split does not apply");
    ctx.family.kind = ctx.form.flat ? FamilyKind::commutant : FamilyKind::critical_nonderogatory;
    ctx.family.assembly = ctx.js;
    int params = 0;
    for (size_t bi = 0; bi < ctx.js.blocks.size(); ++bi) {
        int m = ctx.js.blocks[bi].size;
        FamilySlot slot;
        slot.block = static_cast<int>(bi);
        for (int r = 1; r <= m - 1; ++r) slot.free_entries.emplace_back(r, m);
        if (!ctx.form.k2.is_zero() && m >= 3) {
            slot.constraints.push_back("1 - j*(" + ctx.form.k2.str() + ")*x(" + std::to_string(m - 1) +
                                       "," + std::to_string(m) + ") != 0 for j = 1.." + std::to_string(m - 2));
        }
        params += m - 1;
        ctx.family.slots.push_back(std::move(slot));
    }
    ctx.family.parameter_count = params;
    return ctx;
}

// Assemble X = alpha I + P (block solutions) P^-1 from one last column per
// Jordan block.
inline Matrix instantiate_critical(const CriticalContext& ctx,
                                   const std::vector<std::vector<Scalar>>& last_columns) {
    if (last_columns.size() != ctx.js.blocks.size())
        throw DimensionMismatch("need one last column per block");
    std::vector<Matrix> pieces;
    for (size_t bi = 0; bi < ctx.js.blocks.size(); ++bi) {
        int m = ctx.js.blocks[bi].size;
        try {
            pieces.push_back(solve_jordan_block(m, ctx.form, last_columns[bi]));
        } catch (const PivotFailure& e) {
            throw PivotFailure(e.diagonal, e.row,
                               std::string(e.what()) + " in block " + std::to_string(bi));
        } catch (const ConstraintViolation& e) {
            throw ConstraintViolation(std::string(e.what()) + " in block " + std::to_string(bi));
        }
    }
    Matrix nt = Matrix::direct_sum(pieces);
    int n = ctx.js.dimension();
    Matrix nmat = ctx.js.identity_similarity ? nt : ctx.js.p * nt * ctx.js.p_inv;
    Matrix x(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) x.at(r, c) = nmat.at(r, c);
        x.at(r, r) += ctx.form.alpha;
    }
    return x;
}

// One-call form: family description plus the instance for the given
// last columns.
inline std::pair<Matrix, SolutionFamily> solve_nonderogatory(
    const Matrix& a, const std::vector<Scalar>& eigenvalues, const TaylorSpec& spec,
    const std::vector<std::vector<Scalar>>& last_columns) {
    CriticalContext ctx = prepare_critical(a, eigenvalues, spec);
    Matrix x = instantiate_critical(ctx, last_columns);
    return {std::move(x), std::move(ctx.family)};
}

} // namespace commeq
