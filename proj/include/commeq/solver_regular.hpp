#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/family.hpp"
#include "commeq/jordan.hpp"
#include "commeq/matrix.hpp"
#include "commeq/multipoly.hpp"
#include "commeq/sylvester.hpp"
#include "commeq/taylor.hpp"

// Solver for the case f'(alpha) != 0. Dividing A by f'(alpha) normalizes
// the linear coefficient to 1; writing X = alpha I + N the equation reads
// N A' - A' N = N g(N) with g(0) = 1. Nonzero parts of N connect
// eigenvalues of A' differing by exactly 1, so the spectrum splits into
// chains (maximal runs v, v+1, ..., v+r all present) that are solved
// independently: the blocks one step along a chain are free kernel
// choices, every longer-range block then follows by an invertible affine
// solve.

namespace commeq {

// Normalized equation data: scale = c_1 divided out of A, g_coeffs the
// coefficients of g with g(0) = 1. In the power-sum form
// N A' - A' N = N + sum_{m>=2} alpha_m N^m one has alpha_m = g_coeffs[m-1].
struct RegularForm {
    Scalar alpha;
    Scalar scale;
    std::vector<Scalar> g_coeffs;

    Scalar alpha_coeff(int m) const {
        if (m < 1 || m > static_cast<int>(g_coeffs.size())) return Scalar();
        return g_coeffs[static_cast<size_t>(m - 1)];
    }
    int max_degree() const { return static_cast<int>(g_coeffs.size()); }
};

inline RegularForm normalize_regular(const TaylorSpec& spec, int n) {
    Scalar c1 = spec.c(1);
    if (c1.is_zero())
        throw ZeroDerivative("normalization requires a nonzero linear coefficient");
    RegularForm form;
    form.alpha = spec.alpha;
    form.scale = c1;
    int kmax = std::min(spec.order(), n - 1);
    Scalar inv = c1.inverse();
    form.g_coeffs.push_back(Scalar(1));
    for (int m = 2; m <= kmax; ++m) form.g_coeffs.push_back(spec.c(m) * inv);
    while (form.g_coeffs.size() > 1 && form.g_coeffs.back().is_zero()) form.g_coeffs.pop_back();
    return form;
}

// Maximal runs of consecutive values inside a spectrum. Values are exact,
// so membership of v+1 is exact equality. Chains are ordered by their base
// value; values inside a chain ascend.
struct Chain {
    std::vector<Scalar> values;
    int length() const { return static_cast<int>(values.size()); }
};

struct ChainPartition {
    std::vector<Chain> chains;
};

inline ChainPartition chain_partition(const std::vector<Scalar>& spectrum) {
    std::set<Scalar, ScalarLess> present(spectrum.begin(), spectrum.end());
    ChainPartition part;
    for (const Scalar& v : present) {
        if (present.count(v - Scalar(1))) continue;  // not a base
        Chain chain;
        Scalar cur = v;
        while (present.count(cur)) {
            chain.values.push_back(cur);
            cur += Scalar(1);
        }
        part.chains.push_back(std::move(chain));
    }
    return part;
}

// Coefficient polynomials of the closed form on diagonalizable chains:
// the block i steps along a chain is P_i(a2..ai) times the ordered product
// of the one-step blocks it spans. They satisfy
//   (r-1) P_r = sum_{s=2..r} a_s T_{s,r},
//   T_{s,r} = sum over compositions of r into s parts of P_{u1}...P_{us},
// with P_1 = 1. Variables are named a2, a3, ...
inline std::vector<std::string> alpha_variables(int rmax) {
    std::vector<std::string> vars;
    for (int m = 2; m <= rmax; ++m) vars.push_back("a" + std::to_string(m));
    return vars;
}

inline std::vector<MultiPoly> pr_polynomials(int rmax) {
    if (rmax < 1) throw DimensionMismatch("need rmax >= 1");
    std::vector<std::string> vars = alpha_variables(rmax);
    std::vector<MultiPoly> p;  // p[r] = P_r; p[0] unused
    p.push_back(MultiPoly::constant(Rational(0), vars));
    p.push_back(MultiPoly::constant(Rational(1), vars));

    std::map<std::pair<int, int>, MultiPoly> tmemo;
    // T_{s,r}; requires p[1..r-s+1] already built.
    auto tpoly = [&](auto&& self, int s, int r) -> const MultiPoly& {
        auto key = std::make_pair(s, r);
        auto it = tmemo.find(key);
        if (it != tmemo.end()) return it->second;
        MultiPoly acc(vars);
        if (s == 1) {
            acc = p[static_cast<size_t>(r)];
        } else {
            for (int u = 1; u <= r - s + 1; ++u)
                acc += p[static_cast<size_t>(u)] * self(self, s - 1, r - u);
        }
        return tmemo.emplace(key, std::move(acc)).first->second;
    };

    for (int r = 2; r <= rmax; ++r) {
        MultiPoly sum(vars);
        for (int s = 2; s <= r; ++s)
            sum += MultiPoly::variable("a" + std::to_string(s), vars) * tpoly(tpoly, s, r);
        p.push_back(sum * Rational(1, r - 1));
    }
    return p;
}

inline MultiPoly compute_Pr(int r) {
    if (r < 2) throw DimensionMismatch("need r >= 2");
    return pr_polynomials(r)[static_cast<size_t>(r)];
}

// Value of P_r at the normalized coefficients of a concrete series.
inline Scalar pr_value(const MultiPoly& pr, const RegularForm& form) {
    std::map<std::string, Scalar> assign;
    for (const std::string& v : pr.vars()) {
        int m = std::stoi(v.substr(1));
        assign[v] = form.alpha_coeff(m);
    }
    return pr.substitute(assign);
}

// One generalized eigenspace along a chain: its value, size, offset inside
// the reordered coordinates, and the nilpotent part of the normalized
// matrix on it.
struct SpaceInfo {
    Scalar value;
    int offset = 0;
    int size = 0;
    Matrix nil;
};

// Jordan reordering grouped chain by chain: each chain's spaces occupy a
// contiguous coordinate range, values ascending within the chain.
struct BlockReduction {
    JordanStructure js;
    std::vector<std::vector<SpaceInfo>> spaces;  // per chain, per position

    // The diagonal piece carrying one whole chain.
    Matrix chain_block(int ci) const {
        const auto& ch = spaces[static_cast<size_t>(ci)];
        int base = ch.front().offset;
        int size = 0;
        for (const auto& sp : ch) size += sp.size;
        return js.jordan_form().block(base, base, size, size);
    }
};

inline BlockReduction block_reduce(const Matrix& a, const std::vector<Scalar>& eigenvalues,
                                   const ChainPartition& partition) {
    // The partition must cover the spectrum it was built from.
    std::set<Scalar, ScalarLess> covered;
    for (const Chain& ch : partition.chains)
        for (const Scalar& v : ch.values) covered.insert(v);
    for (const Scalar& v : eigenvalues)
        if (!covered.count(v))
            throw IncompleteSpectrum("eigenvalue " + v.str() + " missing from the chain partition");

    BlockReduction red;
    std::vector<Scalar> order;
    for (const Chain& ch : partition.chains)
        for (const Scalar& v : ch.values) order.push_back(v);
    red.js = jordan_structure(a, order);

    Matrix jform = red.js.jordan_form();
    int off = 0;
    size_t bi = 0;
    for (const Chain& ch : partition.chains) {
        std::vector<SpaceInfo> chain_spaces;
        for (const Scalar& v : ch.values) {
            SpaceInfo sp;
            sp.value = v;
            sp.offset = off;
            while (bi < red.js.blocks.size() && red.js.blocks[bi].eigenvalue == v) {
                sp.size += red.js.blocks[bi].size;
                ++bi;
            }
            if (sp.size == 0) throw IncompleteSpectrum("chain value missing from the block list");
            sp.nil = jform.block(sp.offset, sp.offset, sp.size, sp.size);
            for (int d = 0; d < sp.size; ++d) sp.nil.at(d, d) -= v;
            off += sp.size;
            chain_spaces.push_back(std::move(sp));
        }
        red.spaces.push_back(std::move(chain_spaces));
    }
    if (bi != red.js.blocks.size() || off != a.n())
        throw IncompleteSpectrum("chain spaces do not exhaust the block list");
    return red;
}

// Chain solve, general form. diag1[j] is the chosen block mapping space
// j+1 to space j (any member of the corresponding kernel). Blocks further
// along follow one distance at a time: at distance i the block (j, j+i)
// satisfies (i-1) x + (x n_{j+i} - n_j x) = psi with psi built from
// shorter-range blocks, and the nilpotent perturbation is inverted by a
// finite geometric series.
inline Matrix solve_chain_general(const std::vector<SpaceInfo>& spaces, const RegularForm& form,
                                  const std::vector<Matrix>& diag1) {
    int r = static_cast<int>(spaces.size()) - 1;
    if (static_cast<int>(diag1.size()) != std::max(r, 0))
        throw DimensionMismatch("need one block per adjacent pair");
    // Offsets local to this chain; callers may have stored global ones.
    std::vector<int> off(spaces.size());
    int s = 0;
    for (size_t j = 0; j < spaces.size(); ++j) {
        off[j] = s;
        s += spaces[j].size;
    }
    Matrix xc(s, s);
    for (int j = 0; j < r; ++j) {
        const Matrix& blk = diag1[static_cast<size_t>(j)];
        if (blk.rows() != spaces[static_cast<size_t>(j)].size ||
            blk.cols() != spaces[static_cast<size_t>(j + 1)].size)
            throw DimensionMismatch("pair block shape mismatch");
        xc.set_block(off[static_cast<size_t>(j)], off[static_cast<size_t>(j + 1)], blk);
    }

    for (int i = 2; i <= r; ++i) {
        // Powers of the partial matrix are exact at distance i: every
        // product reaching that far uses only blocks at shorter distances.
        std::vector<Matrix> pw(static_cast<size_t>(i + 1));
        pw[1] = xc;
        for (int m = 2; m <= i; ++m) pw[static_cast<size_t>(m)] = pw[static_cast<size_t>(m - 1)] * xc;

        for (int j = 0; j + i <= r; ++j) {
            const SpaceInfo& src = spaces[static_cast<size_t>(j + i)];
            const SpaceInfo& dst = spaces[static_cast<size_t>(j)];
            int srco = off[static_cast<size_t>(j + i)];
            int dsto = off[static_cast<size_t>(j)];
            Matrix psi(dst.size, src.size);
            for (int m = 2; m <= i; ++m) {
                Scalar am = form.alpha_coeff(m);
                if (am.is_zero()) continue;
                psi += am * pw[static_cast<size_t>(m)].block(dsto, srco, dst.size, src.size);
            }
            Scalar inv = Scalar(i - 1).inverse();
            Matrix term = psi * inv;
            Matrix x = term;
            int bound = dst.size + src.size + 1;
            for (int u = 0; u < bound && !term.is_zero(); ++u) {
                term = (term * src.nil - dst.nil * term) * (-inv);
                x += term;
            }
            if (!term.is_zero()) throw Error("nilpotent series failed to terminate");
            xc.set_block(dsto, srco, x);
        }
    }
    return xc;
}

// Chain solve, closed form for diagonalizable spaces (every nilpotent part
// zero): the block (j, j+i) is P_i times the ordered product of the
// one-step blocks between j and j+i.
inline Matrix solve_chain_diag(const std::vector<int>& sizes, const RegularForm& form,
                               const std::vector<Matrix>& free_blocks,
                               const std::vector<MultiPoly>& prs) {
    int r = static_cast<int>(sizes.size()) - 1;
    if (static_cast<int>(free_blocks.size()) != std::max(r, 0))
        throw DimensionMismatch("need one block per adjacent pair");
    if (static_cast<int>(prs.size()) <= r)
        throw DimensionMismatch("coefficient polynomials missing for this chain length");
    std::vector<int> off(sizes.size());
    int s = 0;
    for (size_t j = 0; j < sizes.size(); ++j) {
        off[j] = s;
        s += sizes[j];
    }
    for (int j = 0; j < r; ++j) {
        if (free_blocks[static_cast<size_t>(j)].rows() != sizes[static_cast<size_t>(j)] ||
            free_blocks[static_cast<size_t>(j)].cols() != sizes[static_cast<size_t>(j + 1)])
            throw DimensionMismatch("pair block shape mismatch");
    }
    Matrix xc(s, s);
    for (int j = 0; j < r; ++j)
        xc.set_block(off[static_cast<size_t>(j)], off[static_cast<size_t>(j + 1)],
                     free_blocks[static_cast<size_t>(j)]);
    for (int i = 2; i <= r; ++i) {
        Scalar pval = pr_value(prs[static_cast<size_t>(i)], form);
        for (int j = 0; j + i <= r; ++j) {
            Matrix prod = free_blocks[static_cast<size_t>(j)];
            for (int e = j + 1; e < j + i; ++e) prod = prod * free_blocks[static_cast<size_t>(e)];
            xc.set_block(off[static_cast<size_t>(j)], off[static_cast<size_t>(j + i)], prod * pval);
        }
    }
    return xc;
}

// Everything needed to instantiate solutions in the regular case. Spaces
// are grouped per chain; kernel bases are one per adjacent pair, indexed
// by the same flat pair order as the family slots.
struct RegularContext {
    RegularForm form;
    ChainPartition partition;
    BlockReduction reduction;  // of A / c_1, blocks ordered chain by chain
    std::vector<SylvesterSolution> pair_kernels;  // flat over (chain, pair)
    std::vector<std::pair<int, int>> pair_index;  // flat slot -> (chain, pair)
    SolutionFamily family;
};

inline RegularContext prepare_regular(const Matrix& a, const std::vector<Scalar>& eigenvalues,
                                      const TaylorSpec& spec) {
    RegularContext ctx;
    ctx.form = normalize_regular(spec, a.n());
    Scalar inv = ctx.form.scale.inverse();
    Matrix aprime = a * inv;
    std::vector<Scalar> prime_spectrum;
    prime_spectrum.reserve(eigenvalues.size());
    for (const Scalar& v : eigenvalues) prime_spectrum.push_back(v * inv);

    ctx.partition = chain_partition(prime_spectrum);
    ctx.reduction = block_reduce(aprime, prime_spectrum, ctx.partition);

    ctx.family.kind = FamilyKind::regular_chain;
    ctx.family.assembly = ctx.reduction.js;
    int params = 0;
    for (size_t ci = 0; ci < ctx.reduction.spaces.size(); ++ci) {
        const auto& chain_spaces = ctx.reduction.spaces[ci];
        for (size_t j = 0; j + 1 < chain_spaces.size(); ++j) {
            Matrix zero(chain_spaces[j].size, chain_spaces[j + 1].size);
            SylvesterSolution ker =
                sylvester_solve(chain_spaces[j + 1].nil, chain_spaces[j].nil, zero);
            FamilySlot slot;
            slot.block = static_cast<int>(ctx.pair_kernels.size());
            for (auto [r, c] : ker.kernel_markers) slot.free_entries.emplace_back(r + 1, c + 1);
            if (static_cast<int>(ker.kernel.size()) <
                chain_spaces[j].size * chain_spaces[j + 1].size)
                slot.constraints.push_back(
                    "listed coordinates mark kernel basis vectors; other entries of the pair "
                    "block follow from them");
            params += static_cast<int>(ker.kernel.size());
            ctx.pair_index.emplace_back(static_cast<int>(ci), static_cast<int>(j));
            ctx.pair_kernels.push_back(std::move(ker));
            ctx.family.slots.push_back(std::move(slot));
        }
    }
    ctx.family.parameter_count = params;
    return ctx;
}

// Assemble X = alpha I + P (chain solutions) P^-1 from one coefficient
// vector per pair slot (coordinates in that pair's kernel basis).
inline Matrix instantiate_regular(const RegularContext& ctx,
                                  const std::vector<std::vector<Scalar>>& coeffs) {
    if (coeffs.size() != ctx.pair_kernels.size())
        throw DimensionMismatch("need one coefficient vector per pair slot");
    size_t flat = 0;
    std::vector<std::vector<Matrix>> chain_diag1(ctx.reduction.spaces.size());
    for (size_t ci = 0; ci < ctx.reduction.spaces.size(); ++ci) {
        const auto& chain_spaces = ctx.reduction.spaces[ci];
        for (size_t j = 0; j + 1 < chain_spaces.size(); ++j, ++flat) {
            const SylvesterSolution& ker = ctx.pair_kernels[flat];
            const std::vector<Scalar>& cv = coeffs[flat];
            if (cv.size() != ker.kernel.size())
                throw DimensionMismatch("coefficient count mismatch at pair slot " +
                                        std::to_string(flat));
            Matrix blk(chain_spaces[j].size, chain_spaces[j + 1].size);
            for (size_t k = 0; k < cv.size(); ++k) {
                if (cv[k].is_zero()) continue;
                blk += cv[k] * ker.kernel[k];
            }
            chain_diag1[ci].push_back(std::move(blk));
        }
    }

    int n = ctx.reduction.js.dimension();
    Matrix nj(n, n);
    for (size_t ci = 0; ci < ctx.reduction.spaces.size(); ++ci) {
        const auto& chain_spaces = ctx.reduction.spaces[ci];
        Matrix xc = solve_chain_general(chain_spaces, ctx.form, chain_diag1[ci]);
        int base = chain_spaces.front().offset;
        nj.set_block(base, base, xc);
    }
    Matrix nmat = ctx.reduction.js.identity_similarity
                      ? nj
                      : ctx.reduction.js.p * nj * ctx.reduction.js.p_inv;
    for (int d = 0; d < n; ++d) nmat.at(d, d) += ctx.form.alpha;
    return nmat;
}

// The logarithm equation X A - A X = log X, solved as the regular case of
// the series log(1 + t) about alpha = 1.
inline RegularContext solve_log(const Matrix& a, const std::vector<Scalar>& eigenvalues) {
    return prepare_regular(a, eigenvalues, TaylorSpec::log_preset(a.n()));
}

} // namespace commeq
