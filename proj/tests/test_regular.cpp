#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "commeq/solver_regular.hpp"
#include "commeq/verify.hpp"
#include "helpers.hpp"

using commeq::Chain;
using commeq::ChainPartition;
using commeq::Matrix;
using commeq::MultiPoly;
using commeq::RegularForm;
using commeq::Scalar;
using commeq::SpaceInfo;
using commeq::TaylorSpec;
using testutil::mat;
using testutil::sc;

namespace {

TaylorSpec spec_from(const Scalar& alpha, const std::vector<std::string>& coeffs) {
    TaylorSpec s;
    s.alpha = alpha;
    for (const auto& c : coeffs) s.coeffs.push_back(sc(c));
    return s;
}

const Chain* chain_with_base(const ChainPartition& part, const Scalar& base) {
    for (const auto& ch : part.chains)
        if (!ch.values.empty() && ch.values.front() == base) return &ch;
    return nullptr;
}

std::map<std::string, Scalar> alternating_harmonic(int rmax) {
    std::map<std::string, Scalar> assign;
    for (int m = 2; m <= rmax; ++m)
        assign["a" + std::to_string(m)] = Scalar(commeq::Rational(m % 2 == 0 ? -1 : 1, m));
    return assign;
}

} // namespace

TEST_CASE("normalization divides out the linear coefficient") {
    RegularForm form = commeq::normalize_regular(spec_from(Scalar(3), {"2", "4"}), 5);
    CHECK(form.alpha == Scalar(3));
    CHECK(form.scale == Scalar(2));
    CHECK(form.alpha_coeff(1) == Scalar(1));
    CHECK(form.alpha_coeff(2) == Scalar(2));
    CHECK(form.max_degree() == 2);

    RegularForm trimmed = commeq::normalize_regular(spec_from(Scalar(0), {"2", "0", "0"}), 5);
    CHECK(trimmed.max_degree() == 1);

    CHECK_THROWS_AS(commeq::normalize_regular(TaylorSpec::monomial_preset(2, 4), 4),
                    commeq::ZeroDerivative);
}

TEST_CASE("spectrum splits into maximal consecutive runs") {
    auto part = commeq::chain_partition({sc("0"), sc("1"), sc("2"), sc("5"), sc("13/2")});
    REQUIRE(part.chains.size() == 3);
    const Chain* run = chain_with_base(part, sc("0"));
    REQUIRE(run != nullptr);
    CHECK(run->values == std::vector<Scalar>{sc("0"), sc("1"), sc("2")});
    CHECK(chain_with_base(part, sc("5"))->length() == 1);
    CHECK(chain_with_base(part, sc("13/2"))->length() == 1);

    auto gauss = commeq::chain_partition({sc("0"), sc("1"), sc("i"), sc("1+i")});
    REQUIRE(gauss.chains.size() == 2);
    CHECK(chain_with_base(gauss, sc("0"))->values == std::vector<Scalar>{sc("0"), sc("1")});
    CHECK(chain_with_base(gauss, sc("i"))->values == std::vector<Scalar>{sc("i"), sc("1+i")});

    auto repeated = commeq::chain_partition({sc("0"), sc("1"), sc("1"), sc("2")});
    REQUIRE(repeated.chains.size() == 1);
    CHECK(repeated.chains[0].length() == 3);
}

TEST_CASE("coefficient polynomials, frozen texts") {
    auto prs = commeq::pr_polynomials(6);
    CHECK(prs[2].str() == "a2");
    CHECK(prs[3].str() == "a2^2 + 1/2*a3");
    CHECK(prs[4].str() == "a2^3 + 4/3*a2*a3 + 1/3*a4");
    CHECK(prs[5].str() == "a2^4 + 29/12*a2^2*a3 + 7/6*a2*a4 + 3/8*a3^2 + 1/4*a5");
    CHECK(prs[6].str() ==
          "a2^5 + 37/10*a2^3*a3 + 13/5*a2^2*a4 + 8/5*a2*a3^2 + 11/10*a2*a5 + 3/5*a3*a4 + 1/5*a6");
}

TEST_CASE("coefficient polynomials, alternating harmonic point") {
    auto prs = commeq::pr_polynomials(6);
    auto point = alternating_harmonic(6);
    CHECK(prs[2].substitute(point) == sc("-1/2"));
    CHECK(prs[3].substitute(point) == sc("5/12"));
    CHECK(prs[4].substitute(point) == sc("-31/72"));
    CHECK(prs[5].substitute(point) == sc("361/720"));
    CHECK(prs[6].substitute(point) == sc("-4537/7200"));

    // Same values through the normalized-series route.
    RegularForm form = commeq::normalize_regular(TaylorSpec::log_preset(8), 8);
    CHECK(commeq::pr_value(prs[3], form) == sc("5/12"));
    CHECK(commeq::pr_value(prs[6], form) == sc("-4537/7200"));
}

TEST_CASE("coefficient polynomials, deep recursion") {
    MultiPoly p13 = commeq::compute_Pr(13);
    CHECK(p13.terms().size() == 77);
    std::map<std::string, unsigned> weight;
    for (int m = 2; m <= 13; ++m) weight["a" + std::to_string(m)] = static_cast<unsigned>(m - 1);
    CHECK(p13.is_weighted_homogeneous(weight, 12));
}

TEST_CASE("block reduction orders spaces chain by chain") {
    Matrix a = Matrix::diagonal({sc("5"), sc("0"), sc("1")});
    std::vector<Scalar> eigs = {sc("5"), sc("0"), sc("1")};
    auto part = commeq::chain_partition(eigs);
    auto red = commeq::block_reduce(a, eigs, part);
    REQUIRE(red.spaces.size() == 2);
    const auto& run = red.spaces[0].front().value == sc("0") ? red.spaces[0] : red.spaces[1];
    REQUIRE(run.size() == 2);
    CHECK(run[0].value == sc("0"));
    CHECK(run[1].value == sc("1"));
    CHECK(run[0].size == 1);
    CHECK(run[1].offset == run[0].offset + 1);
    CHECK(red.js.p * red.js.jordan_form() * red.js.p_inv == a);

    CHECK_THROWS_AS(commeq::block_reduce(a, eigs, commeq::chain_partition({sc("0"), sc("1")})),
                    commeq::IncompleteSpectrum);
}

TEST_CASE("closed form on singleton spaces") {
    RegularForm form = commeq::normalize_regular(TaylorSpec::log_preset(4), 4);
    auto prs = commeq::pr_polynomials(2);
    Matrix x = commeq::solve_chain_diag({1, 1, 1}, form, {mat({{"3"}}), mat({{"4"}})}, prs);
    CHECK(x == mat({{"0", "3", "-6"}, {"0", "0", "4"}, {"0", "0", "0"}}));
}

TEST_CASE("general solve agrees with the closed form on diagonalizable chains") {
    testutil::Rng rng(660912);
    std::vector<TaylorSpec> specs = {TaylorSpec::log_preset(11),
                                     spec_from(Scalar(0), {"2", "4", "-6", "1"})};
    auto prs = commeq::pr_polynomials(5);
    for (const auto& spec : specs) {
        RegularForm form = commeq::normalize_regular(spec, 11);
        for (int trial = 0; trial < 15; ++trial) {
            int k = static_cast<int>(rng.igen(2, 5));
            std::vector<int> sizes;
            std::vector<SpaceInfo> spaces;
            for (int j = 0; j < k; ++j) {
                int s = static_cast<int>(rng.igen(1, 2));
                sizes.push_back(s);
                SpaceInfo sp;
                sp.value = Scalar(j);
                sp.size = s;
                sp.nil = Matrix(s, s);
                spaces.push_back(sp);
            }
            std::vector<Matrix> blocks;
            for (int j = 0; j + 1 < k; ++j) {
                Matrix b(sizes[static_cast<size_t>(j)], sizes[static_cast<size_t>(j + 1)]);
                for (int r = 0; r < b.rows(); ++r)
                    for (int c = 0; c < b.cols(); ++c) b.at(r, c) = rng.iscalar(-4, 4);
                blocks.push_back(b);
            }
            Matrix gen = commeq::solve_chain_general(spaces, form, blocks);
            Matrix diag = commeq::solve_chain_diag(sizes, form, blocks, prs);
            CHECK(gen == diag);
            CHECK(gen.pow(static_cast<unsigned>(k)) == Matrix(gen.n(), gen.n()));
        }
    }
}

TEST_CASE("one parameter family on a unit gap") {
    Matrix a = Matrix::diagonal({sc("0"), sc("1")});
    auto ctx = commeq::solve_log(a, {sc("0"), sc("1")});
    CHECK(ctx.family.kind == commeq::FamilyKind::regular_chain);
    CHECK(ctx.family.parameter_count == 1);
    REQUIRE(ctx.pair_kernels.size() == 1);

    Matrix x = commeq::instantiate_regular(ctx, {{sc("7")}});
    CHECK(x == mat({{"1", "7"}, {"0", "1"}}));
    CHECK(commeq::verify_direct(a, x, TaylorSpec::log_preset(2)).all_pass());
}

TEST_CASE("matching nilpotent pair keeps a Toeplitz kernel") {
    Matrix a = Matrix::direct_sum({Matrix::jordan_nilpotent(2), Matrix::jordan_block(2, sc("1"))});
    std::vector<Scalar> eigs = {sc("0"), sc("0"), sc("1"), sc("1")};
    auto ctx = commeq::solve_log(a, eigs);
    CHECK(ctx.family.parameter_count == 2);
    REQUIRE(ctx.pair_kernels.size() == 1);
    REQUIRE(ctx.pair_kernels[0].kernel.size() == 2);

    Matrix x = commeq::instantiate_regular(ctx, {{sc("3"), sc("5")}});
    Matrix pair = x.block(0, 2, 2, 2);
    CHECK(pair.at(0, 0) == pair.at(1, 1));
    CHECK(pair.at(1, 0).is_zero());
    CHECK(commeq::verify_direct(a, x, TaylorSpec::log_preset(4), eigs).all_pass());
}

TEST_CASE("conjugated input runs through the full pipeline") {
    testutil::Rng rng(48112);
    Matrix jf = Matrix::direct_sum({Matrix::jordan_nilpotent(2), Matrix::jordan_block(1, sc("1"))});
    std::vector<Scalar> eigs = {sc("0"), sc("0"), sc("1")};
    for (int trial = 0; trial < 10; ++trial) {
        Matrix p = testutil::unit_upper(rng, 3, 4);
        Matrix a = p * jf * commeq::inverse(p);
        auto ctx = commeq::solve_log(a, eigs);
        CHECK(ctx.family.parameter_count == 1);
        Matrix x = commeq::instantiate_regular(ctx, {{rng.nonzero(-5, 5)}});
        CHECK(commeq::verify_direct(a, x, TaylorSpec::log_preset(3), eigs).all_pass());
    }
}

TEST_CASE("scaled linear coefficient reaches the same solutions") {
    // f with f'(alpha) = 2: A/2 has the unit gap, so solutions track 2X.
    Matrix a = Matrix::diagonal({sc("0"), sc("2")});
    TaylorSpec s = spec_from(Scalar(0), {"2"});
    auto ctx = commeq::prepare_regular(a, {sc("0"), sc("2")}, s);
    CHECK(ctx.family.parameter_count == 1);
    Matrix x = commeq::instantiate_regular(ctx, {{sc("3")}});
    CHECK(commeq::commutator(x, a) == sc("2") * x);
    CHECK(commeq::verify_direct(a, x, s).all_pass());
}

TEST_CASE("isolated spectrum leaves only the trivial point") {
    Matrix a = Matrix::diagonal({sc("0"), sc("5")});
    auto ctx = commeq::solve_log(a, {sc("0"), sc("5")});
    CHECK(ctx.family.parameter_count == 0);
    Matrix x = commeq::instantiate_regular(ctx, {});
    CHECK(x == Matrix::identity(2));
}
