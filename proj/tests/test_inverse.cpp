#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "commeq/inverse.hpp"
#include "commeq/verify.hpp"
#include "helpers.hpp"

using commeq::Dim3Params;
using commeq::InverseSpec;
using commeq::Matrix;
using commeq::Scalar;
using commeq::SquareParams;
using commeq::TaylorSpec;
using testutil::mat;
using testutil::sc;

TEST_CASE("exponential preset reverses to the logarithm") {
    auto direct = commeq::reduce_inverse(InverseSpec::exp_preset(6), 6);
    REQUIRE(direct.has_value());
    TaylorSpec lg = TaylorSpec::log_preset(6);
    CHECK(direct->alpha == lg.alpha);
    CHECK(direct->coeffs == lg.coeffs);
}

TEST_CASE("reduction round trips a generic series") {
    InverseSpec s;
    s.f0 = sc("3");
    s.coeffs.c = {sc("2"), sc("-1"), sc("1/2"), sc("5")};
    auto direct = commeq::reduce_inverse(s, 7);
    REQUIRE(direct.has_value());
    CHECK(direct->alpha == sc("3"));
    // Composing the reversion back into the original gives the identity.
    commeq::SeriesCoeffs g;
    g.c = direct->coeffs;
    commeq::SeriesCoeffs capped;
    capped.c = {sc("2"), sc("-1"), sc("1/2"), sc("5"), sc("0"), sc("0")};
    auto composed = commeq::series_compose(capped, g, 6);
    REQUIRE(composed.order() >= 1);
    CHECK(composed.coeff(1) == Scalar(1));
    for (int k = 2; k <= composed.order(); ++k) CHECK(composed.coeff(k).is_zero());
}

TEST_CASE("vanishing derivative blocks the reduction") {
    CHECK_FALSE(commeq::reduce_inverse(InverseSpec::monomial_preset(2, 5), 5).has_value());
}

TEST_CASE("exponential equation matches the logarithm family") {
    Matrix a = Matrix::diagonal({sc("0"), sc("1"), sc("2")});
    std::vector<Scalar> eigs = {sc("0"), sc("1"), sc("2")};
    auto via_exp = commeq::solve_exp(a, eigs);
    auto via_log = commeq::solve_log(a, eigs);
    CHECK(via_exp.family.parameter_count == via_log.family.parameter_count);

    Matrix x1 = commeq::instantiate_regular(via_exp, {{sc("2")}, {sc("-3")}});
    Matrix x2 = commeq::instantiate_regular(via_log, {{sc("2")}, {sc("-3")}});
    CHECK(x1 == x2);
    CHECK(commeq::verify_inverse(a, x1, InverseSpec::exp_preset(3)).all_pass());
    CHECK(commeq::verify_direct(a, x1, TaylorSpec::log_preset(3)).all_pass());
}

TEST_CASE("three dimensional family, frozen member") {
    Dim3Params p(sc("0"), sc("1"), sc("2"), sc("1"), sc("1"));
    Matrix x = commeq::dim3_family(p);
    CHECK(x == mat({{"-1/2", "1", "1"}, {"-1/2", "1", "1"}, {"1/4", "-1/2", "-1/2"}}));
    Matrix y = commeq::commutator(x, p.a());
    CHECK(y * y == x);
    CHECK((x * x).is_zero());
    CHECK(commeq::verify_inverse(p.a(), x, InverseSpec::monomial_preset(2, 3)).all_pass());
}

TEST_CASE("three dimensional family, random members") {
    testutil::Rng rng(90125);
    int built = 0;
    while (built < 25) {
        Scalar u = rng.iscalar(-6, 6), v = rng.iscalar(-6, 6), w = rng.iscalar(-6, 6);
        if (u == v || v == w || u == w) continue;
        Dim3Params p(u, v, w, rng.nonzero(-6, 6), rng.nonzero(-6, 6));
        Matrix x = commeq::dim3_family(p);
        Matrix y = commeq::commutator(x, p.a());
        CHECK(y * y == x);
        CHECK((x * x).is_zero());
        CHECK(commeq::verify_inverse(p.a(), x, InverseSpec::monomial_preset(2, 3)).all_pass());
        // No shared eigenvector with A: images of the standard basis stay
        // outside every coordinate axis.
        for (int j = 0; j < 3; ++j) {
            int nonzero_rows = 0;
            for (int i = 0; i < 3; ++i)
                if (!x.at(i, j).is_zero()) ++nonzero_rows;
            CHECK(nonzero_rows > 1);
        }
        ++built;
    }
}

TEST_CASE("three dimensional family, rejected parameters") {
    CHECK_THROWS_AS(Dim3Params(sc("0"), sc("0"), sc("2"), sc("1"), sc("1")),
                    commeq::ConstraintViolation);
    CHECK_THROWS_AS(Dim3Params(sc("0"), sc("1"), sc("2"), sc("0"), sc("1")),
                    commeq::ConstraintViolation);
    CHECK_THROWS_AS(Dim3Params(sc("0"), sc("1"), sc("2"), sc("1"), sc("0")),
                    commeq::ConstraintViolation);
}

TEST_CASE("trace free square family, frozen member") {
    SquareParams p(sc("0"), sc("1"), sc("2"), sc("1"), sc("-2"));
    Matrix x = commeq::square_family(p);
    Matrix y = commeq::commutator(x, p.amat());
    CHECK(y * y == x * x);
    CHECK(x * x == sc("2") * Matrix::identity(2));
    CHECK(x.trace().is_zero());
    CHECK(commeq::verify_mixed_square(p.amat(), x).all_pass());
}

TEST_CASE("trace free square family, sampled members") {
    testutil::Rng rng(777);
    int built = 0;
    while (built < 25) {
        Scalar u = rng.iscalar(-5, 5), v = rng.iscalar(-5, 5);
        if (u == v) continue;
        Scalar a = rng.iscalar(-5, 5);
        Scalar b = rng.nonzero(-5, 5);
        Scalar d = u - v;
        Scalar c = -(a * a) * (b * (d * d + Scalar(1))).inverse();
        SquareParams p(u, v, a, b, c);
        Matrix x = commeq::square_family(p);
        CHECK(commeq::verify_mixed_square(p.amat(), x).all_pass());
        bool nil = commeq::is_nilpotent(x);
        CHECK(nil == (b * c).is_zero());
        ++built;
    }
}

TEST_CASE("trace free square family, rejected parameters") {
    CHECK_THROWS_AS(SquareParams(sc("1"), sc("1"), sc("0"), sc("1"), sc("0")),
                    commeq::ConstraintViolation);
    CHECK_THROWS_AS(SquareParams(sc("0"), sc("1"), sc("1"), sc("1"), sc("1")),
                    commeq::ConstraintViolation);
}

TEST_CASE("one sided products of commuting nilpotents") {
    Matrix n = Matrix::jordan_nilpotent(3);
    Matrix d = Matrix::diagonal({sc("0"), sc("1"), sc("2")});
    CHECK(commeq::kostant_check(n, d));

    CHECK_THROWS_AS(commeq::kostant_check(Matrix::identity(2), d.block(0, 0, 2, 2)),
                    commeq::PreconditionFailed);

    // [N, [N, A]] != 0: the probe's hypothesis fails.
    Matrix a = mat({{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}});
    CHECK_THROWS_AS(commeq::kostant_check(n, a), commeq::PreconditionFailed);
}
