#include <catch2/catch_amalgamated.hpp>

#include "commeq/series.hpp"
#include "helpers.hpp"

using commeq::Scalar;
using commeq::SeriesCoeffs;
using testutil::sc;

namespace {
SeriesCoeffs series(const std::vector<std::string>& coeffs) {
    SeriesCoeffs s;
    for (const auto& c : coeffs) s.c.push_back(sc(c));
    return s;
}
} // namespace

TEST_CASE("series product") {
    SeriesCoeffs t = series({"1"});
    SeriesCoeffs sq = commeq::series_mul(t, t, 4);
    CHECK(sq.coeff(1).is_zero());
    CHECK(sq.coeff(2) == sc("1"));
    CHECK(sq.coeff(3).is_zero());

    // (t + t^2)(t - t^2) = t^2 - t^4
    SeriesCoeffs p = commeq::series_mul(series({"1", "1"}), series({"1", "-1"}), 4);
    CHECK(p.c == series({"0", "1", "0", "-1"}).c);
}

TEST_CASE("series composition") {
    // f(t) = t + t^2 composed with g(t) = 2t: f(2t) = 2t + 4t^2
    SeriesCoeffs r = commeq::series_compose(series({"1", "1"}), series({"2"}), 3);
    CHECK(r.c == series({"2", "4", "0"}).c);
}

TEST_CASE("reversion of 2t + t^2") {
    SeriesCoeffs g = commeq::series_reversion(series({"2", "1"}), 3);
    CHECK(g.c == series({"1/2", "-1/8", "1/16"}).c);
}

TEST_CASE("reversion composes to the identity") {
    SeriesCoeffs f = series({"3", "-1", "2", "5"});
    int order = 6;
    SeriesCoeffs g = commeq::series_reversion(f, order);
    SeriesCoeffs idl = commeq::series_compose(g, f, order);
    SeriesCoeffs idr = commeq::series_compose(f, g, order);
    for (int k = 1; k <= order; ++k) {
        CHECK(idl.coeff(k) == (k == 1 ? Scalar(1) : Scalar()));
        CHECK(idr.coeff(k) == (k == 1 ? Scalar(1) : Scalar()));
    }
}

TEST_CASE("exponential fluctuation reverses to the logarithm") {
    // e^t - 1 = t + t^2/2 + t^3/6 + t^4/24 reverses to log(1+t).
    SeriesCoeffs expf = series({"1", "1/2", "1/6", "1/24"});
    SeriesCoeffs g = commeq::series_reversion(expf, 4);
    CHECK(g.c == series({"1", "-1/2", "1/3", "-1/4"}).c);
}

TEST_CASE("reversion requires a nonzero linear term") {
    CHECK_THROWS_AS(commeq::series_reversion(series({"0", "1"}), 3), commeq::PreconditionFailed);
}

TEST_CASE("complex coefficients revert exactly") {
    SeriesCoeffs f = series({"i", "1"});
    SeriesCoeffs g = commeq::series_reversion(f, 4);
    SeriesCoeffs id = commeq::series_compose(g, f, 4);
    for (int k = 1; k <= 4; ++k) CHECK(id.coeff(k) == (k == 1 ? Scalar(1) : Scalar()));
}
