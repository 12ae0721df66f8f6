#include <catch2/catch_amalgamated.hpp>

#include "commeq/multipoly.hpp"
#include "helpers.hpp"

using commeq::MultiPoly;
using commeq::Rational;
using commeq::Scalar;

namespace {
const std::vector<std::string> XY = {"x", "y"};
} // namespace

TEST_CASE("construction and arithmetic") {
    MultiPoly x = MultiPoly::variable("x", XY);
    MultiPoly y = MultiPoly::variable("y", XY);
    MultiPoly p = (x + y) * (x + y);
    CHECK(p.str() == "x^2 + 2*x*y + y^2");
    CHECK(p == x * x + Rational(2) * (x * y) + y * y);
    CHECK((p - p).is_zero());
    CHECK((x - x).str() == "0");
    CHECK_THROWS_AS(MultiPoly::variable("z", XY), commeq::VariableMismatch);
}

TEST_CASE("terms collapse and zero coefficients vanish") {
    MultiPoly p(XY);
    p.add_term({1, 0}, Rational(2));
    p.add_term({1, 0}, Rational(-2));
    CHECK(p.is_zero());
    p.add_term({0, 2}, Rational(1, 2));
    CHECK(p.terms().size() == 1);
    CHECK(p.str() == "1/2*y^2");
}

TEST_CASE("canonical string ordering is total degree then lexicographic") {
    MultiPoly x = MultiPoly::variable("x", XY);
    MultiPoly y = MultiPoly::variable("y", XY);
    MultiPoly p = y * y * y + x + MultiPoly::constant(Rational(4), XY) - x * y;
    CHECK(p.str() == "y^3 - x*y + x + 4");
}

TEST_CASE("parse round trips byte for byte") {
    for (const char* text :
         {"x^2 + 2*x*y + y^2", "1/2*y^2", "y^3 - x*y + x + 4", "0", "-x + 1", "7"}) {
        MultiPoly p = MultiPoly::parse(text, XY);
        CHECK(p.str() == text);
        CHECK(MultiPoly::parse(p.str(), XY) == p);
    }
}

TEST_CASE("substitution evaluates exactly") {
    MultiPoly p = MultiPoly::parse("x^2 - 1/3*x*y + 2", XY);
    Scalar v = p.substitute({{"x", testutil::sc("3")}, {"y", testutil::sc("-2")}});
    CHECK(v == testutil::sc("13"));
    CHECK_THROWS_AS(p.substitute({{"x", Scalar(1)}}), commeq::VariableMismatch);
}

TEST_CASE("weighted homogeneity") {
    std::map<std::string, unsigned> w{{"x", 1}, {"y", 2}};
    CHECK(MultiPoly::parse("x^2 + y", XY).is_weighted_homogeneous(w, 2));
    CHECK_FALSE(MultiPoly::parse("x^2 + x", XY).is_weighted_homogeneous(w, 2));
    CHECK(MultiPoly(XY).is_weighted_homogeneous(w, 5));
}

TEST_CASE("extension to a wider variable list") {
    std::vector<std::string> XYZ = {"x", "y", "z"};
    MultiPoly p = MultiPoly::parse("x*y + 2", XY).extended_to(XYZ);
    MultiPoly z = MultiPoly::variable("z", XYZ);
    CHECK((p * z).str() == "x*y*z + 2*z");
    CHECK_THROWS_AS(p.extended_to({"y"}), commeq::VariableMismatch);
}
