#include <catch2/catch_amalgamated.hpp>

#include "commeq/scalar.hpp"

using commeq::Rational;
using commeq::Scalar;

TEST_CASE("rational construction is canonical") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(-6, 4).str() == "-3/2");
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 0), commeq::SingularError);
}

TEST_CASE("rational parse round trips") {
    for (const char* text : {"0", "1", "-7", "3/2", "-3/2", "22/7", "123456789123456789"}) {
        Rational r = Rational::parse(text);
        CHECK(r.str() == text);
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational::parse("4/6") == Rational(2, 3));
    CHECK(Rational::parse("+5") == Rational(5));
    CHECK_THROWS_AS(Rational::parse(""), commeq::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), commeq::ParseError);
    CHECK_THROWS_AS(Rational::parse("a"), commeq::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), commeq::ParseError);
}

TEST_CASE("rational arithmetic") {
    Rational a(3, 4), b(-2, 3);
    CHECK(a + b == Rational(1, 12));
    CHECK(a - b == Rational(17, 12));
    CHECK(a * b == Rational(-1, 2));
    CHECK(a / b == Rational(-9, 8));
    CHECK_THROWS_AS(a / Rational(0), commeq::SingularError);
    CHECK(a.inverse() == Rational(4, 3));
    CHECK(Rational(-2, 3).pow(3) == Rational(-8, 27));
    CHECK(Rational(7).pow(0) == Rational(1));
    CHECK(Rational(-5).abs() == Rational(5));
    CHECK(Rational::factorial(5) == Rational(120));
    CHECK(Rational::factorial(0) == Rational(1));
}

TEST_CASE("scalar parse and str round trips") {
    for (const char* text :
         {"0", "-7", "3/2", "i", "-i", "2i", "-2/3i", "1+i", "1-i", "3/2+2/5i", "-1-7i"}) {
        Scalar s = Scalar::parse(text);
        CHECK(s.str() == text);
        CHECK(Scalar::parse(s.str()) == s);
    }
    CHECK(Scalar::parse("1/2i") == Scalar(Rational(0), Rational(1, 2)));
    CHECK(Scalar::parse("+i") == Scalar::i());
    CHECK_THROWS_AS(Scalar::parse(""), commeq::ParseError);
    CHECK_THROWS_AS(Scalar::parse("1+"), commeq::ParseError);
}

TEST_CASE("complex field operations") {
    Scalar z(Rational(1), Rational(2));  // 1+2i
    CHECK(z.conj() == Scalar(Rational(1), Rational(-2)));
    CHECK(z.norm() == Rational(5));
    CHECK(z * z.conj() == Scalar(Rational(5)));
    CHECK(z.inverse() == Scalar(Rational(1, 5), Rational(-2, 5)));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(z.pow(2) == Scalar(Rational(-3), Rational(4)));
    CHECK_THROWS_AS(Scalar().inverse(), commeq::SingularError);

    Scalar w(Rational(3), Rational(-1));
    CHECK((z + w) - w == z);
    CHECK((z * w) / w == z);
}

TEST_CASE("total order is strict and consistent") {
    using commeq::total_less;
    Scalar a = Scalar::parse("1");
    Scalar b = Scalar::parse("1+i");
    Scalar c = Scalar::parse("2");
    CHECK(total_less(a, b));
    CHECK(total_less(b, c));
    CHECK(total_less(a, c));
    CHECK_FALSE(total_less(a, a));
    CHECK_FALSE(total_less(b, a));
}
