#include <catch2/catch_amalgamated.hpp>

#include "commeq/matrix.hpp"
#include "helpers.hpp"

using commeq::Matrix;
using commeq::Scalar;
using testutil::mat;
using testutil::sc;

TEST_CASE("constructors and shape queries") {
    Matrix id = Matrix::identity(3);
    CHECK(id.n() == 3);
    CHECK(id.is_upper_triangular());
    CHECK(id.at(1, 1) == Scalar(1));
    CHECK(id.at(0, 1).is_zero());

    Matrix j = Matrix::jordan_nilpotent(3);
    CHECK(j.is_strictly_upper_triangular());
    CHECK(j.at(0, 1) == Scalar(1));
    CHECK(j.at(0, 2).is_zero());

    Matrix d = Matrix::diagonal({sc("1"), sc("2")});
    CHECK(d.trace() == Scalar(3));
    CHECK(d.diagonal_entries() == std::vector<Scalar>{sc("1"), sc("2")});

    Matrix rect(2, 3);
    CHECK(rect.rows() == 2);
    CHECK(rect.cols() == 3);
    CHECK_FALSE(rect.is_square());
    CHECK_THROWS_AS(rect.n(), commeq::DimensionMismatch);
}

TEST_CASE("arithmetic identities") {
    Matrix a = mat({{"1", "2"}, {"3", "4"}});
    Matrix b = mat({{"0", "1"}, {"1", "0"}});
    CHECK(a + b - b == a);
    CHECK(a * Matrix::identity(2) == a);
    CHECK(Matrix::identity(2) * a == a);
    CHECK(sc("2") * a == a + a);
    CHECK(-a + a == Matrix(2, 2));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(commeq::commutator(a, b) == -(commeq::commutator(b, a)));
    CHECK(commeq::commutator(a, a).is_zero());

    Matrix p = mat({{"1", "1"}, {"0", "1"}});
    CHECK(p.pow(3) == mat({{"1", "3"}, {"0", "1"}}));
    CHECK(p.pow(0) == Matrix::identity(2));
}

TEST_CASE("block assembly round trips") {
    Matrix a = mat({{"1", "2"}, {"3", "4"}});
    Matrix b = mat({{"5"}});
    Matrix s = Matrix::direct_sum({a, b});
    CHECK(s.n() == 3);
    CHECK(s.block(0, 0, 2, 2) == a);
    CHECK(s.block(2, 2, 1, 1) == b);
    CHECK(s.at(0, 2).is_zero());

    Matrix t(3, 3);
    t.set_block(0, 1, mat({{"7", "8"}}));
    CHECK(t.at(0, 1) == sc("7"));
    CHECK(t.at(0, 2) == sc("8"));

    CHECK(s.column(2) == std::vector<Scalar>{sc("0"), sc("0"), sc("5")});
    CHECK(s.row(0) == std::vector<Scalar>{sc("1"), sc("2"), sc("0")});
}

TEST_CASE("nilpotency detection") {
    CHECK(commeq::is_nilpotent(Matrix::jordan_nilpotent(4)));
    CHECK(commeq::nilpotency_index(Matrix::jordan_nilpotent(4)) == 4);
    CHECK(commeq::nilpotency_index(Matrix(3, 3)) == 1);
    CHECK_FALSE(commeq::is_nilpotent(Matrix::identity(2)));
    CHECK_THROWS_AS(commeq::nilpotency_index(Matrix::identity(2)), commeq::NotNilpotent);

    Matrix n = mat({{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
    CHECK(commeq::nilpotency_index(n) == 2);
}

TEST_CASE("superdiagonal extraction") {
    Matrix m = mat({{"0", "1", "4"}, {"0", "0", "2"}, {"0", "0", "0"}});
    CHECK(commeq::false_diagonal(m, 1) == std::vector<Scalar>{sc("1"), sc("2")});
    CHECK(commeq::false_diagonal(m, 2) == std::vector<Scalar>{sc("4")});
}

TEST_CASE("triangularity predicates") {
    CHECK(mat({{"1", "2"}, {"0", "3"}}).is_upper_triangular());
    CHECK_FALSE(mat({{"1", "2"}, {"1", "3"}}).is_upper_triangular());
    CHECK(mat({{"0", "2"}, {"0", "0"}}).is_strictly_upper_triangular());
    CHECK_FALSE(mat({{"1", "2"}, {"0", "0"}}).is_strictly_upper_triangular());
}
