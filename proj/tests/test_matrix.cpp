#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamq/matrix.hpp"

using namespace lamq;

namespace {

uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, uint64_t& s) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            long long v = (long long)(splitmix64(s) % 7) - 3;
            m.at(i, j) = f.from_long(v);
        }
    return m;
}

}  // namespace

TEST_CASE("rref basics") {
    Field f = Field::make("Q", "2");
    Matrix id = Matrix::identity(f, 3);
    auto e = id.rref();
    CHECK(e.reduced == id);
    CHECK(e.pivots == std::vector<std::size_t>({0, 1, 2}));
    CHECK(e.rank == 3);

    Matrix z(f, 2, 4);
    auto ez = z.rref();
    CHECK(ez.rank == 0);
    CHECK(ez.pivots.empty());
    CHECK(ez.reduced.is_zero());

    Matrix m = Matrix::from_rows(f, {{f.from_long(2), f.from_long(4)},
                                     {f.from_long(1), f.from_long(2)}});
    auto em = m.rref();
    CHECK(em.rank == 1);
    CHECK(em.pivots == std::vector<std::size_t>({0}));
    CHECK(f.is_one(em.reduced.at(0, 0)));
    CHECK(f.eq(em.reduced.at(0, 1), f.from_long(2)));
    CHECK(f.is_zero(em.reduced.at(1, 0)));
    CHECK(f.is_zero(em.reduced.at(1, 1)));
}

TEST_CASE("rref is idempotent on random input") {
    for (const char* spec : {"Q", "Fp:5"}) {
        Field f = Field::make(spec, "2");
        uint64_t s = 7;
        for (int i = 0; i < 30; ++i) {
            Matrix m = random_matrix(f, 4, 6, s);
            auto once = m.rref();
            auto twice = once.reduced.rref();
            CHECK(once.reduced == twice.reduced);
        }
    }
}

TEST_CASE("kernel basics and the F5 oracle") {
    Field f5 = Field::make("Fp:5", "2");
    CHECK(Matrix::identity(f5, 2).kernel_basis().cols() == 0);
    CHECK(Matrix(f5, 2, 3).kernel_basis().cols() == 3);

    // kernel of [1 1] over F5: exhaustive scan of all 25 vectors
    Matrix m = Matrix::from_rows(f5, {{f5.one(), f5.one()}});
    Matrix k = m.kernel_basis();
    CHECK(k.cols() == 1);
    int oracle_count = 0;
    for (long a = 0; a < 5; ++a)
        for (long b = 0; b < 5; ++b)
            if ((a + b) % 5 == 0 && (a || b)) ++oracle_count;
    CHECK(oracle_count == 4);  // one line minus zero
    CHECK(m.mul(k).is_zero());
    CHECK_FALSE((f5.is_zero(k.at(0, 0)) && f5.is_zero(k.at(1, 0))));
}

TEST_CASE("rank-nullity on random matrices") {
    for (const char* spec : {"Q", "Fp:3", "Fp:2"}) {
        Field f = Field::make(spec, spec[0] == 'Q' ? "2" : "1");
        uint64_t s = 99;
        for (int i = 0; i < 40; ++i) {
            std::size_t r = 1 + splitmix64(s) % 5, c = 1 + splitmix64(s) % 5;
            Matrix m = random_matrix(f, r, c, s);
            Matrix k = m.kernel_basis();
            CHECK((m.rank() + k.cols() == c));
            CHECK(m.mul(k).is_zero());
            CHECK(k.rank() == k.cols());
        }
    }
}

TEST_CASE("solve") {
    Field f = Field::make("Q", "2");
    Matrix id = Matrix::identity(f, 3);
    uint64_t s = 5;
    Matrix b = random_matrix(f, 3, 2, s);
    auto x = id.solve(b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix zero(f, 2, 2);
    Matrix rhs = Matrix::from_rows(f, {{f.one()}, {f.zero()}});
    CHECK_FALSE(zero.solve(rhs).has_value());

    Matrix a = Matrix::from_rows(f, {{f.one(), f.one()}, {f.from_long(2), f.from_long(2)}});
    Matrix bad = Matrix::from_rows(f, {{f.one()}, {f.from_long(3)}});
    CHECK_FALSE(a.solve(bad).has_value());

    // solve(A, A x0) always returns a solution
    for (int i = 0; i < 25; ++i) {
        Matrix m = random_matrix(f, 4, 3, s);
        Matrix x0 = random_matrix(f, 3, 1, s);
        auto sol = m.solve(m.mul(x0));
        REQUIRE(sol.has_value());
        CHECK(m.mul(*sol) == m.mul(x0));
    }
}

TEST_CASE("determinant and inverse") {
    Field f = Field::make("Q", "2");
    uint64_t s = 11;
    for (int i = 0; i < 25; ++i) {
        Matrix m = random_matrix(f, 3, 3, s);
        Scalar d = m.det();
        auto inv = m.inverse();
        CHECK(f.is_zero(d) == !inv.has_value());
        if (inv) CHECK(m.mul(*inv).is_identity());
    }
    CHECK(f.is_one(Matrix::identity(f, 4).det()));
}

TEST_CASE("column space basis spans the columns") {
    Field f = Field::make("Fp:3", "2");
    uint64_t s = 3;
    for (int i = 0; i < 25; ++i) {
        Matrix m = random_matrix(f, 4, 5, s);
        Matrix b = m.column_space_basis();
        CHECK(b.cols() == m.rank());
        CHECK(stacked_rank(b, m) == b.cols());
    }
}
