#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamq/field.hpp"

using namespace lamq;

namespace {

uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Scalar rnd(const Field& f, uint64_t& s) {
    if (f.is_rationals())
        return f.div(f.from_long((long long)(splitmix64(s) % 31) - 15),
                     f.from_long((long long)(splitmix64(s) % 7) + 1));
    return f.from_long((long long)(splitmix64(s) % (uint64_t)f.characteristic()));
}

}  // namespace

TEST_CASE("field construction and parsing") {
    Field q2 = Field::make("Q", "2");
    CHECK(q2.is_rationals());
    CHECK(q2.to_string(q2.q()) == "2");
    Field f5 = Field::make("Fp:5", "2");
    CHECK(f5.characteristic() == 5);
    CHECK(f5.to_string(f5.q()) == "2");
    CHECK_THROWS(Field::make("Fp:4", "1"));     // non-prime modulus
    CHECK_THROWS(Field::make("Q", "0"));        // q must be non-zero
    CHECK_THROWS(Field::make("Q", "abc"));
    CHECK_THROWS(Field::make("R", "2"));
    CHECK_THROWS(Field::make("Q", "1/0"));
    Field q3 = Field::make("Q", "1/3");
    CHECK(q3.to_string(q3.q()) == "1/3");
    // fraction literals reduce mod p
    Field f5b = Field::make("Fp:5", "1/2");
    CHECK(f5b.to_string(f5b.q()) == "3");
    CHECK(f5.to_string(f5.parse("-1")) == "4");
}

TEST_CASE("multiplicative order") {
    CHECK_FALSE(Field::make("Q", "2").mul_order().finite);
    CHECK_FALSE(Field::make("Q", "1/3").mul_order().finite);
    OrderResult o1 = Field::make("Q", "1").mul_order();
    CHECK(o1.finite);
    CHECK(o1.order == 1);
    OrderResult om1 = Field::make("Q", "-1").mul_order();
    CHECK(om1.finite);
    CHECK(om1.order == 2);
    OrderResult o52 = Field::make("Fp:5", "2").mul_order();
    CHECK(o52.finite);
    CHECK(o52.order == 4);
    // minimality: q^m != 1 for 0 < m < order
    Field f5 = Field::make("Fp:5", "2");
    for (long m = 1; m < o52.order; ++m) CHECK_FALSE(f5.is_one(f5.q_pow(m)));
    CHECK(f5.is_one(f5.q_pow(o52.order)));
}

TEST_CASE("field axioms on random triples") {
    for (const char* spec : {"Q", "Fp:5", "Fp:3", "Fp:2"}) {
        Field f = Field::make(spec, spec[0] == 'Q' ? "2" : "1");
        uint64_t s = 42;
        for (int i = 0; i < 200; ++i) {
            Scalar a = rnd(f, s), b = rnd(f, s), c = rnd(f, s);
            CHECK(f.eq(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
            CHECK(f.eq(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
            CHECK(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
            CHECK(f.eq(f.add(a, f.neg(a)), f.zero()));
            if (!f.is_zero(a)) CHECK(f.is_one(f.mul(a, f.inv(a))));
        }
    }
}

TEST_CASE("powers with negative exponents") {
    Field f = Field::make("Q", "2");
    CHECK(f.to_string(f.q_pow(-3)) == "1/8");
    CHECK(f.to_string(f.q_pow(0)) == "1");
    Field f5 = Field::make("Fp:5", "2");
    CHECK(f5.to_string(f5.q_pow(-1)) == "3");
}

TEST_CASE("exponent solving over the rationals") {
    Field f = Field::make("Q", "2");
    PowerSolutions s = solve_q_power(f, f.from_long(8));
    CHECK(s.kind == PowerSolutions::Kind::unique_exp);
    CHECK(s.i0 == 3);
    s = solve_q_power(f, f.parse("1/4"));
    CHECK(s.kind == PowerSolutions::Kind::unique_exp);
    CHECK(s.i0 == -2);
    CHECK(solve_q_power(f, f.from_long(3)).kind == PowerSolutions::Kind::none);
    CHECK(solve_q_power(f, f.from_long(-2)).kind == PowerSolutions::Kind::none);
    CHECK(solve_q_power(f, f.zero()).kind == PowerSolutions::Kind::none);
    // |q| < 1 mirrors the search
    Field g = Field::make("Q", "1/3");
    s = solve_q_power(g, g.parse("1/27"));
    CHECK(s.kind == PowerSolutions::Kind::unique_exp);
    CHECK(s.i0 == 3);
    s = solve_q_power(g, g.from_long(9));
    CHECK(s.i0 == -2);
    // negative q: sign must match
    Field h = Field::make("Q", "-2");
    s = solve_q_power(h, h.from_long(4));
    CHECK(s.kind == PowerSolutions::Kind::unique_exp);
    CHECK(s.i0 == 2);
    CHECK(solve_q_power(h, h.from_long(8)).kind == PowerSolutions::Kind::none);
    s = solve_q_power(h, h.from_long(-8));
    CHECK(s.i0 == 3);
}

TEST_CASE("exponent solving at finite order") {
    Field f5 = Field::make("Fp:5", "2");
    PowerSolutions s = solve_q_power(f5, f5.from_long(4));
    CHECK(s.kind == PowerSolutions::Kind::residue_class);
    CHECK(s.i0 == 2);
    CHECK(s.period == 4);
    CHECK(q_power_in_range(f5, f5.from_long(4), std::nullopt, 0));
    CHECK(q_power_in_range(f5, f5.from_long(4), 1, 2));
    CHECK_FALSE(q_power_in_range(f5, f5.from_long(4), 3, 4));
    Field q1 = Field::make("Q", "1");
    CHECK(q_power_in_range(q1, q1.one(), 1, 2));
    CHECK_FALSE(q_power_in_range(q1, q1.from_long(-1), std::nullopt, std::nullopt));
    Field qm = Field::make("Q", "-1");
    CHECK(q_power_in_range(qm, qm.from_long(-1), 1, 2));   // odd exponent in range
    CHECK(q_power_in_range(qm, qm.one(), 1, 2));           // even exponent in range
    CHECK_FALSE(q_power_in_range(qm, qm.one(), 1, 1));
}

TEST_CASE("range queries with a unique exponent") {
    Field f = Field::make("Q", "2");
    CHECK(q_power_in_range(f, f.from_long(8), 1, std::nullopt));
    CHECK_FALSE(q_power_in_range(f, f.from_long(8), std::nullopt, 0));
    CHECK(q_power_in_range(f, f.parse("1/2"), std::nullopt, 0));
    CHECK_FALSE(q_power_in_range(f, f.from_long(5), std::nullopt, std::nullopt));
}
