#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamq/family.hpp"

using namespace lamq;

namespace {

ProjPoint pt(const Field& f, long a, long b, long c) {
    return ProjPoint::make(f, f.from_long(a), f.from_long(b), f.from_long(c));
}

}  // namespace

TEST_CASE("point normalization") {
    Field f = Field::make("Q", "2");
    CHECK(pt(f, 2, 4, 6).str(f) == "(1:2:3)");
    Field f5 = Field::make("Fp:5", "2");
    CHECK(pt(f5, 0, 3, 0).str(f5) == "(0:1:0)");
    CHECK_THROWS(pt(f, 0, 0, 0));
    CHECK(ProjPoint::parse(f, "1, -2, 0").str(f) == "(1:-2:0)");
    CHECK_THROWS(ProjPoint::parse(f, "1,2"));
}

TEST_CASE("point transformations") {
    Field f = Field::make("Q", "2");
    auto w = omega(f, pt(f, 1, 1, 2));
    REQUIRE(w.has_value());
    CHECK(*w == pt(f, 1, 2, -1));
    auto wp = omega_prime(f, *w);
    REQUIRE(wp.has_value());
    CHECK(*wp == pt(f, 1, 1, 2));
    CHECK_FALSE(omega(f, pt(f, 1, -1, 5)).has_value());
    CHECK_FALSE(omega_prime(f, pt(f, 0, 1, 1)).has_value());
}

TEST_CASE("point modules") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    Module u = ctx.make_U(pt(f, 1, -1, 0), Side::left);
    CHECK(u.dim() == 3);
    CHECK(is_direct_sum_of(u, {ctx.ideal("x-y", Side::left), ctx.ideal("zx", Side::left)})
              .value);
    for (long b : {0L, 1L, -2L})
        for (long c : {0L, 1L}) {
            Module m = ctx.make_M(pt(f, 1, b, c), Side::left);
            CHECK(m.dim() == 3);
            CHECK(m.check_valid());
            CHECK(loewy_length(m) <= 2);
            CHECK(top_of(m).quot.dim() == 1);
            CHECK(socle_of(m).cols() == 2);
        }
    // primed modules live over the opposite algebra
    Module mp = ctx.make_M(pt(f, 1, 1, 0), Side::right);
    CHECK(mp.algebra()->same_as(ctx.alg_op()));
    CHECK(mp.dim() == 3);
}

TEST_CASE("syzygy case formula dispatch") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    CHECK(syzygy_formula(ctx, pt(f, 1, 1, 0), Side::left).case_no == 1);
    SyzygyDescriptor d2 = syzygy_formula(ctx, pt(f, 1, -1, 1), Side::left);
    CHECK(d2.case_no == 2);
    CHECK(d2.label == "M(0:0:1)");
    CHECK(syzygy_formula(ctx, pt(f, 1, -1, 0), Side::left).case_no == 3);
    SyzygyDescriptor d4 = syzygy_formula(ctx, pt(f, 0, 1, 5), Side::left);
    CHECK(d4.case_no == 4);
    CHECK(d4.label == "M(0:1:0)");
    CHECK(syzygy_formula(ctx, pt(f, 0, 0, 1), Side::left).case_no == 5);
    CHECK(syzygy_formula(ctx, pt(f, 1, 7, 3), Side::right).case_no == 1);
    SyzygyDescriptor r2 = syzygy_formula(ctx, pt(f, 0, 1, 1), Side::right);
    CHECK(r2.case_no == 2);
    CHECK(r2.label == "M'(0:0:1)");
    CHECK(syzygy_formula(ctx, pt(f, 0, 1, 0), Side::right).case_no == 3);
    CHECK(syzygy_formula(ctx, pt(f, 0, 0, 1), Side::right).case_no == 4);
}

TEST_CASE("closed-form classification over an infinite-order q") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    ClassificationReport r = classify_closed_form(ctx, pt(f, 1, -2, 3), Side::left);
    CHECK(r.pivotal_semi_gp);
    CHECK_FALSE(r.torsionless);
    CHECK(r.semi_gp);
    CHECK_FALSE(r.inf_torsionfree);
    r = classify_closed_form(ctx, pt(f, 1, 0, 1), Side::left);
    CHECK(r.gorenstein_projective);
    r = classify_closed_form(ctx, pt(f, 1, -1, 1), Side::right);
    CHECK(r.pivotal_semi_gp);
    CHECK_FALSE(r.torsionless);
    // right module M'(1,-1,0) is torsionless but not extensionless
    r = classify_closed_form(ctx, pt(f, 1, -1, 0), Side::right);
    CHECK(r.torsionless);
    CHECK_FALSE(r.extensionless);
    CHECK_FALSE(r.semi_gp);
}

TEST_CASE("closed-form classification at finite order") {
    Field f = Field::make("Fp:5", "2");
    LambdaContext ctx(f);
    // oracle: scan the powers of q in F_5^x
    std::set<long long> powers;
    Scalar acc = f.one();
    for (int i = 0; i < 4; ++i) {
        acc = f.mul(acc, f.q());
        powers.insert(acc.res());
    }
    CHECK(powers == std::set<long long>({2, 4, 3, 1}));
    // b = 1: -b = 4 = q^2, so reflexivity and both asymptotic properties fail
    ClassificationReport r = classify_closed_form(ctx, pt(f, 1, 1, 0), Side::left);
    CHECK(r.torsionless);      // b != -q = 3
    CHECK(r.extensionless);    // b != -1 = 4
    CHECK_FALSE(r.reflexive);  // b = -q^2
    CHECK_FALSE(r.semi_gp);
    CHECK_FALSE(r.inf_torsionfree);
    CHECK_FALSE(r.gorenstein_projective);
    // b = 0 never meets a power of q
    CHECK(classify_closed_form(ctx, pt(f, 1, 0, 1), Side::left).gorenstein_projective);
    ClassificationReport comp = classify_computational(ctx, pt(f, 1, 1, 0), Side::left, 6);
    std::string why;
    CHECK(reports_consistent(r, comp, &why));
    // finite order: the special right branch at b=-1, c!=0 is not semi-GP
    ClassificationReport rr = classify_closed_form(ctx, pt(f, 1, -1, 1), Side::right);
    CHECK_FALSE(rr.semi_gp);
    ClassificationReport rc = classify_computational(ctx, pt(f, 1, -1, 1), Side::right, 6);
    CHECK(reports_consistent(rr, rc, &why));
}

TEST_CASE("computational classification spot checks") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    ClassificationReport r = classify_computational(ctx, pt(f, 1, 1, 0), Side::left, 6);
    CHECK(r.torsionless);
    CHECK(r.extensionless);
    CHECK(r.reflexive);
    r = classify_computational(ctx, pt(f, 1, -2, 0), Side::left, 6);
    CHECK(r.extensionless);
    CHECK_FALSE(r.torsionless);
    Field f5 = Field::make("Fp:5", "2");
    LambdaContext ctx5(f5);
    r = classify_computational(ctx5, pt(f5, 0, 1, 1), Side::left, 3);
    CHECK_FALSE(r.torsionless);
    CHECK_FALSE(r.extensionless);
}

TEST_CASE("dual formulas") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    DualDescriptor d = dual_formula(ctx, pt(f, 1, -2, 7), Side::left);
    CHECK(d.kind == DualDescriptor::Kind::point_module);
    CHECK(d.point == ProjPoint::make(f, f.one(), f.parse("-1/2"), f.zero()));
    CHECK_THROWS(dual_formula(ctx, pt(f, 0, 1, 0), Side::left));
    CHECK(dual_formula(ctx, pt(f, 1, -1, 2), Side::right).branch == 2);
    CHECK(dual_formula(ctx, pt(f, 1, -1, 0), Side::right).branch == 3);
    DualDescriptor d4 = dual_formula(ctx, ProjPoint::make(f, f.one(), f.parse("-1/2"), f.one()),
                                     Side::right);
    CHECK(d4.branch == 4);
    DualDescriptor d5 = dual_formula(ctx, ProjPoint::make(f, f.one(), f.parse("-1/2"), f.zero()),
                                     Side::right);
    CHECK(d5.branch == 5);
    CHECK(dual_formula(ctx, pt(f, 1, 3, 1), Side::right).branch == 1);
    // q = 1 collapses the last two branches into the first three
    Field g = Field::make("Q", "1");
    LambdaContext gctx(g);
    CHECK(dual_formula(gctx, pt(g, 1, -1, 0), Side::right).branch == 3);
}

TEST_CASE("chain coefficients") {
    Field f = Field::make("Q", "2");
    std::vector<Scalar> c = chain_coefficients(f, f.one(), ChainKind::c_chain, 3);
    REQUIRE(c.size() == 3);
    CHECK(f.to_string(c[0]) == "1");
    CHECK(f.to_string(c[1]) == "1");      // -1/(1-2)
    CHECK(f.to_string(c[2]) == "1/3");    // -1/(1-4)
    std::vector<Scalar> d = chain_coefficients(f, f.zero(), ChainKind::d_chain, 4);
    for (const auto& s : d) CHECK(f.is_zero(s));
    // d-chain follows the cosyzygy transformation of the c-coordinate
    std::vector<Scalar> d1 = chain_coefficients(f, f.one(), ChainKind::d_chain, 3);
    ProjPoint p = pt(f, 1, -1, 1);
    for (int t = 1; t < 3; ++t) {
        p = *omega_prime(f, p);
        CHECK(f.eq(p.c, d1[t]));
    }
    Field f5 = Field::make("Fp:5", "2");
    CHECK_THROWS(chain_coefficients(f5, f5.one(), ChainKind::c_chain, 5));  // q^4 = 1
    CHECK(chain_coefficients(f5, f5.one(), ChainKind::c_chain, 4).size() == 4);
}

TEST_CASE("diagram cases") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    auto check_case = [&](long a, long b, long c, int expect) {
        ProjPoint p = pt(f, a, b, c);
        AppendixCase got = appendix_case(ctx, ctx.make_M(p, Side::left));
        CHECK(got.case_no == expect);
        CHECK(appendix_case_expected(f, p).case_no == expect);
    };
    check_case(0, 0, 1, 1);
    check_case(0, 1, 0, 2);
    check_case(1, 0, 0, 3);
    check_case(1, 4, 0, 4);
    check_case(1, 0, -1, 5);
    check_case(0, 1, 2, 6);
    check_case(1, 2, 3, 7);
    CHECK_THROWS(appendix_case(ctx, ctx.regular(Side::left)));
}

TEST_CASE("routes agree on random off-grid points") {
    // deterministic pseudo-random points beyond the standard grid
    uint64_t s = 0xfeedu;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    {
        Field f = Field::make("Fp:7", "3");  // o(q) = 6
        LambdaContext ctx(f);
        for (int i = 0; i < 14; ++i) {
            long a = (long)(next() % 2), b = (long)(next() % 7), c = (long)(next() % 7);
            if (a == 0 && b == 0 && c == 0) continue;
            ProjPoint p = pt(f, a, b, c);
            for (Side side : {Side::left, Side::right}) {
                ClassificationReport closed = classify_closed_form(ctx, p, side);
                ClassificationReport comp = classify_computational(ctx, p, side, 6);
                std::string why;
                CHECK_MESSAGE(reports_consistent(closed, comp, &why),
                              p.str(f), " ", side_name(side), ": ", why);
            }
        }
    }
    {
        Field f = Field::make("Q", "2");
        LambdaContext ctx(f);
        for (int i = 0; i < 5; ++i) {
            long b = (long)(next() % 21) - 10, c = (long)(next() % 9) - 4;
            ProjPoint p = pt(f, 1, b, c);
            ClassificationReport closed = classify_closed_form(ctx, p, Side::left);
            ClassificationReport comp = classify_computational(ctx, p, Side::left, 6);
            std::string why;
            CHECK_MESSAGE(reports_consistent(closed, comp, &why), p.str(f), ": ", why);
        }
    }
}

TEST_CASE("default grid hits every branch") {
    Field f = Field::make("Q", "2");
    std::vector<ProjPoint> grid = default_grid(f);
    CHECK(grid.size() >= 40);
    std::set<int> left_cases, right_cases;
    LambdaContext ctx(f);
    for (const auto& p : grid) {
        left_cases.insert(syzygy_formula(ctx, p, Side::left).case_no);
        right_cases.insert(syzygy_formula(ctx, p, Side::right).case_no);
    }
    CHECK(left_cases.size() == 5);
    CHECK(right_cases.size() == 4);
    // duplicates collapse at small order without losing branches
    Field f2 = Field::make("Fp:2", "1");
    std::set<std::string> keys;
    for (const auto& p : default_grid(f2)) CHECK(keys.insert(p.str(f2)).second);
}
