#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamq/family.hpp"

using namespace lamq;

namespace {

struct Fixture {
    Field f = Field::make("Q", "2");
    LambdaContext ctx{f};
    ProjPoint pt(long a, long b, long c) const {
        return ProjPoint::make(f, f.from_long(a), f.from_long(b), f.from_long(c));
    }
    Module M(long a, long b, long c) const { return ctx.make_M(pt(a, b, c), Side::left); }
    Module simple() const { return top_of(ctx.regular(Side::left)).quot; }
};

}  // namespace

TEST_CASE("hom space dimensions") {
    Fixture x;
    CHECK(hom_basis(x.ctx.regular(Side::left), x.M(1, 0, 0)).size() == 3);
    CHECK(hom_basis(x.simple(), x.ctx.regular(Side::left)).size() == 2);
    // maps out of M(1,-q,0): the right annihilator of U(1,-q,0), computed
    // here from left-multiplication kernels as an independent oracle
    Module m = x.M(1, -2, 0);
    std::vector<Scalar> yx(6, x.f.zero()), zx(6, x.f.zero());
    yx[4] = x.f.one();
    zx[5] = x.f.one();
    Matrix sys = x.ctx.alg()->left_mult(x.ctx.generator_vec(x.pt(1, -2, 0)));
    sys = sys.vstack(x.ctx.alg()->left_mult(yx)).vstack(x.ctx.alg()->left_mult(zx));
    std::size_t oracle = sys.kernel_basis().cols();
    CHECK(oracle == 3);
    CHECK(hom_basis(m, x.ctx.regular(Side::left)).size() == oracle);
    // every basis map intertwines
    for (const auto& h : hom_basis(m, x.ctx.regular(Side::left))) {
        ModuleMap mm{m, x.ctx.regular(Side::left), h};
        CHECK(mm.check());
    }
}

TEST_CASE("isomorphism testing") {
    Fixture x;
    Module m = x.M(1, 1, 0);
    IsoResult self = is_isomorphic(m, m);
    REQUIRE(self.yes());
    CHECK(self.witness->inverse().has_value());
    CHECK(ModuleMap{m, m, *self.witness}.check());

    CHECK_FALSE(is_isomorphic(x.M(1, 0, 0), x.M(0, 1, 0)).yes());

    // the syzygy of M(1,1,2) lands at the transformed point
    Module om = syzygy(x.M(1, 1, 2)).syz;
    CHECK(is_isomorphic(om, x.M(1, 2, -1)).yes());
    CHECK_FALSE(is_isomorphic(om, x.M(1, 2, 1)).yes());
}

TEST_CASE("submodules and quotients") {
    Fixture x;
    const Module& reg = x.ctx.regular(Side::left);
    CHECK(x.ctx.ideal("z", Side::left).dim() == 2);
    CHECK(x.ctx.ideal("x-y", Side::left).dim() == 2);
    CHECK(x.M(1, 0, 0).dim() == 3);
    CHECK(x.ctx.make_U(x.pt(1, 0, 0), Side::left).dim() == 3);
    // inclusion of a submodule intertwines
    SubmoduleResult s = submodule(reg, {x.ctx.generator_vec(x.pt(1, 2, 3))});
    ModuleMap incl{s.sub, reg, s.basis};
    CHECK(incl.check());
    QuotientResult q = quotient(reg, s.basis);
    CHECK(q.quot.dim() + s.sub.dim() == 6);
    ModuleMap proj{reg, q.quot, q.proj};
    CHECK(proj.check());
    CHECK_THROWS(quotient(reg, Matrix::identity(x.f, 6).col_slice(1, 2)));  // not a submodule
}

TEST_CASE("radical, socle, top, Loewy length") {
    Fixture x;
    CHECK(loewy_length(x.M(1, 1, 0)) == 2);
    CHECK(loewy_length(x.ctx.regular(Side::left)) == 3);
    CHECK(top_of(x.M(1, 5, -1)).quot.dim() == 1);
    CHECK(is_local(x.M(0, 1, 1)));
    CHECK(socle_of(x.M(1, 1, 0)).cols() == 2);
    CHECK(radical_of(x.M(1, 1, 0)).cols() == 2);
    CHECK(loewy_length(x.simple()) == 1);
}

TEST_CASE("projective covers") {
    Fixture x;
    CHECK(projective_cover(x.M(1, 1, 0)).copies == 1);
    CoverResult creg = projective_cover(x.ctx.regular(Side::left));
    CHECK(creg.copies == 1);
    CHECK(creg.map.inverse().has_value());
    Module sum = Module::direct_sum({x.M(0, 1, 0), x.M(0, 0, 1)});
    CHECK(projective_cover(sum).copies == 2);
}

TEST_CASE("syzygies") {
    Fixture x;
    CHECK(syzygy(x.M(1, 1, 0)).syz.dim() == 3);
    CHECK(syzygy(x.ctx.regular(Side::left)).syz.dim() == 0);
    CHECK(syzygy(x.simple()).syz.dim() == 5);
    // dimension bookkeeping: dim Omega M = 6t - dim M
    for (long b : {0L, 1L, -2L}) {
        Module m = x.M(1, b, 1);
        SyzygyResult s = syzygy(m);
        CHECK(s.syz.dim() == 6 * s.cover.copies - m.dim());
        ModuleMap incl{s.syz, s.cover.proj_mod, s.incl};
        CHECK(incl.check());
    }
}

TEST_CASE("minimal left approximations") {
    Fixture x;
    ApproxResult a = left_approximation_minimal(x.M(1, 0, 0));
    CHECK(a.copies == 1);
    CHECK(a.injective);
    ApproxResult b = left_approximation_minimal(x.M(0, 1, 0));
    CHECK(b.copies >= 2);
    ApproxResult c = left_approximation_minimal(x.ctx.regular(Side::left));
    CHECK(c.copies == 1);
    CHECK(c.map.inverse().has_value());
    // the kept coordinates really form an approximation, and dropping any
    // kept coordinate breaks it
    Module m = x.M(0, 1, 0);
    std::vector<Matrix> homs = hom_basis(m, x.ctx.regular(Side::left));
    CHECK(is_left_approximation(m, homs, b.kept));
    for (std::size_t drop = 0; drop < b.kept.size(); ++drop) {
        std::vector<std::size_t> fewer;
        for (std::size_t i = 0; i < b.kept.size(); ++i)
            if (i != drop) fewer.push_back(b.kept[i]);
        CHECK_FALSE(is_left_approximation(m, homs, fewer));
    }
}

TEST_CASE("cosyzygies") {
    Fixture x;
    CosyzygyResult c = cosyzygy(x.M(0, 1, 0));
    CHECK(c.cosyz.dim() == 6 * c.approx.copies - 3);
    CHECK(loewy_length(c.cosyz) == 3);
    CHECK(cosyzygy(x.ctx.regular(Side::left)).cosyz.dim() == 0);
    CHECK(is_isomorphic(cosyzygy(x.M(1, 1, 2)).cosyz, x.M(2, 1, -6)).yes());
}

TEST_CASE("torsionless") {
    Fixture x;
    CHECK_FALSE(is_torsionless(x.M(1, -2, 0)).value);
    CHECK(is_torsionless(x.M(0, 1, 0)).value);
    CHECK(is_torsionless(x.ctx.regular(Side::left)).value);
    CHECK(is_torsionless(x.simple()).value);  // k embeds into the socle
}

TEST_CASE("ext dimensions") {
    Fixture x;
    /* dim Ext^1(k, Lambda) = dim Hom(rad, Lambda) - dim Hom(Lambda, Lambda)
     * + dim Hom(k, Lambda) = 7 - 6 + 2 = 3; the 7 is pinned by the generic
     * intertwining solver below. */
    Module rad = submodule_span(x.ctx.regular(Side::left),
                                radical_of(x.ctx.regular(Side::left)))
                     .sub;
    CHECK(hom_basis(rad, x.ctx.regular(Side::left)).size() == 7);
    CHECK(ext_dim(x.simple(), 1) == 3);
    CHECK(ext_dim(x.ctx.regular(Side::left), 1) == 0);
    CHECK_FALSE(is_extensionless(x.M(1, -1, 0)).value);
    CHECK(is_extensionless(x.M(1, 1, 0)).value);
    // higher Ext via syzygy shifting: M(1,-1,c) has extensionless syzygy
    CHECK(ext_dim(x.M(1, 2, 0), 2) == 0);
    CHECK(ext_dim(x.simple(), 2) > 0);
}

TEST_CASE("reflexivity") {
    Fixture x;
    CHECK_FALSE(is_reflexive(x.M(1, -4, 0)).value);  // b = -q^2
    CHECK(is_reflexive(x.M(1, 0, 0)).value);
    CHECK(is_reflexive(x.ctx.regular(Side::left)).value);
    CHECK(evaluation_bijective(x.M(1, 1, 0)));
    CHECK_FALSE(evaluation_bijective(x.M(1, -2, 0)));  // not even torsionless
}

TEST_CASE("duals") {
    Fixture x;
    Module dreg = dual(x.ctx.regular(Side::left));
    CHECK(is_isomorphic(dreg, x.ctx.regular(Side::right)).yes());
    CHECK(dual(x.simple()).dim() == 2);
    for (long c : {0L, 1L}) {
        Module d = dual(x.M(1, -2, c));
        Module expect = x.ctx.make_M(
            ProjPoint::make(x.f, x.f.one(), x.f.parse("-1/2"), x.f.zero()), Side::right);
        CHECK(is_isomorphic(d, expect).yes());
    }
    // evaluation map intertwines
    Module m = x.M(1, 3, 1);
    Matrix ev = evaluation_map(m);
    Module dd = dual(dual(m));
    CHECK(dd.algebra()->same_as(m.algebra()));
    ModuleMap mm{m, dd, ev};
    CHECK(mm.check());
}

TEST_CASE("transpose") {
    Fixture x;
    CHECK(transpose(x.ctx.regular(Side::left)).dim() == 0);
    for (long b : {1L, -2L, 0L}) {
        Module tr = transpose(x.M(1, b, 1));
        CHECK(is_isomorphic(tr, x.ctx.make_M(x.pt(1, b, 1), Side::right)).yes());
    }
    Module m = x.M(1, 1, 0);
    CHECK(is_isomorphic(transpose(transpose(m)), m).yes());
}

TEST_CASE("bounded semi-GP and inf-TF") {
    Fixture x;
    CHECK(semi_gp_up_to(x.M(1, -2, 0), 6).holds);
    BoundedVerdict itf = inf_tf_up_to(x.M(1, -1, 0), 6);
    CHECK(itf.holds);
    CHECK_FALSE(is_extensionless(x.M(1, -1, 0)).value);
    CHECK(semi_gp_up_to(x.ctx.regular(Side::left), 4).holds);
    CHECK(inf_tf_up_to(x.ctx.regular(Side::left), 4).holds);
    BoundedVerdict bad = semi_gp_up_to(x.M(1, -1, 0), 6);
    CHECK_FALSE(bad.holds);
    CHECK(bad.fail_at == 0);
}

TEST_CASE("direct sum recognition") {
    Fixture x;
    Module om = syzygy(x.M(1, -1, 0)).syz;
    CHECK(is_direct_sum_of(om, {x.ctx.ideal("x-y", Side::left),
                                x.ctx.ideal("zx", Side::left)})
              .value);
    Module om2 = syzygy(x.M(0, 0, 1)).syz;
    CHECK(is_direct_sum_of(om2, {x.ctx.ideal("z", Side::left),
                                 x.ctx.ideal("yx", Side::left)})
              .value);
    Module k = x.simple();
    CHECK_FALSE(is_direct_sum_of(x.M(1, 1, 0), {k, k, k}).value);
}

TEST_CASE("exhaustive submodule scan") {
    Field f = Field::make("Fp:3", "2");
    LambdaContext ctx(f);
    Module m = ctx.make_M(ProjPoint::make(f, f.one(), f.one(), f.zero()), Side::left);
    // dimension zero: exactly the zero submodule
    SubspaceScan zero = enumerate_submodules(m, 0, 100);
    CHECK(zero.submodule_bases.size() == 1);
    // its 1-dimensional submodules are the lines inside the 2-dimensional socle
    SubspaceScan lines = enumerate_submodules(m, 1, 10'000);
    CHECK(lines.submodule_bases.size() == 4);
    Matrix soc = socle_of(m);
    for (const auto& b : lines.submodule_bases)
        CHECK(stacked_rank(soc, b) == soc.cols());
    CHECK_THROWS(enumerate_submodules(m, 1, 2));  // budget
    Field q = Field::make("Q", "2");
    LambdaContext qctx(q);
    CHECK_THROWS(enumerate_submodules(qctx.regular(Side::left), 2, 100));
}
