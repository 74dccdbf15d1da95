#include "lamq/family.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace lamq {

ProjPoint ProjPoint::make(const Field& f, Scalar a, Scalar b, Scalar c) {
    const Scalar* lead = nullptr;
    if (!f.is_zero(a)) lead = &a;
    else if (!f.is_zero(b)) lead = &b;
    else if (!f.is_zero(c)) lead = &c;
    if (!lead) throw std::invalid_argument("projective point needs a non-zero triple");
    Scalar s = f.inv(*lead);
    return {f.mul(a, s), f.mul(b, s), f.mul(c, s)};
}

ProjPoint ProjPoint::parse(const Field& f, const std::string& csv) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : csv) {
        if (ch == ',') { parts.push_back(cur); cur.clear(); }
        else if (!isspace((unsigned char)ch)) cur.push_back(ch);
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw std::invalid_argument("point must be three comma-separated values");
    return make(f, f.parse(parts[0]), f.parse(parts[1]), f.parse(parts[2]));
}

std::string ProjPoint::str(const Field& f) const {
    return "(" + f.to_string(a) + ":" + f.to_string(b) + ":" + f.to_string(c) + ")";
}

LambdaContext::LambdaContext(const Field& f)
    : f_(f),
      lam_(Algebra::lambda(f)),
      lam_op_(Algebra::opposite(lam_)),
      reg_left_(lam_->regular_left()),
      reg_right_(lam_op_->regular_left()) {}

std::vector<Scalar> LambdaContext::generator_vec(const ProjPoint& p) const {
    std::vector<Scalar> v(6, f_.zero());
    v[1] = p.a;
    v[2] = p.b;
    v[3] = p.c;
    return v;
}

Module LambdaContext::make_U(const ProjPoint& p, Side s) const {
    std::vector<Scalar> yx(6, f_.zero()), zx(6, f_.zero());
    yx[4] = f_.one();
    zx[5] = f_.one();
    return submodule(regular(s), {generator_vec(p), yx, zx}).sub;
}

Module LambdaContext::make_M(const ProjPoint& p, Side s) const {
    std::vector<Scalar> yx(6, f_.zero()), zx(6, f_.zero());
    yx[4] = f_.one();
    zx[5] = f_.one();
    SubmoduleResult u = submodule(regular(s), {generator_vec(p), yx, zx});
    return quotient(regular(s), u.basis).quot;
}

Module LambdaContext::ideal(const std::string& name, Side s) const {
    std::vector<Scalar> v(6, f_.zero());
    if (name == "x-y") { v[1] = f_.one(); v[2] = f_.neg(f_.one()); }
    else if (name == "y") v[2] = f_.one();
    else if (name == "z") v[3] = f_.one();
    else if (name == "yx") v[4] = f_.one();
    else if (name == "zx") v[5] = f_.one();
    else throw std::invalid_argument("unknown ideal name: " + name);
    return submodule(regular(s), {v}).sub;
}

std::optional<ProjPoint> omega(const Field& f, const ProjPoint& p) {
    Scalar ab = f.add(p.a, p.b);
    if (f.is_zero(ab)) return std::nullopt;
    Scalar b2 = f.mul(f.q(), p.b);
    Scalar c2 = f.neg(f.mul(f.div(p.a, ab), p.c));
    return ProjPoint::make(f, p.a, b2, c2);
}

std::optional<ProjPoint> omega_prime(const Field& f, const ProjPoint& p) {
    if (f.is_zero(p.a)) return std::nullopt;
    Scalar qb = f.mul(f.inv(f.q()), p.b);
    Scalar c2 = f.neg(f.mul(f.div(f.add(p.a, qb), p.a), p.c));
    return ProjPoint::make(f, p.a, qb, c2);
}

SyzygyDescriptor syzygy_formula(const LambdaContext& ctx, const ProjPoint& p, Side s) {
    const Field& f = ctx.field();
    SyzygyDescriptor d{SyzygyDescriptor::Kind::point, p, "", {}, 0};
    if (s == Side::left) {
        if (!f.is_zero(p.a) && !f.is_zero(f.add(p.a, p.b))) {
            d.point = *omega(f, p);
            d.label = "M" + d.point.str(f);
            d.case_no = 1;
        } else if (!f.is_zero(p.a) && !f.is_zero(p.c)) {
            d.kind = SyzygyDescriptor::Kind::named_point;
            d.point = ProjPoint::make(f, f.zero(), f.zero(), f.one());
            d.label = "M(0:0:1)";
            d.case_no = 2;
        } else if (!f.is_zero(p.a)) {
            d.kind = SyzygyDescriptor::Kind::decomposable;
            d.summands = {"x-y", "zx"};
            d.label = "Lambda(x-y) + Lambda(zx)";
            d.case_no = 3;
        } else if (!f.is_zero(p.b)) {
            d.kind = SyzygyDescriptor::Kind::named_point;
            d.point = ProjPoint::make(f, f.zero(), f.one(), f.zero());
            d.label = "M(0:1:0)";
            d.case_no = 4;
        } else {
            d.kind = SyzygyDescriptor::Kind::decomposable;
            d.summands = {"z", "yx"};
            d.label = "Lambda(z) + Lambda(yx)";
            d.case_no = 5;
        }
    } else {
        if (!f.is_zero(p.a)) {
            d.point = *omega_prime(f, p);
            d.label = "M'" + d.point.str(f);
            d.case_no = 1;
        } else if (!f.is_zero(p.b) && !f.is_zero(p.c)) {
            d.kind = SyzygyDescriptor::Kind::named_point;
            d.point = ProjPoint::make(f, f.zero(), f.zero(), f.one());
            d.label = "M'(0:0:1)";
            d.case_no = 2;
        } else if (f.is_zero(p.c)) {
            d.kind = SyzygyDescriptor::Kind::decomposable;
            d.summands = {"y", "zx"};
            d.label = "(y)Lambda + (zx)Lambda";
            d.case_no = 3;
        } else {
            d.kind = SyzygyDescriptor::Kind::decomposable;
            d.summands = {"z", "yx"};
            d.label = "(z)Lambda + (yx)Lambda";
            d.case_no = 4;
        }
    }
    return d;
}

Module realize(const LambdaContext& ctx, const SyzygyDescriptor& d, Side s) {
    switch (d.kind) {
        case SyzygyDescriptor::Kind::point:
        case SyzygyDescriptor::Kind::named_point:
            return ctx.make_M(d.point, s);
        case SyzygyDescriptor::Kind::decomposable: {
            std::vector<Module> parts;
            for (const auto& name : d.summands) parts.push_back(ctx.ideal(name, s));
            return Module::direct_sum(parts);
        }
    }
    throw std::logic_error("unreachable");
}

DualDescriptor dual_formula(const LambdaContext& ctx, const ProjPoint& p, Side s) {
    const Field& f = ctx.field();
    if (f.is_zero(p.a))
        throw std::invalid_argument("dual formula covers only the chart a != 0");
    DualDescriptor d;
    if (s == Side::left) {
        d.kind = DualDescriptor::Kind::point_module;
        d.point = *omega_prime(f, *omega_prime(f, p));
        d.label = "M'" + d.point.str(f);
        d.branch = 0;
        return d;
    }
    Scalar minus_one = f.neg(f.one());
    Scalar minus_qinv = f.neg(f.inv(f.q()));
    bool b_is_m1 = f.eq(p.b, minus_one);
    bool b_is_mqi = f.eq(p.b, minus_qinv);
    if (!b_is_m1 && !b_is_mqi) {
        d.kind = DualDescriptor::Kind::point_module;
        d.point = *omega(f, *omega(f, p));
        d.label = "M" + d.point.str(f);
        d.branch = 1;
    } else if (b_is_m1 && !f.is_zero(p.c)) {
        d.kind = DualDescriptor::Kind::ideal_U;
        d.point = ProjPoint::make(f, f.zero(), f.zero(), f.one());
        d.label = "U(0:0:1)";
        d.branch = 2;
    } else if (b_is_m1) {
        d.kind = DualDescriptor::Kind::ideal_sum;
        d.point = ProjPoint::make(f, f.one(), f.neg(f.q()), f.zero());
        d.point2 = ProjPoint::make(f, f.zero(), f.zero(), f.one());
        d.label = "U(1:-q:0) + U(0:0:1)";
        d.branch = 3;
    } else if (!f.is_zero(p.c)) {
        d.kind = DualDescriptor::Kind::point_module;
        d.point = ProjPoint::make(f, f.zero(), f.zero(), f.one());
        d.label = "M(0:0:1)";
        d.branch = 4;
    } else {
        d.kind = DualDescriptor::Kind::ideal_U;
        d.point = ProjPoint::make(f, f.one(), minus_one, f.zero());
        d.label = "U(1:-1:0)";
        d.branch = 5;
    }
    return d;
}

Module realize_dual(const LambdaContext& ctx, const DualDescriptor& d, Side s) {
    Side other = (s == Side::left) ? Side::right : Side::left;
    const Field& f = ctx.field();
    switch (d.kind) {
        case DualDescriptor::Kind::point_module:
            return ctx.make_M(d.point, other);
        case DualDescriptor::Kind::ideal_U:
            return ctx.make_U(d.point, other);
        case DualDescriptor::Kind::ideal_sum: {
            std::vector<Scalar> yx(6, f.zero()), zx(6, f.zero());
            yx[4] = f.one();
            zx[5] = f.one();
            return submodule(ctx.regular(other),
                             {ctx.generator_vec(d.point), ctx.generator_vec(d.point2), yx, zx})
                .sub;
        }
    }
    throw std::logic_error("unreachable");
}

std::string ClassificationReport::str() const {
    std::ostringstream os;
    auto flag = [&](const char* n, bool v) { os << "  " << n << ": " << (v ? "yes" : "no") << "\n"; };
    os << (closed_form ? "closed form" : "computational (depth " + std::to_string(depth) + ")")
       << " [" << side_name(side) << "]\n";
    flag("torsionless", torsionless);
    flag("extensionless", extensionless);
    flag("reflexive", reflexive);
    flag("semi-Gorenstein-projective", semi_gp);
    flag("inf-torsionfree", inf_torsionfree);
    flag("Gorenstein-projective", gorenstein_projective);
    flag("pivotal semi-GP", pivotal_semi_gp);
    flag("pivotal inf-TF", pivotal_inf_tf);
    if (semi_gp_fail_at >= 0) os << "  semi-GP fails at syzygy index " << semi_gp_fail_at << "\n";
    if (inf_tf_fail_at >= 0) os << "  inf-TF fails at cosyzygy index " << inf_tf_fail_at << "\n";
    return os.str();
}

namespace {

// smallest solution i >= lo of q^i = target, from the solved structure
std::optional<long> min_sol_at_least(const PowerSolutions& s, long lo) {
    switch (s.kind) {
        case PowerSolutions::Kind::none:
            return std::nullopt;
        case PowerSolutions::Kind::unique_exp:
            return s.i0 >= lo ? std::optional<long>(s.i0) : std::nullopt;
        case PowerSolutions::Kind::residue_class:
            return lo + (((s.i0 - lo) % s.period + s.period) % s.period);
    }
    return std::nullopt;
}

std::optional<long> max_sol_at_most(const PowerSolutions& s, long hi) {
    switch (s.kind) {
        case PowerSolutions::Kind::none:
            return std::nullopt;
        case PowerSolutions::Kind::unique_exp:
            return s.i0 <= hi ? std::optional<long>(s.i0) : std::nullopt;
        case PowerSolutions::Kind::residue_class:
            return hi - (((hi - s.i0) % s.period + s.period) % s.period);
    }
    return std::nullopt;
}

void take_min(std::optional<long>& acc, std::optional<long> cand) {
    if (cand && (!acc || *cand < *acc)) acc = cand;
}

}  // namespace

ClassificationReport classify_closed_form(const LambdaContext& ctx, const ProjPoint& p, Side s) {
    const Field& f = ctx.field();
    ClassificationReport r;
    r.side = s;
    r.closed_form = true;
    Scalar minus_b = f.neg(p.b);
    bool infinite_order = !f.mul_order().finite;
    /* The asymptotic flags come with the exact index of the first failing
     * syzygy / cosyzygy iterate, derived from the solutions of q^i = -b.
     * This both pins the flag and tells the bounded route where the failure
     * must show up. */
    std::optional<long> sgp_fail, itf_fail;
    if (s == Side::left) {
        if (!f.is_zero(p.a)) {
            bool b_is_mq = f.eq(p.b, f.neg(f.q()));
            bool b_is_m1 = f.eq(p.b, f.neg(f.one()));
            r.torsionless = !b_is_mq;
            r.extensionless = !b_is_m1;
            r.reflexive = !q_power_in_range(f, minus_b, 1, 2);
            PowerSolutions sol = solve_q_power(f, minus_b);
            // syzygy index t fails extensionless iff q^{-t} = -b
            if (auto im = max_sol_at_most(sol, 0)) sgp_fail = -*im;
            // cosyzygy index t fails reflexive iff -b = q^{t+1} or q^{t+2}
            if (auto i1 = min_sol_at_least(sol, 1)) itf_fail = std::max(*i1 - 2, 0L);
        } else {
            r.torsionless = f.is_zero(p.b) || f.is_zero(p.c);
            r.extensionless = false;
            r.reflexive = false;
            sgp_fail = 0;
            itf_fail = 0;
        }
    } else {
        if (!f.is_zero(p.a)) {
            bool b_is_mq = f.eq(p.b, f.neg(f.q()));
            bool b_is_m1 = f.eq(p.b, f.neg(f.one()));
            bool b_is_mqi = f.eq(p.b, f.neg(f.inv(f.q())));
            bool c_zero = f.is_zero(p.c);
            r.torsionless = !b_is_m1 || c_zero;
            /* the printed b != -q criterion has one exception: the inclusion
             * of (x-y)Lambda into Lambda is not an approximation, so
             * M'(1,-1,0) is not extensionless either */
            r.extensionless = !b_is_mq && !(b_is_m1 && c_zero);
            r.reflexive = !b_is_m1 && !b_is_mqi;
            PowerSolutions sol = solve_q_power(f, minus_b);
            /* syzygy index t fails extensionless iff b_t = -q (so -b = q^{t+1})
             * or b_t = -1 with the c-coordinate already collapsed to zero.
             * For c != 0 the collapse happens at the first index in the
             * solution set >= 1, which the first family always undercuts. */
            if (auto i1 = min_sol_at_least(sol, 1)) take_min(sgp_fail, *i1 - 1);
            if (c_zero)
                if (auto i0 = min_sol_at_least(sol, 0)) take_min(sgp_fail, *i0);
            // cosyzygy index t fails reflexive iff -b = q^{-t} or q^{-t-1}
            if (auto im = max_sol_at_most(sol, 0)) itf_fail = std::max(-*im - 1, 0L);
        } else {
            r.torsionless = f.is_zero(p.b);  // only M'(0:0:1)
            r.extensionless = false;
            r.reflexive = false;
            sgp_fail = 0;
            itf_fail = 0;
        }
    }
    r.semi_gp = !sgp_fail.has_value();
    r.inf_torsionfree = !itf_fail.has_value();
    r.semi_gp_fail_at = sgp_fail ? (int)*sgp_fail : -1;
    r.inf_tf_fail_at = itf_fail ? (int)*itf_fail : -1;
    // cross-check against the direct membership form of the criteria
    if (!f.is_zero(p.a)) {
        bool member_semi =
            s == Side::left
                ? !q_power_in_range(f, minus_b, std::nullopt, 0)
                : (!q_power_in_range(f, minus_b, 0, std::nullopt) ||
                   (infinite_order && f.eq(p.b, f.neg(f.one())) && !f.is_zero(p.c)));
        bool member_itf = s == Side::left
                              ? !q_power_in_range(f, minus_b, 1, std::nullopt)
                              : !q_power_in_range(f, minus_b, std::nullopt, 0);
        if (member_semi != r.semi_gp || member_itf != r.inf_torsionfree)
            throw std::logic_error("failing-index and membership routes disagree");
    }
    r.gorenstein_projective = r.semi_gp && r.inf_torsionfree;
    r.pivotal_semi_gp = r.semi_gp && !r.torsionless;
    r.pivotal_inf_tf = r.inf_torsionfree && !r.extensionless;
    return r;
}

ClassificationReport classify_computational(const LambdaContext& ctx, const ProjPoint& p,
                                            Side s, int depth) {
    ClassificationReport r;
    r.side = s;
    r.closed_form = false;
    r.depth = depth;
    Module m = ctx.make_M(p, s);
    r.torsionless = is_torsionless(m).value;
    r.extensionless = is_extensionless(m).value;
    r.reflexive = is_reflexive(m).value;
    BoundedVerdict sgp = semi_gp_up_to(m, depth);
    BoundedVerdict itf = inf_tf_up_to(m, depth);
    r.semi_gp = sgp.holds;
    r.inf_torsionfree = itf.holds;
    r.semi_gp_fail_at = sgp.fail_at;
    r.inf_tf_fail_at = itf.fail_at;
    ClassificationReport closed = classify_closed_form(ctx, p, s);
    r.gorenstein_projective = sgp.holds && itf.holds && closed.gorenstein_projective;
    r.pivotal_semi_gp = r.semi_gp && !r.torsionless;
    r.pivotal_inf_tf = r.inf_torsionfree && !r.extensionless;
    return r;
}

bool reports_consistent(const ClassificationReport& closed,
                        const ClassificationReport& bounded, std::string* why) {
    auto fail = [&](const std::string& what) {
        if (why) *why = "mismatch on " + what;
        return false;
    };
    if (closed.torsionless != bounded.torsionless) return fail("torsionless");
    if (closed.extensionless != bounded.extensionless) return fail("extensionless");
    if (closed.reflexive != bounded.reflexive) return fail("reflexive");
    /* Bounded verdicts are explicit about their bound: a closed-form "no"
     * whose failing index lies beyond the checked depth is consistent with a
     * bounded "holds up to depth".  Within the bound, the failing index must
     * match exactly; a bounded check may never refute a closed-form "yes". */
    bool semi_decidable = true, itf_decidable = true;
    if (closed.semi_gp) {
        if (!bounded.semi_gp) return fail("semi-GP (bounded check refutes a closed-form yes)");
    } else if (closed.semi_gp_fail_at <= bounded.depth) {
        if (bounded.semi_gp || bounded.semi_gp_fail_at != closed.semi_gp_fail_at)
            return fail("semi-GP failing index (expected " +
                        std::to_string(closed.semi_gp_fail_at) + ", bounded found " +
                        std::to_string(bounded.semi_gp_fail_at) + ")");
    } else {
        semi_decidable = false;
        if (!bounded.semi_gp) return fail("semi-GP (failure before the predicted index)");
    }
    if (closed.inf_torsionfree) {
        if (!bounded.inf_torsionfree)
            return fail("inf-TF (bounded check refutes a closed-form yes)");
    } else if (closed.inf_tf_fail_at <= bounded.depth) {
        if (bounded.inf_torsionfree || bounded.inf_tf_fail_at != closed.inf_tf_fail_at)
            return fail("inf-TF failing index (expected " +
                        std::to_string(closed.inf_tf_fail_at) + ", bounded found " +
                        std::to_string(bounded.inf_tf_fail_at) + ")");
    } else {
        itf_decidable = false;
        if (!bounded.inf_torsionfree) return fail("inf-TF (failure before the predicted index)");
    }
    if (closed.gorenstein_projective != bounded.gorenstein_projective)
        return fail("Gorenstein-projective");
    if (semi_decidable && closed.pivotal_semi_gp != bounded.pivotal_semi_gp)
        return fail("pivotal semi-GP");
    if (itf_decidable && closed.pivotal_inf_tf != bounded.pivotal_inf_tf)
        return fail("pivotal inf-TF");
    return true;
}

std::vector<Scalar> chain_coefficients(const Field& f, const Scalar& seed,
                                       ChainKind kind, int length) {
    std::vector<Scalar> seq;
    if (length <= 0) return seq;
    seq.push_back(seed);
    for (int t = 1; t < length; ++t) {
        if (kind == ChainKind::c_chain) {
            Scalar den = f.sub(f.one(), f.q_pow(t));
            if (f.is_zero(den))
                throw std::domain_error("chain step undefined: q^" + std::to_string(t) + " = 1");
            seq.push_back(f.neg(f.div(seq.back(), den)));
        } else {
            Scalar fac = f.sub(f.one(), f.q_pow(-t));
            seq.push_back(f.neg(f.mul(fac, seq.back())));
        }
    }
    return seq;
}

namespace {

bool same_span(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return false;
    return stacked_rank(a, b) == a.cols() && a.rank() == a.cols();
}

}  // namespace

AppendixCase appendix_case(const LambdaContext& ctx, const Module& m) {
    if (!m.algebra()->same_as(ctx.alg()))
        throw std::invalid_argument("diagram cases classify left modules only");
    if (m.dim() != 3 || !is_local(m))
        throw std::invalid_argument("diagram cases cover 3-dimensional local modules");
    if (!m.act(4).is_zero() || !m.act(5).is_zero())
        throw std::invalid_argument("module is not annihilated by the radical square");
    Matrix xm = m.act(1).column_space_basis();
    Matrix ym = m.act(2).column_space_basis();
    Matrix zm = m.act(3).column_space_basis();
    AppendixCase r;
    r.dim_xM = xm.cols();
    r.dim_yM = ym.cols();
    r.dim_zM = zm.cols();
    if (zm.cols() == 0) { r.case_no = 1; r.characterization = "zM = 0"; }
    else if (ym.cols() == 0) { r.case_no = 2; r.characterization = "yM = 0"; }
    else if (xm.cols() == 0) { r.case_no = 3; r.characterization = "xM = 0"; }
    else if (same_span(xm, ym)) { r.case_no = 4; r.characterization = "xM = yM"; }
    else if (same_span(xm, zm)) { r.case_no = 5; r.characterization = "xM = zM"; }
    else if (same_span(ym, zm)) { r.case_no = 6; r.characterization = "yM = zM"; }
    else { r.case_no = 7; r.characterization = "xM, yM, zM non-zero and pairwise different"; }
    return r;
}

AppendixCase appendix_case_expected(const Field& f, const ProjPoint& p) {
    AppendixCase r;
    bool a0 = f.is_zero(p.a), b0 = f.is_zero(p.b), c0 = f.is_zero(p.c);
    if (a0 && b0) r.case_no = 1;
    else if (a0 && c0) r.case_no = 2;
    else if (b0 && c0) r.case_no = 3;
    else if (!a0 && !b0 && c0) r.case_no = 4;
    else if (!a0 && b0) r.case_no = 5;
    else if (a0) r.case_no = 6;
    else r.case_no = 7;
    return r;
}

std::vector<ProjPoint> default_grid(const Field& f) {
    const Scalar one = f.one(), q = f.q();
    std::vector<Scalar> bs = {f.zero(), one, f.neg(one), q, f.neg(q),
                              f.q_pow(2), f.neg(f.q_pow(2)), f.q_pow(-1),
                              f.neg(f.q_pow(-1)), f.neg(f.q_pow(3))};
    std::vector<Scalar> cs = {f.zero(), one, f.neg(one), q};
    std::vector<ProjPoint> grid;
    std::set<std::string> seen;
    auto push = [&](const ProjPoint& p) {
        if (seen.insert(p.str(f)).second) grid.push_back(p);
    };
    for (const auto& b : bs)
        for (const auto& c : cs) push(ProjPoint::make(f, one, b, c));
    push(ProjPoint::make(f, f.zero(), one, f.zero()));
    push(ProjPoint::make(f, f.zero(), f.zero(), one));
    push(ProjPoint::make(f, f.zero(), one, one));
    push(ProjPoint::make(f, f.zero(), one, f.neg(one)));
    return grid;
}

}  // namespace lamq
