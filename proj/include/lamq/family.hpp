#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamq/module.hpp"

namespace lamq {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/* Normalized point of the projective plane: the first non-zero coordinate is
 * scaled to 1.  (a:b:c) indexes the 3-dimensional local module M(a,b,c) on
 * the left and M'(a,b,c) on the right. */
struct ProjPoint {
    Scalar a, b, c;

    static ProjPoint make(const Field& f, Scalar a, Scalar b, Scalar c);
    static ProjPoint parse(const Field& f, const std::string& csv);  // "a,b,c"

    bool operator==(const ProjPoint& o) const { return a == o.a && b == o.b && c == o.c; }
    std::string str(const Field& f) const;
};

/* Shared per-run state: the algebra, its opposite, cached regular modules
 * and socle generators. */
class LambdaContext {
public:
    explicit LambdaContext(const Field& f);

    const Field& field() const { return f_; }
    const Algebra::Ptr& alg() const { return lam_; }
    const Algebra::Ptr& alg_op() const { return lam_op_; }
    const Algebra::Ptr& alg_for(Side s) const { return s == Side::left ? lam_ : lam_op_; }
    const Module& regular(Side s) const { return s == Side::left ? reg_left_ : reg_right_; }

    // generator ax+by+cz as a coordinate vector in the basis 1,x,y,z,yx,zx
    std::vector<Scalar> generator_vec(const ProjPoint& p) const;

    Module make_U(const ProjPoint& p, Side s) const;  // Lambda(a,b,c) + soc
    Module make_M(const ProjPoint& p, Side s) const;  // Lambda / U(a,b,c)

    // named 2-dimensional ideals and socle lines
    Module ideal(const std::string& name, Side s) const;  // "x-y","z","y","yx","zx"

private:
    Field f_;
    Algebra::Ptr lam_, lam_op_;
    Module reg_left_, reg_right_;
};

// point transformations carrying the syzygy / cosyzygy direction
std::optional<ProjPoint> omega(const Field& f, const ProjPoint& p);        // needs a+b != 0
std::optional<ProjPoint> omega_prime(const Field& f, const ProjPoint& p);  // needs a != 0

/* Case analysis for the syzygy of a point module. */
struct SyzygyDescriptor {
    enum class Kind { point, named_point, decomposable } kind;
    ProjPoint point;          // for point / named_point
    std::string label;        // printable form
    std::vector<std::string> summands;  // for decomposable: ideal names
    int case_no = 0;
};

SyzygyDescriptor syzygy_formula(const LambdaContext& ctx, const ProjPoint& p, Side s);
Module realize(const LambdaContext& ctx, const SyzygyDescriptor& d, Side s);

/* Expected dual of a point module on the chart a != 0. */
struct DualDescriptor {
    enum class Kind { point_module, ideal_U, ideal_sum } kind;
    ProjPoint point;           // point_module / ideal_U
    ProjPoint point2;          // second summand of ideal_sum
    std::string label;
    int branch = 0;            // 1..5 on the right, 0 on the left
};

DualDescriptor dual_formula(const LambdaContext& ctx, const ProjPoint& p, Side s);
Module realize_dual(const LambdaContext& ctx, const DualDescriptor& d, Side s);

struct ClassificationReport {
    bool torsionless = false, extensionless = false, reflexive = false;
    bool semi_gp = false, inf_torsionfree = false, gorenstein_projective = false;
    bool pivotal_semi_gp = false, pivotal_inf_tf = false;
    Side side = Side::left;
    bool closed_form = true;
    int depth = 0;              // bound used by the computational route
    int semi_gp_fail_at = -1;   // first failing syzygy index, when bounded and failing
    int inf_tf_fail_at = -1;
    std::string str() const;
};

ClassificationReport classify_closed_form(const LambdaContext& ctx, const ProjPoint& p, Side s);
ClassificationReport classify_computational(const LambdaContext& ctx, const ProjPoint& p,
                                            Side s, int depth);

/* Agreement protocol between the two routes: the exact flags must match and
 * the bounded ones must be consistent with the closed form. */
bool reports_consistent(const ClassificationReport& closed,
                        const ClassificationReport& bounded, std::string* why = nullptr);

enum class ChainKind { c_chain, d_chain };

// coefficient recurrences along the syzygy / cosyzygy chains
std::vector<Scalar> chain_coefficients(const Field& f, const Scalar& seed,
                                       ChainKind kind, int length);

struct AppendixCase {
    int case_no = 0;  // 1..7
    std::string characterization;
    std::size_t dim_xM = 0, dim_yM = 0, dim_zM = 0;
};

// diagram case of a 3-dimensional local module killed by rad^2
AppendixCase appendix_case(const LambdaContext& ctx, const Module& m);
AppendixCase appendix_case_expected(const Field& f, const ProjPoint& p);

// the default verification grid of points for a configuration
std::vector<ProjPoint> default_grid(const Field& f);

}  // namespace lamq
