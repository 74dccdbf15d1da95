#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamq/algebra.hpp"

namespace lamq {

/* Finite-dimensional left module: one action matrix per algebra basis
 * element.  Right modules are everywhere realized as left modules over the
 * opposite algebra.  Values are immutable after construction. */
class Module {
public:
    Module(Algebra::Ptr alg, std::vector<Matrix> act)
        : alg_(std::move(alg)), act_(std::move(act)),
          dim_(act_.empty() ? 0 : act_[0].rows()) {}

    static Module zero(Algebra::Ptr alg);
    static Module direct_sum(const std::vector<Module>& parts);

    const Algebra::Ptr& algebra() const { return alg_; }
    const Field& field() const { return alg_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix& act(std::size_t i) const { return act_[i]; }

    // action of an arbitrary algebra element given by coordinates
    Matrix act_vec(const std::vector<Scalar>& coords) const;

    // unit acts as identity and the action respects the structure constants
    bool check_valid() const;

private:
    Algebra::Ptr alg_;
    std::vector<Matrix> act_;
    std::size_t dim_;
};

/* A homomorphism of modules over the same algebra, stored as its matrix
 * (target.dim x source.dim).  check() re-verifies the intertwining
 * equations by direct matrix arithmetic. */
struct ModuleMap {
    Module source;
    Module target;
    Matrix matrix;
    bool check() const;
};

struct SubmoduleResult {
    Module sub;
    Matrix basis;  // ambient_dim x sub_dim, columns = basis of the subspace
};

struct QuotientResult {
    Module quot;
    Matrix proj;     // quot_dim x ambient_dim
    Matrix section;  // ambient_dim x quot_dim, proj*section = id
};

struct CoverResult {
    Module proj_mod;  // Lambda^t
    Matrix map;       // dim M x (dim A * t), surjective, kernel inside rad
    std::size_t copies = 0;
};

struct SyzygyResult {
    Module syz;
    Matrix incl;  // (dim A * t) x dim syz, columns span ker(cover)
    CoverResult cover;
};

struct ApproxResult {
    Matrix map;   // (dim A * t) x dim M
    std::size_t copies = 0;
    std::vector<std::size_t> kept;  // indices into the Hom basis
    std::size_t hom_dim = 0;
    bool injective = false;
};

struct CosyzygyResult {
    Module cosyz;
    ApproxResult approx;
    Matrix proj;  // cosyz_dim x (dim A * t)
};

struct BoundedVerdict {
    bool holds = false;
    int depth = 0;    // the bound that was checked
    int fail_at = -1; // first failing iterate when !holds
};

struct IsoResult {
    enum class Verdict { yes, no, undecided } verdict;
    std::optional<Matrix> witness;  // invertible intertwiner when yes
    std::string note;
    bool yes() const { return verdict == Verdict::yes; }
};

// ---- Hom spaces and isomorphism ----

// basis of Hom(M, N): all matrices F with F act_M(b) = act_N(b) F
std::vector<Matrix> hom_basis(const Module& m, const Module& n);

/* Certified isomorphism test via deterministic polynomial identity testing
 * on the Hom basis: over Q the determinant is evaluated on the grid
 * {0..dim}^t (early exit on the first invertible combination); over F_p with
 * p <= dim the full space F_p^t is scanned when p^t fits the budget,
 * otherwise the outcome is an explicit "undecided". */
IsoResult is_isomorphic(const Module& m, const Module& n,
                        long long budget = 1'000'000);

// ---- Substructure ----

SubmoduleResult submodule(const Module& m, const std::vector<std::vector<Scalar>>& gens);
SubmoduleResult submodule_span(const Module& m, const Matrix& subspace_basis);
QuotientResult quotient(const Module& m, const Matrix& sub_basis);

Matrix radical_of(const Module& m);   // basis of (rad A) M
Matrix socle_of(const Module& m);     // basis of the annihilator of rad A
QuotientResult top_of(const Module& m);
std::size_t loewy_length(const Module& m);
bool is_local(const Module& m);       // simple top

// ---- Projectives, syzygies, approximations ----

CoverResult projective_cover(const Module& m);
SyzygyResult syzygy(const Module& m);
Module syzygy_iterate(const Module& m, int t);

ApproxResult left_approximation_minimal(const Module& m);
CosyzygyResult cosyzygy(const Module& m);
Module cosyzygy_iterate(const Module& m, int t);

// every hom M -> Lambda factors through the coordinates of `kept`
bool is_left_approximation(const Module& m, const std::vector<Matrix>& homs,
                           const std::vector<std::size_t>& kept);

// ---- Homological predicates ----

struct PredicateVerdict {
    bool value = false;
    std::string witness;
};

PredicateVerdict is_torsionless(const Module& m);
std::size_t ext_dim(const Module& m, int i);  // dim Ext^i(M, Lambda), i >= 1
PredicateVerdict is_extensionless(const Module& m);
PredicateVerdict is_reflexive(const Module& m);

BoundedVerdict semi_gp_up_to(const Module& m, int depth);
BoundedVerdict inf_tf_up_to(const Module& m, int depth);

// ---- Duality ----

Module dual(const Module& m);       // Hom(M, A) as a module over A^op
Module transpose(const Module& m);  // coker of the dualized minimal presentation

// evaluation M -> M**; returns its matrix in the double-dual basis
Matrix evaluation_map(const Module& m);
bool evaluation_bijective(const Module& m);

// ---- Decompositions and exhaustive scans ----

PredicateVerdict is_direct_sum_of(const Module& m, const std::vector<Module>& parts,
                                  long long budget = 1'000'000);

struct SubspaceScan {
    std::vector<Matrix> submodule_bases;  // each ambient_dim x d, closed under the action
    unsigned long long inspected = 0;
};

/* All d-dimensional action-closed subspaces of M over F_p, by exhaustive
 * scan of reduced echelon representatives of the Grassmannian.  The serial
 * variant is the reference implementation; the parallel one must agree with
 * it entry for entry. */
SubspaceScan enumerate_submodules_serial(const Module& m, std::size_t d,
                                         unsigned long long budget);
SubspaceScan enumerate_submodules(const Module& m, std::size_t d,
                                  unsigned long long budget);

}  // namespace lamq
