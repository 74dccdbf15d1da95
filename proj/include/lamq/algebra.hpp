#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lamq/matrix.hpp"

namespace lamq {

class Module;

struct SeriesReport {
    std::vector<Matrix> chain;   // descending chain of subspace bases (columns)
    std::vector<std::size_t> dims;
    std::size_t length = 0;      // index of the first zero term
};

/* Finite-dimensional associative unital algebra given by structure constants
 * c[i][j] = coordinates of basis_i * basis_j.  Associativity is checked on
 * all basis triples at construction.  The algebras in scope are local with
 * residue field k, so the radical is the span of the non-unit basis
 * directions (validated to be a nilpotent ideal). */
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    using Ptr = std::shared_ptr<const Algebra>;

    /* The 6-dimensional algebra on basis 1, x, y, z, yx, zx with
     *   x^2 = y^2 = z^2 = 0,  yz = 0,  xy = -q yx,  xz = zx,  zy = zx,
     * and all products of three generators zero. */
    static Ptr lambda(const Field& f);

    // the radical-square quotient: basis 1, x, y, z, all length-2 products zero
    static Ptr lambda_bar(const Ptr& lam);

    static Ptr opposite(const Ptr& a);

    const Field& field() const { return f_; }
    std::size_t dim() const { return dim_; }
    std::size_t unit_index() const { return unit_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const std::vector<Scalar>& sc(std::size_t i, std::size_t j) const { return sc_[i][j]; }

    std::vector<Scalar> mul_vec(const std::vector<Scalar>& a,
                                const std::vector<Scalar>& b) const;
    Matrix left_mult(const std::vector<Scalar>& v) const;   // w -> v*w
    Matrix right_mult(const std::vector<Scalar>& v) const;  // w -> w*v
    std::vector<Scalar> coord_vec(std::size_t basis_index) const;

    bool check_associative() const;
    bool same_as(const Ptr& o) const;

    Matrix radical_basis() const;        // columns
    SeriesReport radical_series() const; // A ⊇ J ⊇ J² ⊇ ... ⊇ 0
    enum class Side { left, right };
    Matrix socle(Side side) const;       // annihilator of J on the given side

    Module regular_left() const;         // left multiplication representation

    std::string describe() const { return name_; }

private:
    Algebra() = default;
    static std::shared_ptr<Algebra> from_table(
        const Field& f, std::vector<std::string> labels, std::size_t unit,
        std::vector<std::vector<std::vector<Scalar>>> sc, std::string name);

    Field f_ = Field::make("Q", "1");
    std::size_t dim_ = 0;
    std::size_t unit_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<Scalar>>> sc_;
    std::string name_;
    mutable std::weak_ptr<const Algebra> opposite_;
    mutable std::weak_ptr<const Algebra> opposite_of_;
};

}  // namespace lamq
