#include "lamq/algebra.hpp"

#include <stdexcept>

#include "lamq/module.hpp"

namespace lamq {

std::shared_ptr<Algebra> Algebra::from_table(
    const Field& f, std::vector<std::string> labels, std::size_t unit,
    std::vector<std::vector<std::vector<Scalar>>> sc, std::string name) {
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->f_ = f;
    a->dim_ = labels.size();
    a->unit_ = unit;
    a->labels_ = std::move(labels);
    a->sc_ = std::move(sc);
    a->name_ = std::move(name);
    if (!a->check_associative())
        throw std::logic_error("structure constants are not associative: " + a->name_);
    // unit must act as a two-sided identity
    for (std::size_t i = 0; i < a->dim_; ++i)
        for (std::size_t k = 0; k < a->dim_; ++k) {
            Scalar want = (k == i) ? f.one() : f.zero();
            if (a->sc_[a->unit_][i][k] != want || a->sc_[i][a->unit_][k] != want)
                throw std::logic_error("unit is not an identity: " + a->name_);
        }
    return a;
}

Algebra::Ptr Algebra::lambda(const Field& f) {
    if (f.is_zero(f.q())) throw std::invalid_argument("q must be non-zero");
    const std::size_t n = 6;
    enum { e1, ex, ey, ez, eyx, ezx };
    std::vector<std::vector<std::vector<Scalar>>> sc(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, f.zero())));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
        sc[i][j][k] = c;
    };
    Scalar one = f.one();
    for (std::size_t i = 0; i < n; ++i) {
        set(e1, i, i, one);
        if (i != e1) set(i, e1, i, one);
    }
    /* Products of the radical basis, reduced by the defining relations.
     * Everything of length three vanishes. */
    set(ex, ey, eyx, f.neg(f.q()));  // xy = -q yx
    set(ex, ez, ezx, one);           // xz = zx
    set(ey, ex, eyx, one);           // yx
    set(ez, ex, ezx, one);           // zx
    set(ez, ey, ezx, one);           // zy = zx
    return from_table(f, {"1", "x", "y", "z", "yx", "zx"}, e1, std::move(sc),
                      "Lambda(q=" + f.to_string(f.q()) + ")/" + f.describe());
}

Algebra::Ptr Algebra::lambda_bar(const Ptr& lam) {
    if (lam->dim() != 6) throw std::invalid_argument("not the expected 6-dimensional algebra");
    const Field& f = lam->field();
    Matrix soc = lam->socle(Side::left);
    if (soc.cols() != 2) throw std::invalid_argument("socle is not 2-dimensional");
    const std::size_t n = 4;
    std::vector<std::vector<std::vector<Scalar>>> sc(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, f.zero())));
    for (std::size_t i = 0; i < n; ++i) {
        sc[0][i][i] = f.one();
        if (i) sc[i][0][i] = f.one();
    }
    return from_table(f, {"1", "x", "y", "z"}, 0, std::move(sc),
                      "LambdaBar/" + f.describe());
}

Algebra::Ptr Algebra::opposite(const Ptr& a) {
    if (auto back = a->opposite_of_.lock()) return back;
    if (auto cached = a->opposite_.lock()) return cached;
    auto op = std::shared_ptr<Algebra>(new Algebra());
    op->f_ = a->f_;
    op->dim_ = a->dim_;
    op->unit_ = a->unit_;
    op->labels_ = a->labels_;
    op->name_ = a->name_ + "^op";
    op->sc_.assign(a->dim_, std::vector<std::vector<Scalar>>(a->dim_));
    for (std::size_t i = 0; i < a->dim_; ++i)
        for (std::size_t j = 0; j < a->dim_; ++j) op->sc_[i][j] = a->sc_[j][i];
    op->opposite_of_ = a;
    a->opposite_ = op;
    return op;
}

std::vector<Scalar> Algebra::mul_vec(const std::vector<Scalar>& a,
                                     const std::vector<Scalar>& b) const {
    std::vector<Scalar> r(dim_, f_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
        if (f_.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (f_.is_zero(b[j])) continue;
            Scalar c = f_.mul(a[i], b[j]);
            for (std::size_t k = 0; k < dim_; ++k)
                if (!f_.is_zero(sc_[i][j][k]))
                    r[k] = f_.add(r[k], f_.mul(c, sc_[i][j][k]));
        }
    }
    return r;
}

Matrix Algebra::left_mult(const std::vector<Scalar>& v) const {
    Matrix m(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        std::vector<Scalar> col(dim_, f_.zero());
        for (std::size_t i = 0; i < dim_; ++i) {
            if (f_.is_zero(v[i])) continue;
            for (std::size_t k = 0; k < dim_; ++k)
                col[k] = f_.add(col[k], f_.mul(v[i], sc_[i][j][k]));
        }
        for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
    }
    return m;
}

Matrix Algebra::right_mult(const std::vector<Scalar>& v) const {
    Matrix m(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        std::vector<Scalar> col(dim_, f_.zero());
        for (std::size_t i = 0; i < dim_; ++i) {
            if (f_.is_zero(v[i])) continue;
            for (std::size_t k = 0; k < dim_; ++k)
                col[k] = f_.add(col[k], f_.mul(v[i], sc_[j][i][k]));
        }
        for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
    }
    return m;
}

std::vector<Scalar> Algebra::coord_vec(std::size_t basis_index) const {
    std::vector<Scalar> v(dim_, f_.zero());
    v[basis_index] = f_.one();
    return v;
}

bool Algebra::check_associative() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                std::vector<Scalar> lhs = mul_vec(sc_[i][j], coord_vec(k));
                std::vector<Scalar> rhs = mul_vec(coord_vec(i), sc_[j][k]);
                if (lhs != rhs) return false;
            }
    return true;
}

bool Algebra::same_as(const Ptr& o) const {
    if (this == o.get()) return true;
    if (dim_ != o->dim_ || unit_ != o->unit_ || !f_.same_as(o->f_)) return false;
    return sc_ == o->sc_;
}

Matrix Algebra::radical_basis() const {
    Matrix j(f_, dim_, dim_ - 1);
    std::size_t col = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i == unit_) continue;
        j.at(i, col++) = f_.one();
    }
    return j;
}

SeriesReport Algebra::radical_series() const {
    SeriesReport r;
    Matrix full = Matrix::identity(f_, dim_);
    r.chain.push_back(full);
    r.dims.push_back(dim_);
    Matrix power = radical_basis();
    Matrix rad = power;
    while (true) {
        r.chain.push_back(power);
        r.dims.push_back(power.cols());
        if (power.cols() == 0) break;
        // next power: span of (rad basis) * (current basis)
        std::vector<std::vector<Scalar>> prods;
        for (std::size_t a = 0; a < rad.cols(); ++a)
            for (std::size_t b = 0; b < power.cols(); ++b) {
                std::vector<Scalar> va(dim_), vb(dim_);
                for (std::size_t i = 0; i < dim_; ++i) {
                    va[i] = rad.at(i, a);
                    vb[i] = power.at(i, b);
                }
                prods.push_back(mul_vec(va, vb));
            }
        Matrix next(f_, dim_, prods.size());
        for (std::size_t c = 0; c < prods.size(); ++c)
            for (std::size_t i = 0; i < dim_; ++i) next.at(i, c) = prods[c][i];
        Matrix basis = next.column_space_basis();
        if (basis.cols() >= power.cols())
            throw std::logic_error("radical is not nilpotent: " + name_);
        power = basis;
    }
    r.length = r.chain.size() - 1;
    return r;
}

Matrix Algebra::socle(Side side) const {
    /* annihilator of J: intersection of the kernels of (left or right)
     * multiplication by the radical basis vectors */
    Matrix rad = radical_basis();
    Matrix stacked(f_, 0, dim_);
    for (std::size_t c = 0; c < rad.cols(); ++c) {
        std::vector<Scalar> v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = rad.at(i, c);
        Matrix m = (side == Side::left) ? left_mult(v) : right_mult(v);
        stacked = stacked.rows() ? stacked.vstack(m) : m;
    }
    return stacked.kernel_basis();
}

Module Algebra::regular_left() const {
    std::vector<Matrix> act;
    act.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) act.push_back(left_mult(coord_vec(i)));
    return Module(shared_from_this(), std::move(act));
}

}  // namespace lamq
