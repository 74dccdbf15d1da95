#include "lamq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace lamq {

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix Matrix::from_rows(const Field& f,
                         const std::vector<std::vector<Scalar>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in mul");
    Matrix r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (f_.is_zero(a)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = f_.add(r.at(i, j), f_.mul(a, o.at(k, j)));
        }
    return r;
}

Matrix Matrix::add(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in add");
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in sub");
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.sub(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.mul(e_[i], c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix r(f_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack col mismatch");
    Matrix r(f_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

Matrix Matrix::col_slice(std::size_t from, std::size_t count) const {
    Matrix r(f_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) r.at(i, j) = at(i, from + j);
    return r;
}

Matrix Matrix::column(std::size_t j) const { return col_slice(j, 1); }

std::size_t Matrix::rank() const { return rref().rank; }

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (!f_.is_zero(v)) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !f_.is_one(at(i, j)) : !f_.is_zero(at(i, j))) return false;
        }
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

RrefResult Matrix::rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = row;
        while (piv < rows_ && f_.is_zero(m.at(piv, col))) ++piv;
        if (piv == rows_) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Scalar s = f_.inv(m.at(row, col));
        for (std::size_t j = col; j < cols_; ++j) m.at(row, j) = f_.mul(m.at(row, j), s);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || f_.is_zero(m.at(i, col))) continue;
            Scalar c = m.at(i, col);
            for (std::size_t j = col; j < cols_; ++j)
                m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    std::size_t rank = pivots.size();
    return {std::move(m), std::move(pivots), rank};
}

Matrix Matrix::kernel_basis() const {
    RrefResult e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix k(f_, cols_, free_cols.size());
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
        std::size_t fc = free_cols[idx];
        k.at(fc, idx) = f_.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            k.at(e.pivots[r], idx) = f_.neg(e.reduced.at(r, fc));
    }
    return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
    if (b.rows_ != rows_) throw std::invalid_argument("solve shape mismatch");
    RrefResult e = hstack(b).rref();
    // a pivot inside the augmented block certifies inconsistency
    for (auto p : e.pivots)
        if (p >= cols_) return std::nullopt;
    Matrix x(f_, cols_, b.cols_);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols_; ++j)
            x.at(e.pivots[r], j) = e.reduced.at(r, cols_ + j);
    return x;
}

Scalar Matrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    Matrix m = *this;
    Scalar d = f_.one();
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = col;
        while (piv < rows_ && f_.is_zero(m.at(piv, col))) ++piv;
        if (piv == rows_) return f_.zero();
        if (piv != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = f_.neg(d);
        }
        d = f_.mul(d, m.at(col, col));
        Scalar s = f_.inv(m.at(col, col));
        for (std::size_t i = col + 1; i < rows_; ++i) {
            if (f_.is_zero(m.at(i, col))) continue;
            Scalar c = f_.mul(m.at(i, col), s);
            for (std::size_t j = col; j < cols_; ++j)
                m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(col, j)));
        }
    }
    return d;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    RrefResult e = hstack(identity(f_, rows_)).rref();
    if (e.rank < rows_ || (e.rank && e.pivots.back() >= cols_)) return std::nullopt;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        if (e.pivots[i] != i) return std::nullopt;
    return e.reduced.col_slice(cols_, cols_);
}

Matrix Matrix::column_space_basis() const {
    RrefResult e = rref();
    Matrix b(f_, rows_, e.rank);
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        for (std::size_t i = 0; i < rows_; ++i) b.at(i, k) = at(i, e.pivots[k]);
    return b;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << f_.to_string(at(i, j));
        os << "]";
    }
    return os.str();
}

std::size_t stacked_rank(const Matrix& a, const Matrix& b) {
    return a.hstack(b).rank();
}

}  // namespace lamq
