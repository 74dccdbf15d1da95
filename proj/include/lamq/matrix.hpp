#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lamq/field.hpp"

namespace lamq {

struct RrefResult;

/* Dense matrix over an exact Field, row-major.  Elimination always pivots on
 * the first non-zero entry in column order and solve() sets free variables
 * to zero, so every result is reproducible bit for bit. */
class Matrix {
public:
    Matrix(const Field& f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), e_(rows * cols, f.zero()) {}

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_rows(const Field& f,
                            const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return f_; }

    const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    Matrix mul(const Matrix& o) const;
    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    Matrix hstack(const Matrix& o) const;  // [this | o]
    Matrix vstack(const Matrix& o) const;  // [this ; o]
    Matrix col_slice(std::size_t from, std::size_t count) const;
    Matrix column(std::size_t j) const;

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const;

    RrefResult rref() const;
    std::size_t rank() const;

    // columns form a basis of the right null space; deterministic order
    Matrix kernel_basis() const;

    // some X with (*this) X = b, free variables zero; nullopt if inconsistent
    std::optional<Matrix> solve(const Matrix& b) const;

    Scalar det() const;                      // square only
    std::optional<Matrix> inverse() const;   // nullopt when singular

    // basis of the column space: the columns of *this at rref pivot positions
    Matrix column_space_basis() const;

    std::string to_string() const;

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank;
};

// rank of [A | B] where the blocks share a row count
std::size_t stacked_rank(const Matrix& a, const Matrix& b);

}  // namespace lamq
