#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kvh/scalar.hpp"

namespace kvh {

// Sparse vector: (index, value) pairs, sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_normalize(SparseVec v);                     // sort, merge, drop zeros
SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y);  // x + a*y
std::vector<Scalar> sparse_to_dense(const SparseVec& v, int n);
SparseVec dense_to_sparse(const std::vector<Scalar>& v);

// Sparse matrix, stored by columns (assembly is column-per-basis-chain).
class Matrix {
public:
    Matrix() : rows_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols, SparseVec{}) {}

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_.size()); }

    void set(int r, int c, Scalar v);
    Scalar get(int r, int c) const;
    void add(int r, int c, const Scalar& v);

    const SparseVec& column(int c) const { return cols_[c]; }
    void set_column(int c, SparseVec v) { cols_[c] = sparse_normalize(std::move(v)); }

    Matrix transpose() const;
    Matrix multiply(const Matrix& rhs) const;
    bool is_zero() const;
    SparseVec apply(const SparseVec& x) const;  // matrix * vector

    static Matrix identity(int n);
    static Matrix from_columns(int rows, const std::vector<SparseVec>& cols);

private:
    int rows_;
    std::vector<SparseVec> cols_;
};

// Basis of a subspace of F^ambient; vectors are linearly independent.
struct SubspaceBasis {
    int ambient = 0;
    std::vector<SparseVec> vectors;

    int dim() const { return static_cast<int>(vectors.size()); }
};

// Row echelon form produced by fraction-free (Bareiss-style) elimination
// with cross-multiplication updates and per-row content stripping. Pivot
// entries are chosen by smallest bit size in the current column, ties broken
// by row order.
struct Echelon {
    int rank = 0;
    int cols = 0;
    std::vector<int> pivot_col;     // pivot column of each echelon row
    std::vector<SparseVec> rows;    // echelon rows, sorted by pivot column
    std::vector<bool> is_pivot_col;
};

Echelon echelonize(const Matrix& m);

int rank(const Matrix& m);

// Basis of the right null space; cols - rank vectors, each normalized to a
// primitive integer vector whose first nonzero entry is positive.
SubspaceBasis kernel_basis(const Matrix& m);

// Some x with m*x = b, or nullopt when the system is inconsistent.
std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b);

// Independent columns of m, in column order.
std::vector<int> independent_columns(const Matrix& m);

struct QuotientError {
    SparseVec witness;  // a boundary vector outside the cycle span
};

// dim cycles - dim boundaries, after checking boundaries lie in span(cycles).
// Throws std::invalid_argument with a witness description otherwise.
int quotient_dim(const SubspaceBasis& cycles, const SubspaceBasis& boundaries);

// Helpers for working with quotient spaces V/U (homology representatives).
//
// Given spanning vectors of U inside span(V), returns indices into `space`
// of vectors extending a basis of U to one of span(space).
std::vector<int> extend_to_basis(int ambient, const std::vector<SparseVec>& sub,
                                 const std::vector<SparseVec>& space);

}  // namespace kvh
