#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace logdet {

using index_t = std::size_t;

enum class NormKind { one, inf, frobenius };

/// Compressed sparse row matrix in canonical form: column indices strictly
/// increasing within each row, no duplicates. Immutable once built.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Takes ownership of CSR arrays; throws PreconditionError unless canonical.
    SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
                 std::vector<index_t> col_indices, std::vector<double> values);

    static SparseMatrix identity(index_t n, double scale = 1.0);
    static SparseMatrix diagonal(std::span<const double> diag);
    /// Row-major dense input; exact zeros are dropped.
    static SparseMatrix from_dense(index_t nrows, index_t ncols, std::span<const double> row_major);

    index_t rows() const noexcept { return nrows_; }
    index_t cols() const noexcept { return ncols_; }
    index_t nnz() const noexcept { return values_.size(); }
    bool is_square() const noexcept { return nrows_ == ncols_; }

    std::span<const index_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const index_t> col_indices() const noexcept { return col_indices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entry lookup by binary search within the row; 0 when not stored.
    double at(index_t row, index_t col) const;

    /// y = M x. Both spans must have the right lengths; y must not alias x.
    void multiply(std::span<const double> x, std::span<double> y) const;
    /// y = M^T x.
    void multiply_transpose(std::span<const double> x, std::span<double> y) const;

    SparseMatrix scaled(double factor) const;
    SparseMatrix transposed() const;
    bool is_symmetric(double tolerance = 0.0) const;

private:
    index_t nrows_ = 0;
    index_t ncols_ = 0;
    std::vector<index_t> row_offsets_{0};
    std::vector<index_t> col_indices_;
    std::vector<double> values_;
};

/// Coordinate-format accumulator. Duplicates are summed by finalize().
class TripletBuffer {
public:
    struct Entry {
        index_t row;
        index_t col;
        double value;
    };

    TripletBuffer(index_t nrows, index_t ncols) : nrows_(nrows), ncols_(ncols) {}

    void reserve(std::size_t n) { entries_.reserve(n); }
    void add(index_t row, index_t col, double value);

    index_t rows() const noexcept { return nrows_; }
    index_t cols() const noexcept { return ncols_; }
    std::span<const Entry> entries() const noexcept { return entries_; }

    SparseMatrix finalize() const;

private:
    index_t nrows_;
    index_t ncols_;
    std::vector<Entry> entries_;
};

std::vector<double> matvec(const SparseMatrix& m, std::span<const double> x);
std::vector<double> matvec_transpose(const SparseMatrix& m, std::span<const double> x);

double norm(const SparseMatrix& m, NormKind kind);

/// (min_i M_ii - R_i, max_i M_ii + R_i) with R_i the off-diagonal absolute row sum.
std::pair<double, double> gershgorin_interval(const SparseMatrix& m);

} // namespace logdet
