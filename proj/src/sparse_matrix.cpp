#include "logdet/sparse_matrix.hpp"

#include "logdet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace logdet {

SparseMatrix::SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
                           std::vector<index_t> col_indices, std::vector<double> values)
    : nrows_(nrows), ncols_(ncols), row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)), values_(std::move(values)) {
    if (row_offsets_.size() != nrows_ + 1 || row_offsets_.front() != 0)
        throw PreconditionError("row_offsets must have nrows+1 entries starting at 0");
    if (row_offsets_.back() != values_.size() || col_indices_.size() != values_.size())
        throw PreconditionError("row_offsets, col_indices and values disagree on nnz");
    for (index_t i = 0; i < nrows_; ++i) {
        if (row_offsets_[i] > row_offsets_[i + 1])
            throw PreconditionError("row_offsets must be non-decreasing");
        for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            if (col_indices_[k] >= ncols_)
                throw PreconditionError("column index out of range in row " + std::to_string(i));
            if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1])
                throw PreconditionError("column indices not strictly increasing in row " +
                                        std::to_string(i));
        }
    }
}

SparseMatrix SparseMatrix::identity(index_t n, double scale) {
    std::vector<double> d(n, scale);
    return diagonal(d);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> diag) {
    const index_t n = diag.size();
    std::vector<index_t> offsets(n + 1);
    std::vector<index_t> cols;
    std::vector<double> vals;
    for (index_t i = 0; i < n; ++i) {
        if (diag[i] != 0.0) {
            cols.push_back(i);
            vals.push_back(diag[i]);
        }
        offsets[i + 1] = cols.size();
    }
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(index_t nrows, index_t ncols,
                                      std::span<const double> row_major) {
    if (row_major.size() != nrows * ncols)
        throw DimensionError("dense input has " + std::to_string(row_major.size()) +
                             " entries, expected " + std::to_string(nrows * ncols));
    std::vector<index_t> offsets(nrows + 1);
    std::vector<index_t> cols;
    std::vector<double> vals;
    for (index_t i = 0; i < nrows; ++i) {
        for (index_t j = 0; j < ncols; ++j) {
            const double v = row_major[i * ncols + j];
            if (v != 0.0) {
                cols.push_back(j);
                vals.push_back(v);
            }
        }
        offsets[i + 1] = cols.size();
    }
    return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::at(index_t row, index_t col) const {
    if (row >= nrows_ || col >= ncols_) throw DimensionError("entry index out of range");
    const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
    const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0.0;
    return values_[static_cast<index_t>(it - col_indices_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != ncols_ || y.size() != nrows_)
        throw DimensionError("matvec: matrix is " + std::to_string(nrows_) + "x" +
                             std::to_string(ncols_) + ", x has " + std::to_string(x.size()));
    const index_t* off = row_offsets_.data();
    const index_t* col = col_indices_.data();
    const double* val = values_.data();
    for (index_t i = 0; i < nrows_; ++i) {
        double sum = 0.0;
        for (index_t k = off[i]; k < off[i + 1]; ++k) sum += val[k] * x[col[k]];
        y[i] = sum;
    }
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
    if (x.size() != nrows_ || y.size() != ncols_)
        throw DimensionError("matvec_transpose: matrix is " + std::to_string(nrows_) + "x" +
                             std::to_string(ncols_) + ", x has " + std::to_string(x.size()));
    std::fill(y.begin(), y.end(), 0.0);
    for (index_t i = 0; i < nrows_; ++i) {
        const double xi = x[i];
        for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            y[col_indices_[k]] += values_[k] * xi;
    }
}

SparseMatrix SparseMatrix::scaled(double factor) const {
    SparseMatrix out = *this;
    for (double& v : out.values_) v *= factor;
    return out;
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<index_t> offsets(ncols_ + 1, 0);
    for (index_t c : col_indices_) ++offsets[c + 1];
    for (index_t j = 0; j < ncols_; ++j) offsets[j + 1] += offsets[j];
    std::vector<index_t> cols(nnz());
    std::vector<double> vals(nnz());
    std::vector<index_t> cursor(offsets.begin(), offsets.end() - 1);
    // Rows are visited in increasing order, so each output row comes out sorted.
    for (index_t i = 0; i < nrows_; ++i) {
        for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const index_t dst = cursor[col_indices_[k]]++;
            cols[dst] = i;
            vals[dst] = values_[k];
        }
    }
    return SparseMatrix(ncols_, nrows_, std::move(offsets), std::move(cols), std::move(vals));
}

bool SparseMatrix::is_symmetric(double tolerance) const {
    if (!is_square()) return false;
    for (index_t i = 0; i < nrows_; ++i) {
        for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const double a = values_[k];
            const double b = at(col_indices_[k], i);
            if (std::abs(a - b) > tolerance * std::max(std::abs(a), std::abs(b))) return false;
        }
    }
    return true;
}

void TripletBuffer::add(index_t row, index_t col, double value) {
    if (row >= nrows_ || col >= ncols_)
        throw DimensionError("triplet (" + std::to_string(row) + ", " + std::to_string(col) +
                             ") outside " + std::to_string(nrows_) + "x" + std::to_string(ncols_));
    entries_.push_back({row, col, value});
}

SparseMatrix TripletBuffer::finalize() const {
    std::vector<Entry> sorted(entries_);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<index_t> offsets(nrows_ + 1, 0);
    std::vector<index_t> cols;
    std::vector<double> vals;
    cols.reserve(sorted.size());
    vals.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size();) {
        const index_t r = sorted[k].row;
        const index_t c = sorted[k].col;
        double sum = 0.0;
        for (; k < sorted.size() && sorted[k].row == r && sorted[k].col == c; ++k) sum += sorted[k].value;
        cols.push_back(c);
        vals.push_back(sum);
        ++offsets[r + 1];
    }
    for (index_t i = 0; i < nrows_; ++i) offsets[i + 1] += offsets[i];
    return SparseMatrix(nrows_, ncols_, std::move(offsets), std::move(cols), std::move(vals));
}

std::vector<double> matvec(const SparseMatrix& m, std::span<const double> x) {
    std::vector<double> y(m.rows());
    m.multiply(x, y);
    return y;
}

std::vector<double> matvec_transpose(const SparseMatrix& m, std::span<const double> x) {
    std::vector<double> y(m.cols());
    m.multiply_transpose(x, y);
    return y;
}

double norm(const SparseMatrix& m, NormKind kind) {
    const auto offsets = m.row_offsets();
    const auto cols = m.col_indices();
    const auto vals = m.values();
    switch (kind) {
    case NormKind::one: {
        std::vector<double> colsum(m.cols(), 0.0);
        for (index_t k = 0; k < vals.size(); ++k) colsum[cols[k]] += std::abs(vals[k]);
        return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
    }
    case NormKind::inf: {
        double best = 0.0;
        for (index_t i = 0; i < m.rows(); ++i) {
            double s = 0.0;
            for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) s += std::abs(vals[k]);
            best = std::max(best, s);
        }
        return best;
    }
    case NormKind::frobenius: {
        double s = 0.0;
        for (double v : vals) s += v * v;
        return std::sqrt(s);
    }
    }
    return 0.0;
}

std::pair<double, double> gershgorin_interval(const SparseMatrix& m) {
    if (!m.is_square()) throw DimensionError("gershgorin_interval needs a square matrix");
    if (m.rows() == 0) return {0.0, 0.0};
    const auto offsets = m.row_offsets();
    const auto cols = m.col_indices();
    const auto vals = m.values();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (index_t i = 0; i < m.rows(); ++i) {
        double diag = 0.0;
        double radius = 0.0;
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
            if (cols[k] == i)
                diag = vals[k];
            else
                radius += std::abs(vals[k]);
        }
        lo = std::min(lo, diag - radius);
        hi = std::max(hi, diag + radius);
    }
    return {lo, hi};
}

} // namespace logdet
