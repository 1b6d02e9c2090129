#pragma once

#include "logdet/sparse_matrix.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace logdet {

enum class DenseMode {
    cholesky_pd,  ///< log det via 2 sum log L_ii; symmetric positive definite input
    lu_abs,       ///< log |det| via partial-pivot LU; any non-singular input
};

inline constexpr std::size_t dense_oracle_limit = 4096;

Eigen::MatrixXd to_dense(const SparseMatrix& m);

/// Exact log-determinant by dense factorization.
/// cholesky_pd throws NotPositiveDefinite on a non-positive pivot, lu_abs on a zero pivot.
double exact_logdet_dense(const Eigen::MatrixXd& m, DenseMode mode);

/// Densifies first; refuses matrices larger than `max_dim` with PreconditionError.
double exact_logdet_dense(const SparseMatrix& m, DenseMode mode,
                          std::size_t max_dim = dense_oracle_limit);

/// Exact log det of a sparse symmetric positive definite matrix via a
/// supernodal sparse Cholesky factorization (CHOLMOD) with fill-reducing
/// ordering. Intended for oracle checks beyond dense scale.
double exact_logdet_sparse(const SparseMatrix& m);

} // namespace logdet
