#pragma once

#include "logdet/sparse_matrix.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace logdet {

/// Square linear map y = Op(x) on R^dim. `apply` must be safe to call
/// concurrently on distinct output buffers; it must not read y.
struct LinearOperator {
    std::size_t dim = 0;
    std::function<void(std::span<const double> x, std::span<double> y)> apply;
};

/// Wraps a square matrix. The matrix must outlive the operator.
LinearOperator as_operator(const SparseMatrix& m);

/// x -> scale * C^T (C x), without forming C^T C. C must outlive the operator.
LinearOperator normal_operator(const SparseMatrix& c, double scale = 1.0);

/// x -> alpha * x + beta * Op(x).
LinearOperator affine(LinearOperator op, double alpha, double beta);

} // namespace logdet
