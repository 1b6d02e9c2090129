#include "logdet/linear_operator.hpp"

#include "logdet/errors.hpp"

#include <string>
#include <vector>

namespace logdet {

LinearOperator as_operator(const SparseMatrix& m) {
    if (!m.is_square())
        throw DimensionError("operator needs a square matrix, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    return {m.rows(), [&m](std::span<const double> x, std::span<double> y) { m.multiply(x, y); }};
}

LinearOperator normal_operator(const SparseMatrix& c, double scale) {
    if (!c.is_square()) throw DimensionError("normal_operator needs a square matrix");
    return {c.cols(), [&c, scale](std::span<const double> x, std::span<double> y) {
                thread_local std::vector<double> tmp;
                tmp.resize(c.rows());
                c.multiply(x, tmp);
                c.multiply_transpose(tmp, y);
                if (scale != 1.0)
                    for (double& v : y) v *= scale;
            }};
}

LinearOperator affine(LinearOperator op, double alpha, double beta) {
    const std::size_t dim = op.dim;
    return {dim, [inner = std::move(op.apply), alpha, beta](std::span<const double> x,
                                                            std::span<double> y) {
                inner(x, y);
                for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * x[i] + beta * y[i];
            }};
}

} // namespace logdet
