#pragma once

#include "logdet/estimator.hpp"
#include "logdet/sparse_matrix.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace logdet {

/// rows x cols lattice where each site couples to its four neighbours.
///
/// Sign convention: the precision matrix is J = I + rho * Adjacency, so rho is
/// literally the off-diagonal precision entry. Negative rho gives positively
/// correlated neighbours. |rho| < 1/4 keeps J diagonally dominant.
struct LatticeSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double rho = 0.0;

    std::size_t sites() const noexcept { return rows * cols; }
    void validate() const;
};

SparseMatrix lattice_precision(const LatticeSpec& spec);

/// One field sample after `sweeps` raster-order Gibbs sweeps from x = 0:
/// x_i | rest ~ Normal(-rho * sum_{j~i} x_j, 1).
std::vector<double> gibbs_sample(const LatticeSpec& spec, std::size_t sweeps, std::uint64_t seed);

struct LikelihoodPoint {
    double rho;
    double loglik;  ///< log det J(rho) - x^T J(rho) x, constant dropped
};

/// Stochastic scan: log det J(rho) from the positive definite estimator with
/// eigenvalue bounds [1 - 4|rho|, 1 + 4|rho|] and the same seed at every rho.
std::vector<LikelihoodPoint> loglik_scan(std::span<const double> sample, std::size_t rows,
                                         std::size_t cols, std::span<const double> rho_grid,
                                         const EstimatorParams& params);

/// Same scan with the exact sparse Cholesky log-determinant.
std::vector<LikelihoodPoint> loglik_scan_exact(std::span<const double> sample, std::size_t rows,
                                               std::size_t cols, std::span<const double> rho_grid);

std::vector<double> rho_grid(double first, double last, double step);
double argmax_rho(std::span<const LikelihoodPoint> scan);

/// (log det of the Schur complement J_o - J_oz J_z^-1 J_zo,
///  log det J - log det J_z), both by dense factorization.
std::pair<double, double> marginal_logdet_identity_check(const Eigen::MatrixXd& j,
                                                         std::span<const std::size_t> observed);

} // namespace logdet
