#pragma once

#include "logdet/linear_operator.hpp"
#include "logdet/sparse_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace logdet {

struct IterativeConfig {
    std::size_t max_iterations = 1000;
    double rel_tolerance = 1e-6;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Defaults for conjugate_gradient: rel_tolerance 1e-8, 10*d iterations.
IterativeConfig cg_defaults(std::size_t d);

struct EigenEstimate {
    double value = 0.0;      ///< safety-adjusted estimate
    double raw = 0.0;        ///< last Rayleigh quotient before adjustment
    std::size_t iterations = 0;
    bool converged = false;
};

inline constexpr double power_inflation = 1.01;
inline constexpr double inverse_power_deflation = 0.99;

/// sqrt(||C||_1 ||C||_inf); an upper bound on the largest singular value.
double sigma_max_norm_bound(const SparseMatrix& c);

/// Largest eigenvalue of a symmetric positive semi-definite operator by power
/// iteration from a Rademacher start, inflated by power_inflation.
EigenEstimate power_iteration(const LinearOperator& m, const IterativeConfig& cfg);
EigenEstimate power_iteration(const SparseMatrix& m, const IterativeConfig& cfg);

struct CgResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Solves M x = b for symmetric positive definite M starting from x = 0.
/// Throws NumericalError when non-positive curvature shows M is not PD.
CgResult conjugate_gradient(const LinearOperator& m, std::span<const double> b,
                            const IterativeConfig& cfg);
CgResult conjugate_gradient(const SparseMatrix& m, std::span<const double> b,
                            const IterativeConfig& cfg);

/// Smallest eigenvalue of a symmetric positive definite operator by inverse
/// power iteration (each step a CG solve), deflated by inverse_power_deflation.
EigenEstimate sigma_min_inverse_power(const LinearOperator& m, const IterativeConfig& cfg,
                                      const IterativeConfig& solver);
EigenEstimate sigma_min_inverse_power(const SparseMatrix& m, const IterativeConfig& cfg);

} // namespace logdet
