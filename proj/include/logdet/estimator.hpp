#pragma once

#include "logdet/linear_operator.hpp"
#include "logdet/sparse_matrix.hpp"
#include "logdet/trace.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace logdet {

/// Sample count m, Chebyshev degree n and RNG seed for one estimator run.
struct EstimatorParams {
    std::size_t m = 30;
    std::size_t n = 15;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  ///< 0 = default_thread_count(); never affects the result

    void validate() const;
};

/// Bracket [sigma_min, sigma_max] on the singular values of C (or on the
/// eigenvalues, for the symmetric positive definite path).
struct SpectrumBounds {
    double sigma_min = 0.0;
    double sigma_max = 0.0;

    double kappa() const noexcept { return sigma_max / sigma_min; }
    void validate() const;
};

struct LogDetEstimate {
    double gamma = 0.0;
    EstimatorParams params;
    double delta = 0.0;
    double kappa = 0.0;
    std::chrono::duration<double> elapsed{0.0};
    std::vector<double> per_sample;     ///< in the units of gamma
    std::vector<std::string> warnings;  ///< precondition doubts that did not abort the run
};

/// Upper clamp on delta; the interpolation interval must stay non-degenerate.
inline constexpr double max_delta = 0.5 - 1e-9;
/// Below this delta the bounds are too loose to be useful.
inline constexpr double min_delta = 1e-12;

/// Estimates log det B for symmetric B with spectrum in [delta, 1 - delta]
/// using the Chebyshev interpolant of log(1 - x) and Hutchinson sampling on
/// A = I - B. Cost O(m n nnz(B)).
LogDetEstimate logdet_pd_unit(const LinearOperator& b, double delta, const EstimatorParams& params);
/// As above; additionally warns when B's Gershgorin interval leaks outside [delta, 1 - delta].
LogDetEstimate logdet_pd_unit(const SparseMatrix& b, double delta, const EstimatorParams& params);

/// Estimates log |det C| for non-singular square C with singular values in
/// `bounds`, through B = C^T C / (sigma_min^2 + sigma_max^2) applied as an
/// operator, then Gamma = (Gamma_B + d log(sigma_min^2 + sigma_max^2)) / 2.
LogDetEstimate logdet_general(const SparseMatrix& c, const SpectrumBounds& bounds,
                              const EstimatorParams& params);

/// Symmetric positive definite shortcut: eigenvalues of B in
/// [bounds.sigma_min, bounds.sigma_max]; rescales by their sum instead of
/// squaring the condition number.
LogDetEstimate logdet_pd(const SparseMatrix& b, const SpectrumBounds& bounds,
                         const EstimatorParams& params);

/// Same sampling scheme with the truncated series log(1 - x) = -sum_{k<=n} x^k / k.
LogDetEstimate logdet_taylor_baseline(const LinearOperator& b, double delta,
                                      const EstimatorParams& params);
LogDetEstimate logdet_taylor_baseline(const SparseMatrix& b, double delta,
                                      const EstimatorParams& params);

/// Multiplicative guarantee for the unit-interval path:
///   m = ceil(54 eps^-2 log(2/zeta)),
///   n = ceil(log(20/eps (sqrt(2/delta - 1) - 1) log(2(1/delta - 1)) / log(1/(1-delta))) / log K).
EstimatorParams theorem1_params(double delta, double eps, double zeta);

/// 14 eps^-2 (log(1 + kappa^2))^2 log(2/zeta)
double sample_count_bound(double eps, double kappa, double zeta);
/// log(20/eps (s - 1) log(1 + kappa^2) log(2 kappa^2) / log(1 + kappa^-2)) / log((s + 1)/(s - 1)),
/// s = sqrt(2 kappa^2 + 1)
double degree_bound(double eps, double kappa);

/// Additive guarantee |log|det C| - Gamma| <= eps d with probability 1 - zeta.
EstimatorParams theorem2_params(double eps, double kappa, double zeta);

/// Multiplicative guarantee when sigma_max < 1: eps0 = eps log(1/sigma_max).
EstimatorParams corollary1_params(double eps, double zeta, const SpectrumBounds& bounds);
/// Multiplicative guarantee when sigma_min > 1: eps0 = eps log(sigma_min).
EstimatorParams corollary2_params(double eps, double zeta, const SpectrumBounds& bounds);

} // namespace logdet
