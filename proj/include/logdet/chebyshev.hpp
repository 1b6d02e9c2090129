#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace logdet {

/// Degree-n Chebyshev interpolant p(x) = sum_j c_j T_j(x) on [-1, 1].
///
/// When `delta` is set the interpolant represents a function on
/// [delta, 1 - delta]; evaluate() then takes points in that interval and maps
/// them to [-1, 1] with x = (2*lambda - 1) / (1 - 2*delta).
class ChebyshevInterpolant {
public:
    explicit ChebyshevInterpolant(std::vector<double> coefficients,
                                  std::optional<double> delta = std::nullopt);

    std::size_t degree() const noexcept { return coefficients_.size() - 1; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    std::optional<double> delta() const noexcept { return delta_; }

private:
    std::vector<double> coefficients_;
    std::optional<double> delta_;
};

/// Interpolation nodes cos(pi (k + 1/2) / (n + 1)), k = 0..n.
std::vector<double> chebyshev_nodes(std::size_t n);

/// Coefficients from the direct node sums:
///   c_0 = 1/(n+1) sum_k f(x_k),  c_i = 2/(n+1) sum_k f(x_k) T_i(x_k).
/// Throws NumericalError if f is not finite at a node.
ChebyshevInterpolant interpolate(const std::function<double(double)>& f, std::size_t n);

/// Forward three-term recurrence T_{j+1} = 2x T_j - T_{j-1}.
/// Throws PreconditionError outside the interpolant's domain.
double evaluate(const ChebyshevInterpolant& p, double x);

/// Maps lambda in [delta, 1 - delta] to [-1, 1] and back.
double to_unit_interval(double delta, double lambda);
double from_unit_interval(double delta, double x);

/// Interpolant of x -> log(1 - ((1 - 2 delta) x + 1) / 2) on [-1, 1], tagged
/// with delta so that evaluate(p, lambda) approximates log(1 - lambda).
ChebyshevInterpolant logdet_interpolant(double delta, std::size_t n);

/// Uniform error bound for logdet_interpolant on [delta, 1 - delta].
struct ErrorEnvelope {
    double rate;      ///< K, the Bernstein-ellipse parameter (> 1)
    double analytic;  ///< M = 5 log(2 (1/delta - 1))
    double bound;     ///< 4M / ((K - 1) K^n)
};

double convergence_rate(double delta);
ErrorEnvelope error_envelope(double delta, std::size_t n);

/// Sufficient condition for logdet_interpolant(delta, n) to be negative on
/// [delta, 1 - delta]: envelope bound <= log(1 / (1 - delta)).
bool negativity_holds(double delta, std::size_t n);

} // namespace logdet
