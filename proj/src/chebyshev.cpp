#include "logdet/chebyshev.hpp"

#include "logdet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace logdet {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw PreconditionError("delta must lie in (0, 1/2), got " + std::to_string(delta));
}

} // namespace

ChebyshevInterpolant::ChebyshevInterpolant(std::vector<double> coefficients,
                                           std::optional<double> delta)
    : coefficients_(std::move(coefficients)), delta_(delta) {
    if (coefficients_.empty()) throw PreconditionError("interpolant needs at least one coefficient");
    if (delta_) check_delta(*delta_);
}

std::vector<double> chebyshev_nodes(std::size_t n) {
    std::vector<double> nodes(n + 1);
    const double denom = static_cast<double>(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        nodes[k] = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) / denom);
    return nodes;
}

ChebyshevInterpolant interpolate(const std::function<double(double)>& f, std::size_t n) {
    const auto nodes = chebyshev_nodes(n);
    std::vector<double> fx(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        fx[k] = f(nodes[k]);
        if (!std::isfinite(fx[k]))
            throw NumericalError("function is not finite at node " + std::to_string(nodes[k]));
    }

    // T_i(x_k) for all nodes at once, advanced by the three-term recurrence.
    std::vector<double> t_prev(n + 1, 1.0);
    std::vector<double> t_curr(nodes);
    std::vector<double> coefficients(n + 1, 0.0);
    const double scale = 2.0 / static_cast<double>(n + 1);

    double c0 = 0.0;
    for (std::size_t k = 0; k <= n; ++k) c0 += fx[k];
    coefficients[0] = c0 / static_cast<double>(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= n; ++k) s += fx[k] * t_curr[k];
        coefficients[i] = scale * s;
        for (std::size_t k = 0; k <= n; ++k) {
            const double next = 2.0 * nodes[k] * t_curr[k] - t_prev[k];
            t_prev[k] = t_curr[k];
            t_curr[k] = next;
        }
    }
    return ChebyshevInterpolant(std::move(coefficients));
}

double to_unit_interval(double delta, double lambda) {
    return (2.0 * lambda - 1.0) / (1.0 - 2.0 * delta);
}

double from_unit_interval(double delta, double x) {
    return ((1.0 - 2.0 * delta) * x + 1.0) / 2.0;
}

double evaluate(const ChebyshevInterpolant& p, double x) {
    double t;
    if (const auto delta = p.delta()) {
        // Tolerate rounding in callers that compute the interval end points.
        constexpr double slack = 1e-12;
        if (!(x >= *delta - slack && x <= 1.0 - *delta + slack))
            throw PreconditionError("evaluation point " + std::to_string(x) + " outside [delta, 1-delta]");
        t = std::clamp(to_unit_interval(*delta, x), -1.0, 1.0);
    } else {
        if (!(x >= -1.0 && x <= 1.0))
            throw PreconditionError("evaluation point " + std::to_string(x) + " outside [-1, 1]");
        t = x;
    }

    const auto c = p.coefficients();
    double result = c[0];
    if (c.size() == 1) return result;
    double t_prev = 1.0;
    double t_curr = t;
    result += c[1] * t_curr;
    for (std::size_t j = 2; j < c.size(); ++j) {
        const double t_next = 2.0 * t * t_curr - t_prev;
        result += c[j] * t_next;
        t_prev = t_curr;
        t_curr = t_next;
    }
    return result;
}

ChebyshevInterpolant logdet_interpolant(double delta, std::size_t n) {
    check_delta(delta);
    if (n < 1) throw PreconditionError("logdet_interpolant needs degree n >= 1");
    auto raw = interpolate([delta](double x) { return std::log(1.0 - from_unit_interval(delta, x)); }, n);
    const auto c = raw.coefficients();
    return ChebyshevInterpolant(std::vector<double>(c.begin(), c.end()), delta);
}

double convergence_rate(double delta) {
    // The formula itself stays finite at delta = 1/2, so accept the closed end.
    if (!(delta > 0.0 && delta <= 0.5))
        throw PreconditionError("delta must lie in (0, 1/2], got " + std::to_string(delta));
    const double a = std::sqrt(2.0 - delta);
    const double b = std::sqrt(delta);
    return (a + b) / (a - b);
}

ErrorEnvelope error_envelope(double delta, std::size_t n) {
    const double k = convergence_rate(delta);
    const double m = 5.0 * std::log(2.0 * (1.0 / delta - 1.0));
    const double bound = 4.0 * m / ((k - 1.0) * std::pow(k, static_cast<double>(n)));
    return {k, m, bound};
}

bool negativity_holds(double delta, std::size_t n) {
    return error_envelope(delta, n).bound <= std::log(1.0 / (1.0 - delta));
}

} // namespace logdet
