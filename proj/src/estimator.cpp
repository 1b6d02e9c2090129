#include "logdet/estimator.hpp"

#include "logdet/chebyshev.hpp"
#include "logdet/errors.hpp"
#include "logdet/trace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace logdet {

namespace {

using steady = std::chrono::steady_clock;

void check_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw PreconditionError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw PreconditionError("delta must lie in (0, 1/2), got " + std::to_string(delta));
}

SamplingOptions sampling(const EstimatorParams& params) {
    return {params.m, params.seed, params.threads};
}

// Applies gamma -> scale * gamma + shift to the estimate and every sample.
void transform(LogDetEstimate& est, double scale, double shift) {
    est.gamma = scale * est.gamma + shift;
    for (double& v : est.per_sample) v = scale * v + shift;
}

double clamp_delta(double delta) {
    if (!(delta >= min_delta))
        throw PreconditionError("delta = " + std::to_string(delta) +
                                " underflows: the spectrum bounds imply a condition number too "
                                "large to estimate; supply tighter bounds");
    return std::min(delta, max_delta);
}

} // namespace

void EstimatorParams::validate() const {
    if (m < 1) throw PreconditionError("sample count m must be at least 1");
    if (n < 1) throw PreconditionError("polynomial degree n must be at least 1");
}

void SpectrumBounds::validate() const {
    if (!(sigma_min > 0.0) || !std::isfinite(sigma_min))
        throw PreconditionError("sigma_min must be positive and finite");
    if (!(sigma_max >= sigma_min) || !std::isfinite(sigma_max))
        throw PreconditionError("sigma_max must be finite and at least sigma_min");
}

LogDetEstimate logdet_pd_unit(const LinearOperator& b, double delta, const EstimatorParams& params) {
    check_delta(delta);
    params.validate();
    const auto start = steady::now();

    const auto p = logdet_interpolant(delta, params.n);
    // T_j must act on X = (2A - I) / (1 - 2 delta) with A = I - B, whose
    // spectrum is [-1, 1] when B's is [delta, 1 - delta].
    const double inv = 1.0 / (1.0 - 2.0 * delta);
    const auto x = affine(b, inv, -2.0 * inv);
    auto trace = chebyshev_trace(x, p, sampling(params));

    LogDetEstimate est;
    est.gamma = trace.value;
    est.per_sample = std::move(trace.per_sample);
    est.params = params;
    est.delta = delta;
    est.kappa = (1.0 - delta) / delta;
    est.elapsed = steady::now() - start;
    return est;
}

LogDetEstimate logdet_pd_unit(const SparseMatrix& b, double delta, const EstimatorParams& params) {
    if (!b.is_square()) throw DimensionError("logdet_pd_unit needs a square matrix");
    check_delta(delta);
    const auto [lo, hi] = gershgorin_interval(b);
    auto est = logdet_pd_unit(as_operator(b), delta, params);
    if (lo < delta || hi > 1.0 - delta) {
        std::ostringstream msg;
        msg << "Gershgorin interval [" << lo << ", " << hi << "] is not inside [" << delta << ", "
            << 1.0 - delta << "]; the estimate is only valid if the spectrum is";
        est.warnings.push_back(msg.str());
    }
    return est;
}

LogDetEstimate logdet_general(const SparseMatrix& c, const SpectrumBounds& bounds,
                              const EstimatorParams& params) {
    if (!c.is_square()) throw DimensionError("logdet_general needs a square matrix");
    bounds.validate();
    params.validate();
    const auto start = steady::now();

    const double lo2 = bounds.sigma_min * bounds.sigma_min;
    const double hi2 = bounds.sigma_max * bounds.sigma_max;
    const double total = lo2 + hi2;
    if (!std::isfinite(total) || total == 0.0)
        throw PreconditionError("sigma_min^2 + sigma_max^2 is not representable");
    const double delta = clamp_delta(lo2 / total);

    auto est = logdet_pd_unit(normal_operator(c, 1.0 / total), delta, params);
    const double d = static_cast<double>(c.rows());
    transform(est, 0.5, 0.5 * d * std::log(total));
    est.kappa = bounds.kappa();
    est.elapsed = steady::now() - start;
    return est;
}

LogDetEstimate logdet_pd(const SparseMatrix& b, const SpectrumBounds& bounds,
                         const EstimatorParams& params) {
    if (!b.is_square()) throw DimensionError("logdet_pd needs a square matrix");
    bounds.validate();
    params.validate();
    const auto start = steady::now();

    const double total = bounds.sigma_min + bounds.sigma_max;
    const double delta = clamp_delta(bounds.sigma_min / total);
    const double inv_total = 1.0 / total;
    const LinearOperator scaled{b.rows(), [&b, inv_total](std::span<const double> x, std::span<double> y) {
                                    b.multiply(x, y);
                                    for (double& v : y) v *= inv_total;
                                }};
    auto est = logdet_pd_unit(scaled, delta, params);
    transform(est, 1.0, static_cast<double>(b.rows()) * std::log(total));
    est.kappa = bounds.kappa();
    est.elapsed = steady::now() - start;
    return est;
}

LogDetEstimate logdet_taylor_baseline(const LinearOperator& b, double delta,
                                      const EstimatorParams& params) {
    check_delta(delta);
    params.validate();
    const auto start = steady::now();
    const std::size_t d = b.dim;
    const std::size_t n = params.n;

    auto trace = sample_quadratic_forms(
        d,
        [&b, d, n](std::span<const double> v) {
            // w_k = A^k v with A = I - B; accumulate v^T w_k / k.
            std::vector<double> w(v.begin(), v.end());
            std::vector<double> bw(d);
            double sum = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                b.apply(w, bw);
                double vw = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    w[i] -= bw[i];
                    vw += v[i] * w[i];
                }
                sum -= vw / static_cast<double>(k);
            }
            return sum;
        },
        sampling(params));

    LogDetEstimate est;
    est.gamma = trace.value;
    est.per_sample = std::move(trace.per_sample);
    est.params = params;
    est.delta = delta;
    est.kappa = (1.0 - delta) / delta;
    est.elapsed = steady::now() - start;
    return est;
}

LogDetEstimate logdet_taylor_baseline(const SparseMatrix& b, double delta,
                                      const EstimatorParams& params) {
    return logdet_taylor_baseline(as_operator(b), delta, params);
}

EstimatorParams theorem1_params(double delta, double eps, double zeta) {
    check_delta(delta);
    check_unit(eps, "eps");
    check_unit(zeta, "zeta");
    EstimatorParams p;
    p.m = ceil_count(54.0 / (eps * eps) * std::log(2.0 / zeta));
    const double inner = 20.0 / eps * (std::sqrt(2.0 / delta - 1.0) - 1.0) *
                         std::log(2.0 * (1.0 / delta - 1.0)) / std::log(1.0 / (1.0 - delta));
    const double degree = std::log(inner) / std::log(convergence_rate(delta));
    p.n = std::max<std::size_t>(1, ceil_count(std::max(degree, 0.0)));
    return p;
}

double sample_count_bound(double eps, double kappa, double zeta) {
    check_unit(eps, "eps");
    check_unit(zeta, "zeta");
    if (!(kappa >= 1.0)) throw PreconditionError("kappa must be at least 1");
    const double l = std::log1p(kappa * kappa);
    return 14.0 / (eps * eps) * l * l * std::log(2.0 / zeta);
}

double degree_bound(double eps, double kappa) {
    check_unit(eps, "eps");
    if (!(kappa >= 1.0)) throw PreconditionError("kappa must be at least 1");
    const double k2 = kappa * kappa;
    const double s = std::sqrt(2.0 * k2 + 1.0);
    const double inner = 20.0 / eps * (s - 1.0) * std::log1p(k2) * std::log(2.0 * k2) / std::log1p(1.0 / k2);
    return std::log(inner) / std::log((s + 1.0) / (s - 1.0));
}

EstimatorParams theorem2_params(double eps, double kappa, double zeta) {
    EstimatorParams p;
    p.m = std::max<std::size_t>(1, ceil_count(sample_count_bound(eps, kappa, zeta)));
    p.n = std::max<std::size_t>(1, ceil_count(std::max(degree_bound(eps, kappa), 0.0)));
    return p;
}

EstimatorParams corollary1_params(double eps, double zeta, const SpectrumBounds& bounds) {
    bounds.validate();
    check_unit(eps, "eps");
    if (!(bounds.sigma_max < 1.0))
        throw PreconditionError(bounds.sigma_min > 1.0
                                    ? "corollary1_params needs sigma_max < 1; sigma_min > 1 here, use corollary2_params"
                                    : "corollary1_params needs sigma_max < 1; spectrum straddles 1, only the additive bound applies");
    const double eps0 = eps * std::log(1.0 / bounds.sigma_max);
    if (!(eps0 < 1.0))
        throw PreconditionError("corollary1_params needs eps < 2 / log(1 / sigma_max^2)");
    return theorem2_params(eps0, bounds.kappa(), zeta);
}

EstimatorParams corollary2_params(double eps, double zeta, const SpectrumBounds& bounds) {
    bounds.validate();
    check_unit(eps, "eps");
    if (!(bounds.sigma_min > 1.0))
        throw PreconditionError(bounds.sigma_max < 1.0
                                    ? "corollary2_params needs sigma_min > 1; sigma_max < 1 here, use corollary1_params"
                                    : "corollary2_params needs sigma_min > 1; spectrum straddles 1, only the additive bound applies");
    const double eps0 = eps * std::log(bounds.sigma_min);
    if (!(eps0 < 1.0))
        throw PreconditionError("corollary2_params needs eps < 2 / log(sigma_min^2)");
    return theorem2_params(eps0, bounds.kappa(), zeta);
}

} // namespace logdet
