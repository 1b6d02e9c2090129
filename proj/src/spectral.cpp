#include "logdet/spectral.hpp"

#include "logdet/errors.hpp"
#include "logdet/trace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace logdet {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void normalize(std::span<double> v) {
    const double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
}

// Stream index reserved for iteration start vectors, far from sample indices.
constexpr std::uint64_t start_vector_stream = 0xffff'ffff'0000'0000ull;

} // namespace

void IterativeConfig::validate() const {
    if (max_iterations < 1) throw PreconditionError("max_iterations must be at least 1");
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0))
        throw PreconditionError("rel_tolerance must lie in (0, 1)");
}

IterativeConfig cg_defaults(std::size_t d) {
    return {std::max<std::size_t>(10 * d, 1), 1e-8, 0};
}

double sigma_max_norm_bound(const SparseMatrix& c) {
    return std::sqrt(norm(c, NormKind::one) * norm(c, NormKind::inf));
}

EigenEstimate power_iteration(const LinearOperator& m, const IterativeConfig& cfg) {
    cfg.validate();
    const std::size_t d = m.dim;
    if (d == 0) throw PreconditionError("power_iteration on an empty operator");
    auto v = rademacher_vector({cfg.seed, start_vector_stream}, d);
    normalize(v);
    std::vector<double> mv(d);

    EigenEstimate est;
    double previous = 0.0;
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        m.apply(v, mv);
        const double rayleigh = dot(v, mv);
        const double mv_norm = std::sqrt(dot(mv, mv));
        if (!std::isfinite(rayleigh)) throw NumericalError("power iteration diverged");
        est.raw = rayleigh;
        est.iterations = it;
        if (mv_norm == 0.0) {  // v in the null space; the operator is zero along v
            est.converged = true;
            break;
        }
        if (it > 1 && std::abs(rayleigh - previous) <= cfg.rel_tolerance * std::abs(rayleigh)) {
            est.converged = true;
            break;
        }
        previous = rayleigh;
        for (std::size_t i = 0; i < d; ++i) v[i] = mv[i] / mv_norm;
    }
    est.value = est.raw * power_inflation;
    return est;
}

EigenEstimate power_iteration(const SparseMatrix& m, const IterativeConfig& cfg) {
    return power_iteration(as_operator(m), cfg);
}

CgResult conjugate_gradient(const LinearOperator& m, std::span<const double> b,
                            const IterativeConfig& cfg) {
    cfg.validate();
    const std::size_t d = m.dim;
    if (b.size() != d)
        throw DimensionError("conjugate_gradient: rhs has " + std::to_string(b.size()) +
                             " entries, operator dimension is " + std::to_string(d));
    CgResult res;
    res.x.assign(d, 0.0);
    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        res.converged = true;
        return res;
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> p(r);
    std::vector<double> q(d);
    double rr = dot(r, r);
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        m.apply(p, q);
        const double curvature = dot(p, q);
        if (!(curvature > 0.0))
            throw NumericalError("conjugate_gradient breakdown: non-positive curvature, matrix is not positive definite");
        const double alpha = rr / curvature;
        for (std::size_t i = 0; i < d; ++i) {
            res.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        const double rr_new = dot(r, r);
        res.iterations = it;
        res.relative_residual = std::sqrt(rr_new) / b_norm;
        if (res.relative_residual <= cfg.rel_tolerance) {
            res.converged = true;
            break;
        }
        const double beta = rr_new / rr;
        for (std::size_t i = 0; i < d; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_new;
    }

    if (res.converged) {
        // The recurrence residual drifts from the true one; confirm the contract.
        m.apply(res.x, q);
        double true_rr = 0.0;
        for (std::size_t i = 0; i < d; ++i) true_rr += (b[i] - q[i]) * (b[i] - q[i]);
        res.relative_residual = std::sqrt(true_rr) / b_norm;
        res.converged = res.relative_residual <= cfg.rel_tolerance;
    }
    return res;
}

CgResult conjugate_gradient(const SparseMatrix& m, std::span<const double> b,
                            const IterativeConfig& cfg) {
    return conjugate_gradient(as_operator(m), b, cfg);
}

EigenEstimate sigma_min_inverse_power(const LinearOperator& m, const IterativeConfig& cfg,
                                      const IterativeConfig& solver) {
    cfg.validate();
    const std::size_t d = m.dim;
    if (d == 0) throw PreconditionError("inverse power iteration on an empty operator");
    auto v = rademacher_vector({cfg.seed, start_vector_stream + 1}, d);
    normalize(v);

    EigenEstimate est;
    bool solves_converged = true;
    double previous = 0.0;
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        auto solve = conjugate_gradient(m, v, solver);
        solves_converged = solves_converged && solve.converged;
        // v^T M^{-1} v is the Rayleigh quotient of M^{-1}; its reciprocal
        // approaches lambda_min from above.
        const double mu = dot(v, solve.x);
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw NumericalError("inverse power iteration: operator is not positive definite");
        const double estimate = 1.0 / mu;
        est.raw = estimate;
        est.iterations = it;
        if (it > 1 && std::abs(estimate - previous) <= cfg.rel_tolerance * estimate) {
            est.converged = solves_converged;
            break;
        }
        previous = estimate;
        v = std::move(solve.x);
        normalize(v);
    }
    est.value = est.raw * inverse_power_deflation;
    return est;
}

EigenEstimate sigma_min_inverse_power(const SparseMatrix& m, const IterativeConfig& cfg) {
    return sigma_min_inverse_power(as_operator(m), cfg, cg_defaults(m.rows()));
}

} // namespace logdet
