#include "logdet/trace.hpp"

#include "logdet/errors.hpp"
#include "logdet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace logdet {

void fill_rademacher(RademacherStream stream, std::span<double> out) {
    // seed_seq and mt19937_64 are fully specified by the standard, so the
    // sign pattern is identical on every conforming platform.
    std::seed_seq seq{static_cast<std::uint32_t>(stream.seed),
                      static_cast<std::uint32_t>(stream.seed >> 32),
                      static_cast<std::uint32_t>(stream.stream_index),
                      static_cast<std::uint32_t>(stream.stream_index >> 32)};
    std::mt19937_64 engine(seq);
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t bits = engine();
        for (int b = 0; b < 64 && i < out.size(); ++b, ++i, bits >>= 1)
            out[i] = (bits & 1u) ? 1.0 : -1.0;
    }
}

std::vector<double> rademacher_vector(RademacherStream stream, std::size_t d) {
    std::vector<double> v(d);
    fill_rademacher(stream, v);
    return v;
}

TraceEstimate sample_quadratic_forms(std::size_t d, const QuadraticForm& form,
                                     const SamplingOptions& options) {
    if (options.samples < 1) throw PreconditionError("sample count must be at least 1");
    if (d < 1) throw PreconditionError("dimension must be at least 1");

    TraceEstimate est;
    est.samples = options.samples;
    est.per_sample.assign(options.samples, 0.0);
    parallel_for(options.samples, options.threads, [&](std::size_t i) {
        thread_local std::vector<double> probe;
        probe.resize(d);
        fill_rademacher({options.seed, i}, probe);
        const double value = form(probe);
        if (!std::isfinite(value))
            throw NumericalError("sample " + std::to_string(i) + " produced a non-finite value");
        est.per_sample[i] = value;
    });
    est.value = pairwise_sum(est.per_sample) / static_cast<double>(options.samples);
    return est;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

TraceEstimate hutchinson_trace(const LinearOperator& a, const SamplingOptions& options) {
    const std::size_t d = a.dim;
    return sample_quadratic_forms(
        d,
        [&a, d](std::span<const double> z) {
            std::vector<double> az(d);
            a.apply(z, az);
            return dot(z, az);
        },
        options);
}

TraceEstimate chebyshev_trace(const LinearOperator& a, const ChebyshevInterpolant& p,
                              const SamplingOptions& options) {
    const std::size_t d = a.dim;
    const auto c = p.coefficients();
    return sample_quadratic_forms(
        d,
        [&a, c, d](std::span<const double> v) {
            std::vector<double> u(d);
            for (std::size_t i = 0; i < d; ++i) u[i] = c[0] * v[i];
            if (c.size() > 1) {
                std::vector<double> w0(v.begin(), v.end());
                std::vector<double> w1(d);
                std::vector<double> w2(d);
                a.apply(v, w1);
                for (std::size_t i = 0; i < d; ++i) u[i] += c[1] * w1[i];
                for (std::size_t j = 2; j < c.size(); ++j) {
                    a.apply(w1, w2);
                    const double cj = c[j];
                    for (std::size_t i = 0; i < d; ++i) {
                        w2[i] = 2.0 * w2[i] - w0[i];
                        u[i] += cj * w2[i];
                    }
                    std::swap(w0, w1);
                    std::swap(w1, w2);
                }
            }
            return dot(v, u);
        },
        options);
}

std::size_t ceil_count(double x) {
    if (!std::isfinite(x) || x < 0.0) throw NumericalError("parameter bound is not a finite count");
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(x));
}

std::size_t trace_sample_bound(double eps0, double zeta0) {
    if (!(eps0 > 0.0 && eps0 < 1.0) || !(zeta0 > 0.0 && zeta0 < 1.0))
        throw PreconditionError("trace_sample_bound needs eps0, zeta0 in (0, 1)");
    return ceil_count(6.0 / (eps0 * eps0) * std::log(2.0 / zeta0));
}

} // namespace logdet
