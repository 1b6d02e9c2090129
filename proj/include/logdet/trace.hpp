#pragma once

#include "logdet/chebyshev.hpp"
#include "logdet/linear_operator.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace logdet {

/// Addresses one independent Rademacher vector: sample `stream_index` of the
/// run seeded with `seed`. The same pair always yields the same vector.
struct RademacherStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
};

void fill_rademacher(RademacherStream stream, std::span<double> out);
std::vector<double> rademacher_vector(RademacherStream stream, std::size_t d);

struct TraceEstimate {
    double value = 0.0;        ///< mean of per_sample (pairwise summation)
    std::size_t samples = 0;
    std::vector<double> per_sample;
};

struct SamplingOptions {
    std::size_t samples = 30;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  ///< 0 = default_thread_count()
};

/// Per-sample kernel: receives the Rademacher probe v and returns one
/// quadratic-form value. Called concurrently from different threads.
using QuadraticForm = std::function<double(std::span<const double> probe)>;

/// Evaluates `form` on probes 0..samples-1 of `seed`. Results do not depend
/// on the thread count. Throws NumericalError on a non-finite sample.
TraceEstimate sample_quadratic_forms(std::size_t d, const QuadraticForm& form,
                                     const SamplingOptions& options);

/// Hutchinson estimate (1/m) sum_i z_i^T A z_i with Rademacher z_i.
TraceEstimate hutchinson_trace(const LinearOperator& a, const SamplingOptions& options);

/// Estimates tr(p(A)) for p = sum_j c_j T_j: per sample v^T u with
/// u = sum_j c_j w_j and w_{j+1} = 2 A w_j - w_{j-1}; n applications of A.
/// The operator is used as is: its spectrum should lie in [-1, 1].
TraceEstimate chebyshev_trace(const LinearOperator& a, const ChebyshevInterpolant& p,
                              const SamplingOptions& options);

/// ceil() that ignores relative floating-point noise of order 1e-9 above an
/// integer, so a bound that is mathematically integral is not bumped up.
std::size_t ceil_count(double x);

/// Smallest m with m >= 6 eps0^-2 log(2 / zeta0).
std::size_t trace_sample_bound(double eps0, double zeta0);

} // namespace logdet
