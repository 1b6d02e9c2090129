#include "helpers.hpp"

#include "logdet/errors.hpp"
#include "logdet/linear_operator.hpp"
#include "logdet/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace logdet;

TEST_CASE("sigma_max_norm_bound") {
    CHECK(sigma_max_norm_bound(test::dense(2, 2, {2, -1, -1, 2})) == doctest::Approx(3.0));
    CHECK(sigma_max_norm_bound(SparseMatrix::identity(6)) == 1.0);
    CHECK(sigma_max_norm_bound(SparseMatrix::diagonal(std::vector{1.0, 5.0})) == 5.0);

    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 32, c = 1 + rng() % 32;
        const Eigen::MatrixXd a = test::random_matrix(r, c, 0.3, rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        CHECK(sigma_max_norm_bound(test::from_eigen(a)) >= top * (1 - 1e-12));
    }
}

TEST_CASE("power iteration examples") {
    const IterativeConfig cfg;
    CHECK(power_iteration(SparseMatrix::diagonal(std::vector{1.0, 2.0, 3.0}), cfg).value ==
          doctest::Approx(3.03).epsilon(1e-4));
    CHECK(power_iteration(test::dense(2, 2, {2, -1, -1, 2}), cfg).value == doctest::Approx(3.03).epsilon(1e-4));
    const auto id = power_iteration(SparseMatrix::identity(5), cfg);
    CHECK(id.value == doctest::Approx(1.01));
    CHECK(id.converged);
    CHECK(id.iterations <= 2);
}

TEST_CASE("power iteration bracket on PD matrices with a gap") {
    std::mt19937_64 rng(21);
    IterativeConfig cfg;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 5 + rng() % 40;
        Eigen::VectorXd eigs = test::uniform_spectrum(d, 0.1, 1.0, rng);
        eigs(0) = 1.2;  // a gap of at least 5% above the rest
        const Eigen::MatrixXd a = test::with_spectrum(eigs, rng);
        cfg.seed = trial;
        const auto est = power_iteration(test::from_eigen(a), cfg);
        CHECK(est.converged);
        CHECK(est.value >= 1.2);
        CHECK(est.value <= 1.2 * 1.01 * (1 + 10 * cfg.rel_tolerance));
    }
}

TEST_CASE("power iteration flags non-convergence") {
    const auto m = SparseMatrix::diagonal(std::vector{1.0, 0.999999, 0.5});
    IterativeConfig cfg;
    cfg.max_iterations = 3;
    cfg.rel_tolerance = 1e-15;
    const auto est = power_iteration(m, cfg);
    CHECK_FALSE(est.converged);
    CHECK(est.iterations == 3);
    CHECK(est.value > 0.5);
}

TEST_CASE("conjugate gradient examples") {
    const auto cfg = cg_defaults(3);
    auto r = conjugate_gradient(SparseMatrix::identity(3), std::vector{1.0, 2.0, 3.0}, cfg);
    CHECK(r.converged);
    CHECK(r.x[2] == doctest::Approx(3.0));
    r = conjugate_gradient(test::dense(2, 2, {2, -1, -1, 2}), std::vector{1.0, 1.0}, cfg);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
    r = conjugate_gradient(SparseMatrix::diagonal(std::vector{4.0, 9.0}), std::vector{4.0, 9.0}, cfg);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("conjugate gradient residual contract") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + rng() % 60;
        const Eigen::MatrixXd a = test::with_spectrum(test::uniform_spectrum(d, 0.01, 3.0, rng), rng);
        const auto m = test::from_eigen(a);
        const auto b = test::random_vector(d, rng);
        const auto cfg = cg_defaults(d);
        const auto r = conjugate_gradient(m, b, cfg);
        REQUIRE(r.converged);
        const auto ax = matvec(m, r.x);
        double res = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < d; ++i) res += (ax[i] - b[i]) * (ax[i] - b[i]), nb += b[i] * b[i];
        CHECK(std::sqrt(res / nb) <= cfg.rel_tolerance);
        CHECK(r.relative_residual == doctest::Approx(std::sqrt(res / nb)).epsilon(1e-3));
    }
}

TEST_CASE("conjugate gradient detects indefiniteness") {
    CHECK_THROWS_AS(conjugate_gradient(SparseMatrix::diagonal(std::vector{1.0, -1.0}), std::vector{1.0, 1.0}, cg_defaults(2)),
                    NumericalError);
    CHECK_THROWS_AS(conjugate_gradient(SparseMatrix::identity(2), std::vector{1.0}, cg_defaults(2)), DimensionError);
}

TEST_CASE("inverse power iteration examples") {
    const IterativeConfig cfg;
    CHECK(sigma_min_inverse_power(SparseMatrix::diagonal(std::vector{1.0, 2.0, 3.0}), cfg).value ==
          doctest::Approx(0.99).epsilon(1e-4));
    CHECK(sigma_min_inverse_power(test::dense(2, 2, {2, -1, -1, 2}), cfg).value == doctest::Approx(0.99).epsilon(1e-4));
    CHECK(sigma_min_inverse_power(SparseMatrix::identity(4, 0.5), cfg).value == doctest::Approx(0.495).epsilon(1e-4));
}

TEST_CASE("normal operator gives singular value bounds") {
    std::mt19937_64 rng(23);
    Eigen::MatrixXd c = test::random_matrix(30, 30, 0.3, rng);
    c += 3.0 * Eigen::MatrixXd::Identity(30, 30);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
    const auto sc = test::from_eigen(c);
    const auto op = normal_operator(sc);
    const IterativeConfig cfg;
    const double hi = std::sqrt(power_iteration(op, cfg).value);
    const double lo = std::sqrt(sigma_min_inverse_power(op, cfg, cg_defaults(30)).value);
    CHECK(hi >= svd.singularValues()(0));
    CHECK(lo <= svd.singularValues()(29));
    CHECK(lo >= 0.99 * svd.singularValues()(29));
}

TEST_CASE("config validation") {
    IterativeConfig cfg;
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.rel_tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}
