#include "logdet/gmrf.hpp"

#include "logdet/errors.hpp"
#include "logdet/oracle.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace logdet {

void LatticeSpec::validate() const {
    if (rows == 0 || cols == 0) throw PreconditionError("lattice needs at least one row and column");
    if (!(std::abs(rho) < 0.25))
        throw PreconditionError("|rho| must be below 0.25 for a positive definite lattice, got " +
                                std::to_string(rho));
}

SparseMatrix lattice_precision(const LatticeSpec& spec) {
    spec.validate();
    const std::size_t d = spec.sites();
    TripletBuffer t(d, d);
    t.reserve(5 * d);
    for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
            const std::size_t i = r * spec.cols + c;
            t.add(i, i, 1.0);
            if (spec.rho == 0.0) continue;
            if (r > 0) t.add(i, i - spec.cols, spec.rho);
            if (r + 1 < spec.rows) t.add(i, i + spec.cols, spec.rho);
            if (c > 0) t.add(i, i - 1, spec.rho);
            if (c + 1 < spec.cols) t.add(i, i + 1, spec.rho);
        }
    }
    return t.finalize();
}

std::vector<double> gibbs_sample(const LatticeSpec& spec, std::size_t sweeps, std::uint64_t seed) {
    spec.validate();
    if (sweeps < 1) throw PreconditionError("gibbs_sample needs at least one sweep");
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t rows = spec.rows;
    const std::size_t cols = spec.cols;
    std::vector<double> x(spec.sites(), 0.0);
    for (std::size_t s = 0; s < sweeps; ++s) {
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                const std::size_t i = r * cols + c;
                double neighbours = 0.0;
                if (r > 0) neighbours += x[i - cols];
                if (r + 1 < rows) neighbours += x[i + cols];
                if (c > 0) neighbours += x[i - 1];
                if (c + 1 < cols) neighbours += x[i + 1];
                // J_ii = 1: conditional mean -rho * sum, unit variance.
                x[i] = -spec.rho * neighbours + normal(engine);
            }
        }
    }
    return x;
}

namespace {

double quadratic_form(const SparseMatrix& j, std::span<const double> x) {
    const auto jx = matvec(j, x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * jx[i];
    return s;
}

void check_sample(std::span<const double> sample, std::size_t rows, std::size_t cols) {
    if (sample.size() != rows * cols)
        throw DimensionError("sample has " + std::to_string(sample.size()) + " entries, lattice has " +
                             std::to_string(rows * cols));
}

} // namespace

std::vector<LikelihoodPoint> loglik_scan(std::span<const double> sample, std::size_t rows,
                                         std::size_t cols, std::span<const double> rho_grid,
                                         const EstimatorParams& params) {
    check_sample(sample, rows, cols);
    std::vector<LikelihoodPoint> out;
    out.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        const auto j = lattice_precision({rows, cols, rho});
        double logdet = 0.0;
        if (rho != 0.0) {
            const double spread = 4.0 * std::abs(rho);
            logdet = logdet_pd(j, {1.0 - spread, 1.0 + spread}, params).gamma;
        }
        out.push_back({rho, logdet - quadratic_form(j, sample)});
    }
    return out;
}

std::vector<LikelihoodPoint> loglik_scan_exact(std::span<const double> sample, std::size_t rows,
                                               std::size_t cols, std::span<const double> rho_grid) {
    check_sample(sample, rows, cols);
    std::vector<LikelihoodPoint> out;
    out.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        const auto j = lattice_precision({rows, cols, rho});
        out.push_back({rho, exact_logdet_sparse(j) - quadratic_form(j, sample)});
    }
    return out;
}

std::vector<double> rho_grid(double first, double last, double step) {
    if (!(step > 0.0) || last < first) throw PreconditionError("rho grid needs step > 0 and last >= first");
    const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    // Index-based to avoid accumulated drift; snap to multiples of 1e-12.
    for (std::size_t k = 0; k < count; ++k)
        grid[k] = std::round((first + static_cast<double>(k) * step) * 1e12) / 1e12;
    return grid;
}

double argmax_rho(std::span<const LikelihoodPoint> scan) {
    if (scan.empty()) throw PreconditionError("empty likelihood scan");
    return std::max_element(scan.begin(), scan.end(),
                            [](const auto& a, const auto& b) { return a.loglik < b.loglik; })
        ->rho;
}

std::pair<double, double> marginal_logdet_identity_check(const Eigen::MatrixXd& j,
                                                         std::span<const std::size_t> observed) {
    if (j.rows() != j.cols()) throw DimensionError("precision matrix must be square");
    const auto d = static_cast<std::size_t>(j.rows());
    std::vector<bool> is_observed(d, false);
    for (auto i : observed) {
        if (i >= d) throw PreconditionError("observed index out of range");
        if (is_observed[i]) throw PreconditionError("observed index listed twice");
        is_observed[i] = true;
    }
    std::vector<Eigen::Index> obs;
    std::vector<Eigen::Index> hid;
    for (std::size_t i = 0; i < d; ++i)
        (is_observed[i] ? obs : hid).push_back(static_cast<Eigen::Index>(i));

    const double full = exact_logdet_dense(j, DenseMode::cholesky_pd);
    if (hid.empty()) return {full, full};

    const Eigen::MatrixXd j_o = j(obs, obs);
    const Eigen::MatrixXd j_oz = j(obs, hid);
    const Eigen::MatrixXd j_z = j(hid, hid);
    Eigen::LLT<Eigen::MatrixXd> z_factor(j_z);
    if (z_factor.info() != Eigen::Success)
        throw NumericalError("unobserved block J_z is singular or not positive definite");
    const double logdet_z = exact_logdet_dense(j_z, DenseMode::cholesky_pd);
    if (obs.empty()) return {0.0, full - logdet_z};

    Eigen::MatrixXd schur = j_o - j_oz * z_factor.solve(j_oz.transpose());
    schur = 0.5 * (schur + schur.transpose());
    return {exact_logdet_dense(schur, DenseMode::cholesky_pd), full - logdet_z};
}

} // namespace logdet
