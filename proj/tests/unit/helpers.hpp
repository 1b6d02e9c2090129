#pragma once

#include "logdet/sparse_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace test {

inline logdet::SparseMatrix dense(std::size_t r, std::size_t c, std::vector<double> v) {
    return logdet::SparseMatrix::from_dense(r, c, v);
}

inline logdet::SparseMatrix from_eigen(const Eigen::MatrixXd& m) {
    logdet::TripletBuffer t(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) t.add(i, j, m(i, j));
    return t.finalize();
}

inline std::vector<double> random_vector(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(d);
    for (auto& v : x) v = u(rng);
    return x;
}

/// Random sparse-ish matrix with roughly `fill` of the entries set.
inline Eigen::MatrixXd random_matrix(std::size_t r, std::size_t c, double fill, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(fill);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng)) m(i, j) = u(rng);
    return m;
}

/// Symmetric matrix Q diag(eigs) Q^T with a random orthogonal Q.
inline Eigen::MatrixXd with_spectrum(const Eigen::VectorXd& eigs, std::mt19937_64& rng) {
    const auto d = eigs.size();
    std::normal_distribution<double> g;
    Eigen::MatrixXd z(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) z(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd m = q * eigs.asDiagonal() * q.transpose();
    return (m + m.transpose()) / 2.0;
}

inline Eigen::VectorXd uniform_spectrum(std::size_t d, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd e(d);
    for (auto& v : e) v = u(rng);
    return e;
}

} // namespace test
