#include "logdet/oracle.hpp"

#include "logdet/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cholmod.h>

#include <cmath>
#include <memory>
#include <string>

namespace logdet {

Eigen::MatrixXd to_dense(const SparseMatrix& m) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows()),
                                                static_cast<Eigen::Index>(m.cols()));
    const auto offsets = m.row_offsets();
    const auto cols = m.col_indices();
    const auto vals = m.values();
    for (index_t i = 0; i < m.rows(); ++i)
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
    return out;
}

double exact_logdet_dense(const Eigen::MatrixXd& m, DenseMode mode) {
    if (m.rows() != m.cols()) throw DimensionError("log-determinant needs a square matrix");
    const Eigen::Index d = m.rows();
    if (mode == DenseMode::cholesky_pd) {
        if (!m.isApprox(m.transpose(), 1e-12) && d > 0)
            throw PreconditionError("cholesky_pd needs a symmetric matrix");
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() != Eigen::Success)
            throw NotPositiveDefinite("Cholesky factorization failed: matrix is not positive definite");
        double sum = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) sum += std::log(llt.matrixLLT()(i, i));
        return 2.0 * sum;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double pivot = lu.matrixLU()(i, i);
        if (pivot == 0.0) throw NumericalError("LU factorization hit a zero pivot: matrix is singular");
        sum += std::log(std::abs(pivot));
    }
    return sum;
}

double exact_logdet_dense(const SparseMatrix& m, DenseMode mode, std::size_t max_dim) {
    if (m.rows() > max_dim || m.cols() > max_dim)
        throw PreconditionError("dense oracle limited to dimension " + std::to_string(max_dim) +
                                ", matrix has " + std::to_string(m.rows()));
    return exact_logdet_dense(to_dense(m), mode);
}

namespace {

struct CholmodSession {
    cholmod_common common{};
    CholmodSession() { cholmod_l_start(&common); }
    ~CholmodSession() { cholmod_l_finish(&common); }
    CholmodSession(const CholmodSession&) = delete;
    CholmodSession& operator=(const CholmodSession&) = delete;
};

} // namespace

double exact_logdet_sparse(const SparseMatrix& m) {
    if (!m.is_square()) throw DimensionError("log-determinant needs a square matrix");
    if (!m.is_symmetric(1e-12)) throw PreconditionError("exact_logdet_sparse needs a symmetric matrix");
    const std::size_t d = m.rows();
    if (d == 0) return 0.0;

    CholmodSession session;
    cholmod_common* cc = &session.common;
    cc->supernodal = CHOLMOD_SUPERNODAL;
    cc->final_ll = 1;

    // Lower triangle, stored column-wise: row i of the CSR upper part is
    // column i of the lower part, so transpose by taking entries with col <= row.
    const auto offsets = m.row_offsets();
    const auto cols = m.col_indices();
    const auto vals = m.values();
    std::size_t lower_nnz = 0;
    for (index_t i = 0; i < d; ++i)
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k)
            if (cols[k] >= i) ++lower_nnz;

    // CSC of the lower triangle equals CSR of the upper triangle.
    auto free_sparse = [cc](cholmod_sparse* a) { cholmod_l_free_sparse(&a, cc); };
    std::unique_ptr<cholmod_sparse, decltype(free_sparse)> a(
        cholmod_l_allocate_sparse(d, d, lower_nnz, 1, 1, -1, CHOLMOD_REAL, cc), free_sparse);
    if (!a) throw NumericalError("CHOLMOD allocation failed");
    auto* ap = static_cast<SuiteSparse_long*>(a->p);
    auto* ai = static_cast<SuiteSparse_long*>(a->i);
    auto* ax = static_cast<double*>(a->x);
    std::size_t pos = 0;
    for (index_t i = 0; i < d; ++i) {
        ap[i] = static_cast<SuiteSparse_long>(pos);
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
            if (cols[k] < i) continue;
            ai[pos] = static_cast<SuiteSparse_long>(cols[k]);
            ax[pos] = vals[k];
            ++pos;
        }
    }
    ap[d] = static_cast<SuiteSparse_long>(pos);

    auto free_factor = [cc](cholmod_factor* f) { cholmod_l_free_factor(&f, cc); };
    std::unique_ptr<cholmod_factor, decltype(free_factor)> factor(cholmod_l_analyze(a.get(), cc), free_factor);
    if (!factor) throw NumericalError("CHOLMOD symbolic analysis failed");
    cholmod_l_factorize(a.get(), factor.get(), cc);
    if (cc->status == CHOLMOD_NOT_POSDEF || factor->minor < d)
        throw NotPositiveDefinite("sparse Cholesky failed at column " + std::to_string(factor->minor) +
                             ": matrix is not positive definite (or the BLAS in use is faulty)");
    if (cc->status < CHOLMOD_OK) throw NumericalError("CHOLMOD factorization failed");

    double sum = 0.0;
    const auto* x = static_cast<const double*>(factor->x);
    if (factor->is_super) {
        const auto* super = static_cast<const SuiteSparse_long*>(factor->super);
        const auto* pi = static_cast<const SuiteSparse_long*>(factor->pi);
        const auto* px = static_cast<const SuiteSparse_long*>(factor->px);
        for (std::size_t s = 0; s < factor->nsuper; ++s) {
            const auto ncols = super[s + 1] - super[s];
            const auto nrows = pi[s + 1] - pi[s];
            for (SuiteSparse_long j = 0; j < ncols; ++j) sum += std::log(x[px[s] + j * nrows + j]);
        }
    } else {
        const auto* p = static_cast<const SuiteSparse_long*>(factor->p);
        for (std::size_t j = 0; j < d; ++j) sum += std::log(x[p[j]]);
    }
    return 2.0 * sum;
}

} // namespace logdet
