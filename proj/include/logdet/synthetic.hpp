#pragma once

#include "logdet/sparse_matrix.hpp"

#include <cstddef>
#include <cstdint>

namespace logdet {

/// Random sparse symmetric positive definite test matrix: each row picks
/// `offdiag_per_row` distinct off-diagonal columns with values uniform in
/// [-1, 1], the value is mirrored to the transposed position (later rows
/// overwrite earlier ones), and the diagonal is set to the absolute off-diagonal
/// row sum plus `diagonal_shift`.
SparseMatrix random_sparse_pd(std::size_t d, std::uint64_t seed, std::size_t offdiag_per_row = 5,
                              double diagonal_shift = 1e-3);

} // namespace logdet
