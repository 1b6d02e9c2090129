#pragma once

#include "logdet/sparse_matrix.hpp"

#include <filesystem>
#include <iosfwd>

namespace logdet {

/// Reads "coordinate real {general|symmetric}" Matrix Market data. Symmetric
/// files are expanded to full storage; duplicate entries are summed.
/// Throws ParseError (with line number) on malformed input.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes "coordinate real general", entries in (row, col) order, 17 significant digits.
void write_matrix_market(const SparseMatrix& m, std::ostream& out);
void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path);

} // namespace logdet
