#include "logdet/matrix_market.hpp"

#include "logdet/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace logdet {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input, expected %%MatrixMarket header", 1);
    ++line_no;
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", line_no);
    object = lowercase(object);
    format = lowercase(format);
    field = lowercase(field);
    symmetry = lowercase(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", line_no);
    if (format != "coordinate") throw ParseError("unsupported format '" + format + "'", line_no);
    if (field != "real")
        throw ParseError("unsupported field '" + field + "', only real is accepted", line_no);
    if (symmetry != "general" && symmetry != "symmetric")
        throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
    const bool symmetric = symmetry == "symmetric";

    // Size line: first non-comment, non-blank line.
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (blank(line)) continue;
        break;
    }
    if (!in && line.empty()) throw ParseError("missing size line", line_no + 1);
    long long rows = -1, cols = -1, entries = -1;
    {
        std::istringstream size_line(line);
        std::string extra;
        if (!(size_line >> rows >> cols >> entries) || (size_line >> extra))
            throw ParseError("size line must be '<rows> <cols> <entries>'", line_no);
    }
    if (rows < 0 || cols < 0 || entries < 0) throw ParseError("negative size", line_no);
    if (symmetric && rows != cols) throw ParseError("symmetric matrix must be square", line_no);

    TripletBuffer triplets(static_cast<index_t>(rows), static_cast<index_t>(cols));
    triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * entries : entries));
    long long read = 0;
    while (read < entries && std::getline(in, line)) {
        ++line_no;
        if ((!line.empty() && line[0] == '%') || blank(line)) continue;
        std::istringstream entry(line);
        long long i = 0, j = 0;
        double v = 0.0;
        std::string extra;
        if (!(entry >> i >> j >> v) || (entry >> extra))
            throw ParseError("entry must be '<row> <col> <real value>'", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") out of bounds for " + std::to_string(rows) + "x" +
                                 std::to_string(cols),
                             line_no);
        if (symmetric && j > i)
            throw ParseError("symmetric file stores upper-triangle entry", line_no);
        const auto r = static_cast<index_t>(i - 1);
        const auto c = static_cast<index_t>(j - 1);
        triplets.add(r, c, v);
        if (symmetric && r != c) triplets.add(c, r, v);
        ++read;
    }
    if (read < entries)
        throw ParseError("expected " + std::to_string(entries) + " entries, found " +
                             std::to_string(read),
                         line_no);
    while (std::getline(in, line)) {
        ++line_no;
        if ((!line.empty() && line[0] == '%') || blank(line)) continue;
        throw ParseError("unexpected data after the declared entries", line_no);
    }
    return triplets.finalize();
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    const auto offsets = m.row_offsets();
    const auto cols = m.col_indices();
    const auto vals = m.values();
    const auto old_precision = out.precision(17);
    for (index_t i = 0; i < m.rows(); ++i)
        for (index_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out << (i + 1) << ' ' << (cols[k] + 1) << ' ' << vals[k] << '\n';
    out.precision(old_precision);
}

void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_matrix_market(m, out);
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

} // namespace logdet
