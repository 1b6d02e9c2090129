#include "helpers.hpp"

#include "logdet/errors.hpp"
#include "logdet/matrix_market.hpp"

#include <doctest.h>

#include <sstream>

using namespace logdet;

namespace {

SparseMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return read_matrix_market(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

bool same(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::ranges::equal(a.row_offsets(), b.row_offsets()) &&
           std::ranges::equal(a.col_indices(), b.col_indices()) && std::ranges::equal(a.values(), b.values());
}

} // namespace

TEST_CASE("symmetric file is expanded") {
    // Only the stored lower triangle is mirrored; (2,2) is absent here.
    const auto m = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 2.0\n2 1 -1.0\n");
    CHECK(same(m, test::dense(2, 2, {2, -1, -1, 0})));
    const auto full = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 2.0\n2 1 -1.0\n2 2 2.0\n");
    CHECK(same(full, test::dense(2, 2, {2, -1, -1, 2})));
}

TEST_CASE("empty coordinate section gives the zero matrix") {
    const auto m = parse("%%MatrixMarket matrix coordinate real general\n% nothing here\n3 3 0\n");
    CHECK(m.rows() == 3);
    CHECK(m.nnz() == 0);
}

TEST_CASE("duplicates are summed like triplets") {
    const auto m = parse("%%MatrixMarket matrix coordinate real general\n2 2 4\n1 2 1.5\n2 2 1\n1 2 0.25\n1 2 -3\n");
    TripletBuffer t(2, 2);
    t.add(0, 1, 1.5);
    t.add(1, 1, 1.0);
    t.add(0, 1, 0.25);
    t.add(0, 1, -3.0);
    CHECK(same(m, t.finalize()));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("") == 1);
    CHECK(error_line("%%MatrixMarket matrix array real general\n2 2\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 1\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n% c\n2 2 1\n3 1 1.0\n") == 4);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 nan\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1.0\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n2 2 1.0\n") == 4);
    CHECK(error_line("not a header\n") == 1);
}

TEST_CASE("round trip is exact") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd a = test::random_matrix(1 + rng() % 15, 1 + rng() % 15, 0.3, rng);
        a *= 1e5;  // exercise all 17 digits
        const auto m = test::from_eigen(a);
        std::stringstream buf;
        write_matrix_market(m, buf);
        CHECK(same(read_matrix_market(buf), m));
    }
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(read_matrix_market(std::filesystem::path("/nonexistent/file.mtx")), ParseError);
}
