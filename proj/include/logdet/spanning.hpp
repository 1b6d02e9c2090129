#pragma once

#include "logdet/estimator.hpp"
#include "logdet/sparse_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace logdet {

/// Simple undirected graph. The constructor rejects self-loops, duplicate
/// edges and out-of-range endpoints with PreconditionError.
class Graph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    Graph(std::size_t nvertices, std::vector<Edge> edges);

    static Graph complete(std::size_t n);
    static Graph star(std::size_t leaves);  ///< vertex 0 is the center
    static Graph path(std::size_t n);

    std::size_t vertices() const noexcept { return nvertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<std::size_t> degrees() const;
    bool connected() const;

private:
    std::size_t nvertices_;
    std::vector<Edge> edges_;
};

/// Text format: "p <nvertices> <nedges>" then one "e <u> <v>" per edge,
/// 0-indexed; lines starting with 'c' or '#' are comments.
Graph read_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);
void write_graph(const Graph& g, std::ostream& out);

/// Lowest-index vertex adjacent to every other vertex; PreconditionError if none.
std::size_t find_hub(const Graph& g);

/// Graph Laplacian with row and column `hub` removed.
SparseMatrix reduced_laplacian(const Graph& g, std::size_t hub);
SparseMatrix laplacian(const Graph& g);

/// Degree statistics over V \ {hub}.
struct DegreeStats {
    std::size_t max = 0;
    double average = 0.0;
};
DegreeStats degree_stats(const Graph& g, std::size_t hub);

struct TreeCountEstimate {
    double log_tau = 0.0;
    std::size_t hub = 0;
    double eps0 = 0.0;          ///< additive accuracy handed to the general estimator
    SpectrumBounds bounds;      ///< (1, 2 Delta_max - 1)
    LogDetEstimate estimate;
};

/// Parameters for a multiplicative eps guarantee on log tau(G):
/// M and N evaluated at (eps (Delta_avg - 1) / 4, 2 Delta_max - 1).
EstimatorParams spanning_tree_params(const Graph& g, std::size_t hub, double eps, double zeta);

/// Randomized log tau(G) for graphs with a hub. Requires 0 < eps < 2/(Delta_avg - 1)
/// and Delta_avg > 1; `threads` only changes speed.
TreeCountEstimate count_spanning_trees(const Graph& g, double eps, double zeta, std::uint64_t seed,
                                       std::size_t threads = 0);

struct TreeCount {
    double log_tau = 0.0;                   ///< -inf when disconnected
    std::optional<std::uint64_t> count;     ///< exact integer when it fits in 2^53
    double rounding_residual = 0.0;         ///< |det - round(det)| on the determinant route
};

inline constexpr std::size_t enumeration_limit = 10;
inline constexpr std::size_t determinant_limit = 2000;

/// Exhaustive backtracking over edge subsets (|V| <= enumeration_limit).
std::uint64_t count_by_enumeration(const Graph& g);
/// det L(hub) by dense Cholesky (|V| <= determinant_limit); any vertex works as the deleted one.
TreeCount count_by_determinant(const Graph& g);
/// Enumeration for tiny graphs, determinant route otherwise.
TreeCount count_exact(const Graph& g);

} // namespace logdet
