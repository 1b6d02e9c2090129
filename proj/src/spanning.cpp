#include "logdet/spanning.hpp"

#include "logdet/errors.hpp"
#include "logdet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace logdet {

Graph::Graph(std::size_t nvertices, std::vector<Edge> edges)
    : nvertices_(nvertices), edges_(std::move(edges)) {
    std::set<Edge> seen;
    for (auto& [u, v] : edges_) {
        if (u >= nvertices_ || v >= nvertices_)
            throw PreconditionError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") has an endpoint outside [0, " + std::to_string(nvertices_) + ")");
        if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
        if (!seen.insert(std::minmax(u, v)).second)
            throw PreconditionError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
}

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

Graph Graph::star(std::size_t leaves) {
    std::vector<Edge> e;
    for (std::size_t v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph(leaves + 1, std::move(e));
}

Graph Graph::path(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    return Graph(n, std::move(e));
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> deg(nvertices_, 0);
    for (auto [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

bool Graph::connected() const {
    if (nvertices_ <= 1) return true;
    std::vector<std::vector<std::size_t>> adj(nvertices_);
    for (auto [u, v] : edges_) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> seen(nvertices_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == nvertices_;
}

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> nvertices;
    std::size_t declared_edges = 0;
    std::vector<Graph::Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == 'c' || tag[0] == '#') continue;
        std::string extra;
        if (tag == "p") {
            if (nvertices) throw ParseError("duplicate 'p' line", line_no);
            long long n = -1, m = -1;
            if (!(ss >> n >> m) || (ss >> extra) || n < 0 || m < 0)
                throw ParseError("expected 'p <nvertices> <nedges>'", line_no);
            nvertices = static_cast<std::size_t>(n);
            declared_edges = static_cast<std::size_t>(m);
        } else if (tag == "e") {
            if (!nvertices) throw ParseError("edge before the 'p' line", line_no);
            long long u = -1, v = -1;
            if (!(ss >> u >> v) || (ss >> extra) || u < 0 || v < 0)
                throw ParseError("expected 'e <u> <v>' with non-negative indices", line_no);
            if (static_cast<std::size_t>(u) >= *nvertices || static_cast<std::size_t>(v) >= *nvertices)
                throw ParseError("edge endpoint out of range", line_no);
            edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        } else {
            throw ParseError("unknown line tag '" + tag + "'", line_no);
        }
    }
    if (!nvertices) throw ParseError("missing 'p' line", line_no);
    if (edges.size() != declared_edges)
        throw ParseError("declared " + std::to_string(declared_edges) + " edges, found " +
                             std::to_string(edges.size()),
                         line_no);
    try {
        return Graph(*nvertices, std::move(edges));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), line_no);
    }
}

Graph read_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return read_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
    out << "p " << g.vertices() << ' ' << g.edges().size() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

std::size_t find_hub(const Graph& g) {
    const auto deg = g.degrees();
    for (std::size_t v = 0; v < g.vertices(); ++v)
        if (deg[v] + 1 == g.vertices()) return v;
    throw PreconditionError("graph has no vertex adjacent to all others");
}

SparseMatrix laplacian(const Graph& g) {
    const auto deg = g.degrees();
    TripletBuffer t(g.vertices(), g.vertices());
    for (std::size_t v = 0; v < g.vertices(); ++v)
        if (deg[v] > 0) t.add(v, v, static_cast<double>(deg[v]));
    for (auto [u, v] : g.edges()) {
        t.add(u, v, -1.0);
        t.add(v, u, -1.0);
    }
    return t.finalize();
}

SparseMatrix reduced_laplacian(const Graph& g, std::size_t hub) {
    if (hub >= g.vertices()) throw PreconditionError("hub index out of range");
    const auto deg = g.degrees();
    const std::size_t d = g.vertices() - 1;
    auto shrink = [hub](std::size_t v) { return v < hub ? v : v - 1; };
    TripletBuffer t(d, d);
    for (std::size_t v = 0; v < g.vertices(); ++v)
        if (v != hub && deg[v] > 0) t.add(shrink(v), shrink(v), static_cast<double>(deg[v]));
    for (auto [u, v] : g.edges()) {
        if (u == hub || v == hub) continue;
        t.add(shrink(u), shrink(v), -1.0);
        t.add(shrink(v), shrink(u), -1.0);
    }
    return t.finalize();
}

DegreeStats degree_stats(const Graph& g, std::size_t hub) {
    const auto deg = g.degrees();
    DegreeStats s;
    double total = 0.0;
    for (std::size_t v = 0; v < g.vertices(); ++v) {
        if (v == hub) continue;
        s.max = std::max(s.max, deg[v]);
        total += static_cast<double>(deg[v]);
    }
    if (g.vertices() > 1) s.average = total / static_cast<double>(g.vertices() - 1);
    return s;
}

EstimatorParams spanning_tree_params(const Graph& g, std::size_t hub, double eps, double zeta) {
    const auto stats = degree_stats(g, hub);
    if (!(stats.average > 1.0))
        throw PreconditionError("average degree outside the hub must exceed 1");
    if (!(eps > 0.0 && eps < 2.0 / (stats.average - 1.0)))
        throw PreconditionError("eps must lie in (0, 2/(Delta_avg - 1)) = (0, " +
                                std::to_string(2.0 / (stats.average - 1.0)) + ")");
    if (!(zeta > 0.0 && zeta < 1.0)) throw PreconditionError("zeta must lie in (0, 1)");
    const double eps0 = eps * (stats.average - 1.0) / 4.0;
    const double kappa = 2.0 * static_cast<double>(stats.max) - 1.0;
    return theorem2_params(eps0, kappa, zeta);
}

TreeCountEstimate count_spanning_trees(const Graph& g, double eps, double zeta, std::uint64_t seed,
                                       std::size_t threads) {
    const std::size_t hub = find_hub(g);
    auto params = spanning_tree_params(g, hub, eps, zeta);
    params.seed = seed;
    params.threads = threads;
    const auto stats = degree_stats(g, hub);

    TreeCountEstimate out;
    out.hub = hub;
    out.eps0 = eps * (stats.average - 1.0) / 4.0;
    out.bounds = {1.0, 2.0 * static_cast<double>(stats.max) - 1.0};
    const auto l = reduced_laplacian(g, hub);
    out.estimate = logdet_general(l, out.bounds, params);
    out.log_tau = out.estimate.gamma;
    return out;
}

namespace {

// Union-find with rollback (union by size, no path compression).
class RollbackDsu {
public:
    explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }
    void undo() {
        const auto b = history_.back();
        history_.pop_back();
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> history_;
};

std::uint64_t count_from(const std::vector<Graph::Edge>& edges, std::size_t next, std::size_t needed,
                         RollbackDsu& dsu) {
    if (needed == 0) return 1;
    if (edges.size() - next < needed) return 0;
    std::uint64_t total = 0;
    const auto [u, v] = edges[next];
    if (dsu.unite(u, v)) {
        total += count_from(edges, next + 1, needed - 1, dsu);
        dsu.undo();
    }
    total += count_from(edges, next + 1, needed, dsu);
    return total;
}

} // namespace

std::uint64_t count_by_enumeration(const Graph& g) {
    if (g.vertices() > enumeration_limit)
        throw PreconditionError("enumeration limited to " + std::to_string(enumeration_limit) + " vertices");
    if (g.vertices() <= 1) return 1;
    if (!g.connected()) return 0;
    RollbackDsu dsu(g.vertices());
    return count_from(g.edges(), 0, g.vertices() - 1, dsu);
}

TreeCount count_by_determinant(const Graph& g) {
    if (g.vertices() > determinant_limit)
        throw PreconditionError("determinant route limited to " + std::to_string(determinant_limit) + " vertices");
    TreeCount out;
    if (g.vertices() <= 1) {
        out.count = 1;
        return out;
    }
    if (!g.connected()) {
        out.log_tau = -std::numeric_limits<double>::infinity();
        out.count = 0;
        return out;
    }
    out.log_tau = exact_logdet_dense(reduced_laplacian(g, 0), DenseMode::cholesky_pd, determinant_limit);
    if (out.log_tau < 53.0 * std::log(2.0)) {
        const double det = std::exp(out.log_tau);
        const double rounded = std::round(det);
        out.count = static_cast<std::uint64_t>(rounded);
        out.rounding_residual = std::abs(det - rounded);
    }
    return out;
}

TreeCount count_exact(const Graph& g) {
    if (g.vertices() <= enumeration_limit && g.edges().size() <= 28) {
        TreeCount out;
        const auto n = count_by_enumeration(g);
        out.count = n;
        out.log_tau = n == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(n));
        return out;
    }
    return count_by_determinant(g);
}

} // namespace logdet
