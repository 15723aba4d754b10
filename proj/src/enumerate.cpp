#include "homlab/enumerate.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_set>

namespace homlab {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }  // i < j

void check_size(int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "negative vertex count");
    if (n > kMaxEnumerationVertices)
        fail(ErrorKind::LimitExceeded, "enumeration and canonical forms support at most 8 vertices");
}

struct CanonicalSearch {
    int n = 0;
    int total_bits = 0;
    std::array<std::uint32_t, kMaxEnumerationVertices> adj{};
    std::array<int, kMaxEnumerationVertices> order{};
    std::uint64_t best = ~std::uint64_t{0};
    bool have_best = false;

    // Labels 0..depth-1 are placed; `prefix` holds their pair bits.
    void run(int depth, std::uint32_t used, std::uint64_t prefix) {
        if (depth == n) {
            if (!have_best || prefix < best) {
                best = prefix;
                have_best = true;
            }
            return;
        }
        const int len_after = pair_count(depth + 1);
        for (int v = 0; v < n; ++v) {
            if (used & (1u << v)) continue;
            std::uint64_t next = prefix;
            for (int i = 0; i < depth; ++i) next = (next << 1) | ((adj[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] >> v) & 1u);
            if (have_best) {
                std::uint64_t best_prefix = total_bits == 0 ? 0 : best >> (total_bits - len_after);
                if (next > best_prefix) continue;
            }
            order[static_cast<std::size_t>(depth)] = v;
            run(depth + 1, used | (1u << v), next);
        }
    }
};

bool passes_final(const Graph& g, const EnumerationOptions& o) {
    if (o.no_isolated && g.has_isolated_vertex()) return false;
    if (o.connected && !is_connected(g)) return false;
    if (o.triangle_free || o.with_triangle) {
        bool has_triangle = triangle_count(g) > 0;
        if (o.triangle_free && has_triangle) return false;
        if (o.with_triangle && !has_triangle) return false;
    }
    return true;
}

bool has_triangle_through(const Graph& g, int v) {
    std::uint64_t nb = g.neighbors(v);
    for (std::uint64_t m = nb; m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (g.neighbors(u) & nb) return true;
    }
    return false;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
    const int n = g.vertex_count();
    check_size(n);
    CanonicalSearch search;
    search.n = n;
    search.total_bits = pair_count(n);
    for (int v = 0; v < n; ++v) search.adj[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.neighbors(v));
    search.run(0, 0, 0);
    return search.best;
}

Graph graph_from_code(int n, std::uint64_t code) {
    check_size(n);
    const int total = pair_count(n);
    std::vector<Edge> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((code >> (total - 1 - pair_index(i, j))) & 1u) edges.emplace_back(i, j);
    return Graph(n, edges);
}

Graph canonical_form(const Graph& g) { return graph_from_code(g.vertex_count(), canonical_code(g)); }

void for_each_graph(int n, const EnumerationOptions& options, const std::function<void(const Graph&)>& visit) {
    check_size(n);
    if (!options.dedup_isomorphism) {
        const int total = pair_count(n);
        const std::uint64_t limit = std::uint64_t{1} << total;
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            std::vector<Edge> edges;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i)
                    if ((mask >> pair_index(i, j)) & 1u) edges.emplace_back(i, j);
            Graph g(n, edges);
            if (passes_final(g, options)) visit(g);
        }
        return;
    }
    if (n == 0) {
        Graph g(0);
        if (passes_final(g, options)) visit(g);
        return;
    }
    // Grow canonical representatives one vertex at a time. Triangle-freeness
    // survives vertex deletion, so that filter can prune every level.
    std::vector<std::uint64_t> level{0};
    for (int k = 2; k <= n; ++k) {
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::uint64_t> next;
        for (std::uint64_t code : level) {
            Graph base = graph_from_code(k - 1, code);
            std::vector<Edge> base_edges = base.edges();
            for (std::uint32_t subset = 0; subset < (1u << (k - 1)); ++subset) {
                std::vector<Edge> edges = base_edges;
                for (int u = 0; u < k - 1; ++u)
                    if (subset & (1u << u)) edges.emplace_back(u, k - 1);
                Graph g(k, edges);
                if (options.triangle_free && has_triangle_through(g, k - 1)) continue;
                std::uint64_t c = canonical_code(g);
                if (seen.insert(c).second) next.push_back(c);
            }
        }
        level = std::move(next);
    }
    std::sort(level.begin(), level.end());
    for (std::uint64_t code : level) {
        Graph g = graph_from_code(n, code);
        if (passes_final(g, options)) visit(g);
    }
}

std::vector<Graph> enumerate_graphs(int n, const EnumerationOptions& options) {
    std::vector<Graph> out;
    for_each_graph(n, options, [&](const Graph& g) { out.push_back(g); });
    return out;
}

std::vector<Graph> enumerate_graphs_up_to(int min_n, int max_n, const EnumerationOptions& options) {
    std::vector<Graph> out;
    for (int n = min_n; n <= max_n; ++n) {
        auto part = enumerate_graphs(n, options);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace homlab
