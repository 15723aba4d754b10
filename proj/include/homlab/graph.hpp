#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homlab {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1 with at most 64 vertices.
/// Immutable once built; neighbor sets are kept as bitmasks.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<Edge>& edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    /// Sorted list of (u, v) with u < v.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::uint64_t neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    int degree(int v) const;
    bool has_edge(int u, int v) const;
    int max_degree() const;
    bool has_isolated_vertex() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> adjacency_;
};

inline constexpr int kMaxGraphVertices = 64;

struct GraphFamilySpec {
    enum class Kind { Complete, Biclique, Cycle, Path, Star, Empty, Petersen, EdgeList };

    Kind kind = Kind::Complete;
    std::vector<int> params;
    std::vector<Edge> edges;  // EdgeList only; params[0] is n
};

Graph build_named(const GraphFamilySpec& spec);

Graph complete_graph(int n);
Graph biclique(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph empty_graph(int n);
Graph petersen_graph();

/// Bipartite double cover: vertex (v, i) is numbered v + i*n.
Graph tensor_with_k2(const Graph& g);

/// G with one or two apexes appended after the original vertices.
Graph add_apexes(const Graph& g, int count);

Graph disjoint_union(const Graph& a, const Graph& b);

std::uint64_t triangle_count(const Graph& g);

struct GraphStats {
    std::vector<int> degrees;
    int max_degree = 0;
    bool has_isolated = false;
    bool triangle_free = true;
};

GraphStats graph_stats(const Graph& g);

bool is_bipartite(const Graph& g);
bool is_connected(const Graph& g);

// Text formats ---------------------------------------------------------------

/// "n m" header followed by m lines "u v".
Graph parse_edge_list(std::string_view text);
std::string format_edge_list(const Graph& g);

Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

/// CLI syntax: "K5", "K3,3", "C6", "P4", "S4" (star), "E3" (edgeless),
/// "petersen", or "g6:<graph6>".
GraphFamilySpec parse_graph_name(std::string_view name);

/// Named graph, "g6:..." or a path to an edge-list file.
Graph load_graph(std::string_view spec);

}  // namespace homlab
