#pragma once

#include "homlab/graph.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace homlab {

inline constexpr int kMaxEnumerationVertices = 8;

struct EnumerationOptions {
    bool connected = false;
    bool no_isolated = false;
    bool triangle_free = false;
    bool with_triangle = false;
    bool dedup_isomorphism = true;
};

/// Lexicographically minimal upper-triangular adjacency bitstring over all
/// vertex relabelings. Pairs are read in column order (0,1),(0,2),(1,2),
/// (0,3),... and the first pair is the most significant bit. n <= 8.
std::uint64_t canonical_code(const Graph& g);

Graph graph_from_code(int n, std::uint64_t code);

Graph canonical_form(const Graph& g);

/// Streams every graph on exactly n vertices passing the filters. With dedup
/// the graphs come out in canonical labeling, ordered by canonical code.
void for_each_graph(int n, const EnumerationOptions& options,
                    const std::function<void(const Graph&)>& visit);

std::vector<Graph> enumerate_graphs(int n, const EnumerationOptions& options);

/// Concatenation of enumerate_graphs for n = min_n..max_n.
std::vector<Graph> enumerate_graphs_up_to(int min_n, int max_n, const EnumerationOptions& options);

}  // namespace homlab
