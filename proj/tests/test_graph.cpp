#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/graph.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace homlab;

TEST(Graph, NamedFamilies) {
    EXPECT_EQ(complete_graph(5).edge_count(), 10);
    EXPECT_EQ(biclique(3, 3).edge_count(), 9);
    EXPECT_EQ(cycle_graph(6).edge_count(), 6);
    EXPECT_EQ(path_graph(4).edge_count(), 3);
    EXPECT_EQ(petersen_graph().edge_count(), 15);
    EXPECT_EQ(load_graph("K3,3"), biclique(3, 3));
    EXPECT_EQ(load_graph("C6"), cycle_graph(6));
    EXPECT_EQ(load_graph("P4"), path_graph(4));
    EXPECT_EQ(load_graph("petersen"), petersen_graph());
}

TEST(Graph, RejectsBadInput) {
    EXPECT_THROW(Graph(3, {{0, 0}}), Error);
    EXPECT_THROW(Graph(3, {{0, 3}}), Error);
    EXPECT_THROW(load_graph("Q7"), Error);
    EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), Error);
}

TEST(Graph, TriangleCountMatchesBruteForce) {
    EXPECT_EQ(triangle_count(complete_graph(3)), 1u);
    EXPECT_EQ(triangle_count(cycle_graph(6)), 0u);
    EXPECT_EQ(triangle_count(complete_graph(4)), 4u);
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {})) EXPECT_EQ(triangle_count(g), oracle::triangles(g));
}

TEST(Graph, Stats) {
    const GraphStats c6 = graph_stats(cycle_graph(6));
    EXPECT_EQ(c6.max_degree, 2);
    EXPECT_FALSE(c6.has_isolated);
    EXPECT_TRUE(c6.triangle_free);
    EXPECT_EQ(graph_stats(star_graph(4)).degrees, (std::vector<int>{4, 1, 1, 1, 1}));
    EXPECT_TRUE(graph_stats(empty_graph(1)).has_isolated);
}

TEST(Graph, ApexConstruction) {
    const Graph k2 = complete_graph(2);
    const Graph two = add_apexes(k2, 2);
    EXPECT_EQ(two.vertex_count(), 4);
    EXPECT_EQ(two.edge_count(), 5);  // K4 minus the apex pair
    EXPECT_FALSE(two.has_edge(2, 3));
    EXPECT_EQ(add_apexes(empty_graph(2), 2), biclique(2, 2));
    for (const Graph& g : enumerate_graphs_up_to(1, 5, {})) {
        const Graph h = add_apexes(g, 2);
        const int n = g.vertex_count();
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) EXPECT_EQ(h.has_edge(u, v), g.has_edge(u, v));
        EXPECT_FALSE(h.has_edge(n, n + 1));
    }
}

TEST(Graph, TensorWithK2IsBipartiteAndTriangleFree) {
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {})) {
        const Graph t = tensor_with_k2(g);
        EXPECT_TRUE(is_bipartite(t));
        EXPECT_EQ(oracle::triangles(t), 0u);
        EXPECT_EQ(t.edge_count(), 2 * g.edge_count());
    }
    EXPECT_EQ(canonical_code(tensor_with_k2(complete_graph(3))), canonical_code(cycle_graph(6)));
}

TEST(Graph, FormatsRoundTrip) {
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.dedup_isomorphism = false})) {
        EXPECT_EQ(parse_graph6(to_graph6(g)), g);
        EXPECT_EQ(parse_edge_list(format_edge_list(g)), g);
    }
    EXPECT_EQ(parse_graph6(to_graph6(petersen_graph())), petersen_graph());
}
