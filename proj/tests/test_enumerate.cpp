#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace homlab;

TEST(Enumerate, DedupCountsMatchBruteForceClasses) {
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(enumerate_graphs(n, {}).size(), oracle::isomorphism_classes(n)) << "n=" << n;
}

TEST(Enumerate, KnownClassCounts) {
    EXPECT_EQ(enumerate_graphs(3, {}).size(), 4u);
    EXPECT_EQ(enumerate_graphs(4, {}).size(), 11u);
    EXPECT_EQ(enumerate_graphs(2, {.dedup_isomorphism = false}).size(), 2u);
}

TEST(Enumerate, CanonicalCodeMatchesPermutationMinimum) {
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.dedup_isomorphism = false}))
        if (g.vertex_count() <= 5 || g.edge_count() % 3 == 0) EXPECT_EQ(canonical_code(g), oracle::canonical_code(g));
}

TEST(Enumerate, RepresentativesArePairwiseNonIsomorphic) {
    for (int n = 1; n <= 5; ++n) {
        std::set<std::uint64_t> codes;
        for (const Graph& g : enumerate_graphs(n, {})) EXPECT_TRUE(codes.insert(oracle::canonical_code(g)).second);
    }
}

TEST(Enumerate, FiltersMatchPredicates) {
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.connected = true})) EXPECT_TRUE(is_connected(g));
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.no_isolated = true})) EXPECT_FALSE(g.has_isolated_vertex());
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.triangle_free = true})) EXPECT_EQ(oracle::triangles(g), 0u);
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {.with_triangle = true})) EXPECT_GT(oracle::triangles(g), 0u);
    // Triangle-free and triangle-containing classes partition all classes.
    for (int n = 1; n <= 6; ++n)
        EXPECT_EQ(enumerate_graphs(n, {.triangle_free = true}).size() + enumerate_graphs(n, {.with_triangle = true}).size(),
                  enumerate_graphs(n, {}).size());
}

TEST(Enumerate, LimitExceeded) {
    try {
        enumerate_graphs(9, {});
        FAIL() << "expected LimitExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LimitExceeded);
    }
}
