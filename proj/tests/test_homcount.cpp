#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/homcount.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace homlab;

namespace {

EdgeKernel random_kernel(std::mt19937_64& rng, int rows, int cols) {
    std::vector<Rational> v;
    for (int i = 0; i < rows * cols; ++i) v.push_back(make_rational(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)));
    return EdgeKernel(rows, cols, std::move(v));
}

Constraints random_constraints(std::mt19937_64& rng, int n, int q) {
    Constraints c;
    for (int v = 0; v < n; ++v) {
        VertexConstraint vc;
        for (int i = 0; i < q; ++i) vc.weights.push_back(make_rational(static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 2)));
        c.push_back(vc);
    }
    return c;
}

}  // namespace

TEST(Hom, ExactCounts) {
    EXPECT_EQ(hom(cycle_graph(6), model_complete_looped(3, 0)), 66);
    EXPECT_EQ(hom(cycle_graph(6), model_hardcore()), 18);
    EXPECT_EQ(hom(biclique(2, 2), model_complete_looped(3, 0)), 18);
    EXPECT_EQ(hom(biclique(2, 2), model_hardcore()), 7);
    EXPECT_EQ(hom(complete_graph(2), model_widom_rowlinson()), 7);
    EXPECT_EQ(hom(complete_graph(5), model_widom_rowlinson()), 63);
    EXPECT_EQ(hom(star_graph(4), model_widom_rowlinson()), 113);
    EXPECT_EQ(hom(petersen_graph(), model_h_eps(0)), 1);
}

TEST(Hom, MatchesBruteForceOnSmallGraphs) {
    std::mt19937_64 rng(11);
    const auto graphs = enumerate_graphs_up_to(1, 5, {});
    for (std::uint64_t s = 0; s < 6; ++s) {
        const Model m = random_model(3, s, RandomModelKind::General);
        for (const Graph& g : graphs) {
            EXPECT_EQ(hom(g, m), oracle::hom(g, m));
            const Constraints c = random_constraints(rng, g.vertex_count(), m.q());
            EXPECT_EQ(hom(g, m, &c), oracle::hom(g, m, &c));
        }
    }
    EXPECT_EQ(hom(cycle_graph(6), model_hardcore()), oracle::independent_sets(cycle_graph(6)));
}

TEST(Hom, MultiplicativeOverDisjointUnion) {
    const auto graphs = enumerate_graphs_up_to(1, 4, {});
    const Model m = random_model(3, 5, RandomModelKind::General);
    for (std::size_t i = 0; i < graphs.size(); i += 3)
        for (std::size_t j = 0; j < graphs.size(); j += 4)
            EXPECT_EQ(hom(disjoint_union(graphs[i], graphs[j]), m), hom(graphs[i], m) * hom(graphs[j], m));
}

TEST(Hom, DimensionMismatch) {
    Constraints c(2, VertexConstraint::ones(2));
    EXPECT_THROW(hom(complete_graph(2), model_complete_looped(3, 0), &c), Error);
    Constraints short_list(1, VertexConstraint::ones(3));
    EXPECT_THROW(hom(complete_graph(2), model_complete_looped(3, 0), &short_list), Error);
}

TEST(HomBiclique, AgreesWithHom) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Model m = random_model(2 + static_cast<int>(s % 2), s, RandomModelKind::General);
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b) {
                if (a + b > 6 || a + b == 0) continue;
                const Graph g = a == 0 || b == 0 ? empty_graph(a + b) : biclique(a, b);
                EXPECT_EQ(hom_biclique(a, b, m), hom(g, m)) << a << "," << b;
            }
    }
    EXPECT_EQ(hom_biclique(2, 2, model_complete_looped(3, 0)), 18);
    EXPECT_EQ(hom_biclique(2, 2, model_hardcore()), 7);
    EXPECT_EQ(hom_biclique(3, 0, model_hardcore()), 8);
}

TEST(HomBiclique, SideConstraints) {
    std::mt19937_64 rng(3);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Model m = random_model(3, s, RandomModelKind::General);
        const Constraints sides = random_constraints(rng, 2, 3);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) {
                Constraints c;
                for (int i = 0; i < a; ++i) c.push_back(sides[0]);
                for (int j = 0; j < b; ++j) c.push_back(sides[1]);
                EXPECT_EQ(hom_biclique(a, b, m, &sides[0], &sides[1]), oracle::hom(biclique(a, b), m, &c));
            }
    }
}

TEST(BicliqueSum, KernelExamplesAndBruteForce) {
    EXPECT_EQ(biclique_sum(EdgeKernel(2, 2, {1, 1, 1, 1}), 2, 2), 16);
    EXPECT_EQ(biclique_sum(EdgeKernel::indicator_distinct(2), 2, 2), 2);
    EXPECT_EQ(biclique_sum(EdgeKernel::indicator_distinct(3), 2, 2), 18);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        const EdgeKernel f = random_kernel(rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
        const int a = 1 + static_cast<int>(rng() % 3);
        const int b = 1 + static_cast<int>(rng() % 3);
        EXPECT_EQ(biclique_sum(f, a, b), oracle::biclique_sum(f, a, b));
        EXPECT_EQ(biclique_sum(f, a, b), biclique_sum(f.transposed(), b, a));
    }
}

TEST(KernelHom, MatchesModelHom) {
    for (const Graph& g : enumerate_graphs_up_to(2, 5, {})) {
        const Model m = random_model(3, static_cast<std::uint64_t>(g.edge_count()), RandomModelKind::General);
        Model unit(m.q(), m.edge_weights(), std::vector<Rational>(3, Rational(1)), 0);
        std::vector<EdgeKernel> kernels(static_cast<std::size_t>(g.edge_count()), EdgeKernel::from_model(unit));
        if (g.has_isolated_vertex()) continue;
        EXPECT_EQ(kernel_hom(g, kernels), hom(g, unit));
    }
}

TEST(Ominus, Examples) {
    // colors 1,2,3 are bits 1,2,3
    EXPECT_EQ(ominus(0b1110, 0b0100, 0), ColorSet{0b1010});
    EXPECT_EQ(ominus(0b1110, 0b0100, 0b0100), ColorSet{0b1110});
    EXPECT_EQ(ominus(0b0110, 0b1110, 0b0010), ColorSet{0b0010});
}

TEST(Cc, ExamplesAndBruteForce) {
    EXPECT_EQ(cc(0b111, 0b111, 1, 1, 0), 6);
    EXPECT_EQ(cc(0b11, 0b11, 2, 2, 0), 2);
    EXPECT_EQ(cc(0b101, 0b011, 0, 3, 0), 8);
    for (ColorSet looped = 0; looped < 8; ++looped)
        for (ColorSet a = 0; a < 8; ++a)
            for (ColorSet b = 0; b < 8; ++b)
                for (int x = 0; x <= 3; ++x)
                    for (int y = 0; y <= 3; ++y) {
                        const BigInt v = cc(a, b, x, y, looped);
                        EXPECT_EQ(v, oracle::cc(a, b, x, y, looped, 3));
                        EXPECT_EQ(v, cc(b, a, y, x, looped));
                    }
}

TEST(SemiproperCount, ExamplesAndBruteForce) {
    const std::vector<ColorSet> full(6, 0b111);
    EXPECT_EQ(semiproper_count(cycle_graph(6), full, 0), 66);
    // R = bit 0, G = bit 1, B = bit 2
    const std::vector<ColorSet> toy{0b101, 0b011, 0b110, 0b111, 0b101, 0b111};
    EXPECT_EQ(semiproper_count(cycle_graph(6), toy, 0), oracle::semiproper(cycle_graph(6), toy, 0, 3));
    EXPECT_EQ(semiproper_count(cycle_graph(6), toy, 0), 17);
    EXPECT_EQ(semiproper_count(petersen_graph(), std::vector<ColorSet>(10, 0b11), 0b11), 1024);
    for (const Graph& g : enumerate_graphs_up_to(1, 5, {}))
        for (int q = 1; q <= 3; ++q)
            for (int l = 0; l <= q; ++l) {
                const std::vector<ColorSet> lists(static_cast<std::size_t>(g.vertex_count()), full_color_set(q));
                const ColorSet looped = full_color_set(l);
                EXPECT_EQ(Rational(semiproper_count(g, lists, looped)), hom(g, model_complete_looped(q, l)));
            }
}

TEST(HomClique, Examples) {
    const Model m(2, {2, 1, 1, 2}, {1, 1}, 0);
    const VertexConstraint one = VertexConstraint::ones(2);
    EXPECT_EQ(hom_clique(2, m, one), 6);
    EXPECT_EQ(hom_clique(3, m, one), 28);
    EXPECT_EQ(hom_clique(0, m, one), 1);
    std::mt19937_64 rng(8);
    for (int a = 1; a <= 4; ++a) {
        const Model r = random_model(3, static_cast<std::uint64_t>(a), RandomModelKind::General);
        const Constraints c = random_constraints(rng, 1, 3);
        Constraints all(static_cast<std::size_t>(a), c[0]);
        EXPECT_EQ(hom_clique(a, r, c[0]), oracle::hom(complete_graph(a), r, &all));
        Rational total = 0;
        for (const auto& [counts, w] : hom_clique_by_color_counts(a, r, c[0])) total += w;
        EXPECT_EQ(total, hom_clique(a, r, c[0]));
    }
}

TEST(EpsPolynomial, Examples) {
    EXPECT_EQ(hom_eps_polynomial(complete_graph(3)).coefficients, (std::vector<Rational>{1, 3, 3, 2}));
    EXPECT_EQ(hom_eps_polynomial(cycle_graph(4)).coefficients, (std::vector<Rational>{1, 4, 6, 4, 2}));
    EXPECT_EQ(hom_eps_polynomial(complete_graph(2)).coefficients, (std::vector<Rational>{1, 1}));
    EXPECT_EQ(hom_eps_polynomial(complete_graph(3)).evaluate(Rational(1, 10)), Rational(333, 250));
    EXPECT_EQ(hom_eps_polynomial(biclique(2, 2)).evaluate(Rational(1, 10)), Rational(7321, 5000));
    for (const Graph& g : enumerate_graphs_up_to(1, 5, {}))
        EXPECT_EQ(hom_eps_polynomial(g).evaluate(Rational(1, 7)), oracle::hom(g, model_h_eps(Rational(1, 7))));
}

TEST(Constraints, ParseFormats) {
    const Constraints c = parse_constraints("0: 1 1/2 0\n# note\n1: {0,2}\n", 2, 3);
    EXPECT_EQ(c[0].weights, (std::vector<Rational>{1, Rational(1, 2), 0}));
    EXPECT_TRUE(c[1].is_list());
    EXPECT_EQ(c[1].support(), ColorSet{0b101});
    EXPECT_EQ(parse_constraints(format_constraints(c), 2, 3), c);
    EXPECT_THROW(parse_constraints("0: 1 1\n", 1, 3), Error);
}
