#pragma once

// Brute-force reference computations. Everything here enumerates the full
// assignment space directly and shares no counting code with the library.

#include "homlab/graph.hpp"
#include "homlab/homcount.hpp"
#include "homlab/model.hpp"
#include "homlab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using homlab::BigInt;
using homlab::ColorSet;
using homlab::Graph;
using homlab::Model;
using homlab::Rational;

// Odometer over {0..q-1}^n; visit(x) for every assignment.
template <typename Visit>
void for_each_assignment(int n, int q, Visit&& visit) {
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    while (true) {
        visit(x);
        int i = 0;
        while (i < n && ++x[static_cast<std::size_t>(i)] == q) x[static_cast<std::size_t>(i++)] = 0;
        if (i == n) return;
    }
}

inline Rational hom(const Graph& g, const Model& m, const homlab::Constraints* c = nullptr) {
    Rational total = 0;
    for_each_assignment(g.vertex_count(), m.q(), [&](const std::vector<int>& x) {
        Rational w = 1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            w *= m.vertex_weight(x[static_cast<std::size_t>(v)]);
            if (c) w *= (*c)[static_cast<std::size_t>(v)].weights[static_cast<std::size_t>(x[static_cast<std::size_t>(v)])];
        }
        for (auto [u, v] : g.edges()) w *= m.weight(x[static_cast<std::size_t>(u)], x[static_cast<std::size_t>(v)]);
        total += w;
    });
    return total;
}

inline std::uint64_t independent_sets(const Graph& g) {
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.vertex_count()); ++s) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if ((s >> u & 1) && (s >> v & 1)) ok = false;
        count += ok;
    }
    return count;
}

inline std::uint64_t triangles(const Graph& g) {
    const int n = g.vertex_count();
    std::uint64_t t = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) t += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
    return t;
}

// Colorings v -> lists[v] with no edge carrying one non-looped color twice.
inline BigInt semiproper(const Graph& g, const std::vector<ColorSet>& lists, ColorSet looped, int q) {
    BigInt count = 0;
    for_each_assignment(g.vertex_count(), q, [&](const std::vector<int>& x) {
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!(lists[static_cast<std::size_t>(v)] >> x[static_cast<std::size_t>(v)] & 1)) return;
        for (auto [u, v] : g.edges()) {
            const int c = x[static_cast<std::size_t>(u)];
            if (c == x[static_cast<std::size_t>(v)] && !(looped >> c & 1)) return;
        }
        ++count;
    });
    return count;
}

// Semiproper colorings of K_{a,b}: side A vertices from list A, side B from list B.
inline BigInt cc(ColorSet a_set, ColorSet b_set, int a, int b, ColorSet looped, int q) {
    std::vector<homlab::Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    std::vector<ColorSet> lists(static_cast<std::size_t>(a), a_set);
    lists.resize(static_cast<std::size_t>(a + b), b_set);
    return semiproper(Graph(a + b, edges), lists, looped, q);
}

inline Rational biclique_sum(const homlab::EdgeKernel& f, int a, int b) {
    Rational total = 0;
    for_each_assignment(a, f.rows, [&](const std::vector<int>& x) {
        for_each_assignment(b, f.cols, [&](const std::vector<int>& y) {
            Rational w = 1;
            for (int xi : x)
                for (int yj : y) w *= f.at(xi, yj);
            total += w;
        });
    });
    return total;
}

// Upper-triangular bitstring in column order, first pair most significant.
inline std::uint64_t code_under(const Graph& g, const std::vector<int>& perm) {
    const int n = g.vertex_count();
    std::uint64_t code = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) code = code << 1 | (g.has_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? 1 : 0);
    return code;
}

inline std::uint64_t canonical_code(const Graph& g) {
    std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do best = std::min(best, code_under(g, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Number of isomorphism classes on n vertices by canonical codes of all labeled graphs.
inline std::size_t isomorphism_classes(int n) {
    std::vector<homlab::Edge> pairs;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
    std::set<std::uint64_t> codes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<homlab::Edge> e;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) e.push_back(pairs[i]);
        codes.insert(oracle::canonical_code(Graph(n, e)));
    }
    return codes.size();
}

// m_l: average of prod alpha over tuples in [n]^k with exactly l distinct entries.
inline std::vector<Rational> sym_averages(const std::vector<Rational>& alphas, int k) {
    const int n = static_cast<int>(alphas.size());
    const int top = std::min(n, k);
    std::vector<Rational> sum(static_cast<std::size_t>(top + 1), Rational(0));
    std::vector<long> count(static_cast<std::size_t>(top + 1), 0);
    for_each_assignment(k, n, [&](const std::vector<int>& x) {
        const std::set<int> distinct(x.begin(), x.end());
        Rational p = 1;
        for (int xi : x) p *= alphas[static_cast<std::size_t>(xi)];
        sum[distinct.size()] += p;
        ++count[distinct.size()];
    });
    std::vector<Rational> m;
    for (int l = 1; l <= top; ++l) m.push_back(sum[static_cast<std::size_t>(l)] / count[static_cast<std::size_t>(l)]);
    return m;
}

// Lexicographically first T (vertex 0 most significant, absence preferred)
// containing exactly one endpoint of every unsafe edge of the pair (a, b).
inline std::uint64_t lex_first_swap_set(const Graph& g, std::uint64_t a, std::uint64_t b) {
    const int n = g.vertex_count();
    const std::uint64_t only_a = a & ~b;
    const std::uint64_t only_b = b & ~a;
    std::vector<homlab::Edge> unsafe;
    for (auto [u, v] : g.edges())
        if (((only_a >> u & 1) && (only_b >> v & 1)) || ((only_b >> u & 1) && (only_a >> v & 1))) unsafe.emplace_back(u, v);
    // Reading vertex 0 as the top bit makes lex order numeric order of the reversed mask.
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) {
        std::uint64_t t = 0;
        for (int v = 0; v < n; ++v)
            if (r >> (n - 1 - v) & 1) t |= std::uint64_t{1} << v;
        bool ok = true;
        for (auto [u, v] : unsafe) ok = ok && ((t >> u & 1) != (t >> v & 1));
        if (ok) return t;
    }
    return ~std::uint64_t{0};
}

}  // namespace oracle
