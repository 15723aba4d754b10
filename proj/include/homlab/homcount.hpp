#pragma once

#include "homlab/graph.hpp"
#include "homlab/model.hpp"
#include "homlab/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

/// Per-vertex weight function over the colors; a list is the 0/1 case.
struct VertexConstraint {
    std::vector<Rational> weights;

    static VertexConstraint ones(int q);
    static VertexConstraint from_list(int q, ColorSet allowed);

    bool is_list() const;
    ColorSet support() const;

    friend bool operator==(const VertexConstraint&, const VertexConstraint&) = default;
};

using Constraints = std::vector<VertexConstraint>;

/// Two-variable kernel f(x, y) over Omega_1 x Omega_2, row-major.
struct EdgeKernel {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> values;

    EdgeKernel() = default;
    EdgeKernel(int rows, int cols, std::vector<Rational> values);

    const Rational& at(int x, int y) const {
        return values[static_cast<std::size_t>(x) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(y)];
    }
    EdgeKernel transposed() const;

    static EdgeKernel from_model(const Model& m);
    static EdgeKernel indicator_distinct(int q);
};

// Counting -------------------------------------------------------------------

/// Weighted homomorphism count: sum over maps V -> Omega of the product of
/// edge weights, model vertex weights and constraint weights.
Rational hom(const Graph& g, const Model& m, const Constraints* constraints = nullptr);

/// hom(K_{a,b}, m) with every side-A vertex constrained by `side_a` and every
/// side-B vertex by `side_b`, evaluated with the one-side contraction.
Rational hom_biclique(int a, int b, const Model& m, const VertexConstraint* side_a = nullptr,
                      const VertexConstraint* side_b = nullptr);

/// Sum over x in Omega_1^a, y in Omega_2^b of prod f(x_i, y_j).
Rational biclique_sum(const EdgeKernel& f, int a, int b);

/// Sum over x in prod_v Omega_v of prod_{uv} f_uv(x_u, x_v). Kernels follow
/// g.edges() order with rows indexed by the smaller endpoint's colours.
/// Colour counts per vertex are read off the kernel shapes.
Rational kernel_hom(const Graph& g, const std::vector<EdgeKernel>& kernels);

/// h_a(lambda) = hom_lambda(K_a, m); h_0 = 1.
Rational hom_clique(int a, const Model& m, const VertexConstraint& lambda);

/// hom_clique split by color multiplicities: entry counts[c] is how many
/// clique vertices take color c, value is the summed weight of those maps.
std::map<std::vector<int>, Rational> hom_clique_by_color_counts(int a, const Model& m,
                                                                const VertexConstraint& lambda);

// Semiproper colorings --------------------------------------------------------

ColorSet ominus(ColorSet a, ColorSet b, ColorSet looped);
ColorSet ominus(ColorSet a, std::span<const int> colors, ColorSet looped);

/// Number of semiproper colorings of K_{a,b} with side lists A and B:
/// sum over x in A^a of |B (-) x|^b.
BigInt cc(ColorSet a_set, ColorSet b_set, int a, int b, ColorSet looped);

BigInt semiproper_count(const Graph& g, std::span<const ColorSet> lists, ColorSet looped);

// H_eps expansion -------------------------------------------------------------

struct EpsPolynomial {
    std::vector<Rational> coefficients;  // lowest degree first

    Rational evaluate(const Rational& eps) const;
    std::string to_string() const;
};

inline constexpr int kMaxEpsPolynomialVertices = 12;

EpsPolynomial hom_eps_polynomial(const Graph& g);

// Constraint files ------------------------------------------------------------

/// One line per vertex: "v: r0 r1 ... r_{q-1}" or the list shorthand
/// "v: {0,2}". The "v:" prefix may be omitted, in which case lines are taken
/// in vertex order. '#' starts a comment.
Constraints parse_constraints(std::string_view text, int n, int q);
std::string format_constraints(const Constraints& constraints);

}  // namespace homlab
