#pragma once

#include "homlab/compare.hpp"
#include "homlab/graph.hpp"
#include "homlab/homcount.hpp"
#include "homlab/inequalities.hpp"
#include "homlab/model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace homlab {

enum class LemmaId {
    MixedNorm,
    MixedNorm2,
    Local123,
    ColorHolder,
    ColorBcd,
    ColorAc,
    ColorAbc,
    CliqueCs,
    HLogConvex,
    FLogConv,
    MLogConv,
    SymMonotone,
    SymCorollary,
};

std::string_view to_string(LemmaId id);
LemmaId parse_lemma_id(std::string_view text);
const std::vector<LemmaId>& all_lemma_ids();

/// (sum_i r_i^q)^{2/q} <= (sum_{ij} (A^T A)_{ij}^q)^{1/q} * sum(B^T B),
/// r_i the i-th row sum of A^T B. A is m x n, B is m x k.
struct MixedNormParams {
    EdgeKernel a;
    EdgeKernel b;
    Rational q;
};

/// f is |S| x |T|; g rows are (s, t) pairs numbered s*|T| + t, columns u;
/// h likewise with columns v.
struct MixedNorm2Params {
    EdgeKernel f;
    EdgeKernel g;
    EdgeKernel h;
    Rational q;
};

struct Local123Params {
    EdgeKernel f12;  // Omega_1 x Omega_2
    EdgeKernel f23;  // Omega_2 x Omega_3
    int beta = 1;
    int gamma = 2;
    int delta = 1;
};

struct ColorHolderParams {
    int q = 1;
    ColorSet looped = 0;
    ColorSet a_set = 0;
    ColorSet b_set = 0;
    int k = 0;
    int r = 0;
    int s = 0;
    int t = 0;
};

struct ColorBcdParams {
    int q = 1;
    ColorSet looped = 0;
    ColorSet b_set = 0;
    ColorSet c_set = 0;
    ColorSet d_set = 0;
    int b = 2;
    int c = 1;
    int k = 1;
    Rational t = 1;
};

/// Shared by color-ac and color-abc.
struct ColorAbcParams {
    int q = 1;
    ColorSet looped = 0;
    ColorSet a_set = 0;
    ColorSet b_set = 0;
    ColorSet c_set = 0;
    int a = 1;
    int b = 1;
    int c = 1;
};

/// lambda on V(G••) (apexes n, n+1), mu on V(G), nu on V(G•) (apex n).
struct CliqueCsParams {
    Graph g;
    Model m;
    Constraints lambda;
    Constraints mu;
    Constraints nu;
};

struct HLogConvexParams {
    Model m;
    VertexConstraint lambda;
    VertexConstraint mu;
    VertexConstraint nu;
    int t = 2;
    int delta = 3;
};

struct FLogConvParams {
    Model m;
    VertexConstraint mu;
    VertexConstraint nu;
    int a = 1;
};

struct MLogConvParams {
    Model m;
    VertexConstraint lambda;
    VertexConstraint mu;
    int a = 1;
    int b = 1;
    int delta = 1;
};

struct SymParams {
    std::vector<Rational> alphas;
    int k = 1;
};

using LemmaParams = std::variant<MixedNormParams, MixedNorm2Params, Local123Params, ColorHolderParams,
                                 ColorBcdParams, ColorAbcParams, CliqueCsParams, HLogConvexParams,
                                 FLogConvParams, MLogConvParams, SymParams>;

struct LemmaInstance {
    LemmaId id = LemmaId::SymMonotone;
    LemmaParams params;
    std::string label;
};

/// Throws Error(PreconditionViolated) naming the failed hypothesis.
void validate_lemma_instance(const LemmaInstance& inst);

/// Validates, evaluates both sides exactly and compares.
IneqReport check_local_lemma(const LemmaInstance& inst, const CompareOptions& options = default_compare_options());

/// m_1 >= m_2 >= ... >= m_min(n,k), plus the f_{k,S} recursion as identities.
IneqReport check_sym_monotone(const std::vector<Rational>& alphas, int k,
                              const CompareOptions& options = default_compare_options());

/// E[tau(|x|)] E[prod alpha] <= E[tau(|x|) prod alpha] over x in [n]^k, tau(j) = 1/(j+1).
IneqReport check_sym_corollary(const std::vector<Rational>& alphas, int k,
                               const CompareOptions& options = default_compare_options());

/// m_l for l = 1..min(n, k).
std::vector<Rational> sym_averages(const std::vector<Rational>& alphas, int k);

/// f_{k,S}: sum over x in S^k using every element of S of prod alpha_{x_i}.
Rational sym_f(const std::vector<Rational>& alphas, int k, std::uint32_t subset);

/// Deterministic precondition-satisfying instance.
LemmaInstance random_lemma_instance(LemmaId id, std::uint64_t seed);

nlohmann::json lemma_instance_to_json(const LemmaInstance& inst);
LemmaInstance lemma_instance_from_json(const nlohmann::json& j);
LemmaInstance load_lemma_instance(const std::string& path);

}  // namespace homlab
