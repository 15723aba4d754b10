#pragma once

#include "homlab/compare.hpp"
#include "homlab/graph.hpp"
#include "homlab/homcount.hpp"
#include "homlab/model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

enum class Verdict { Holds, Equality, Violated };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

/// One comparison lhs <= rhs inside a report.
struct CheckStep {
    std::string label;
    Expr lhs;
    Expr rhs;
    Verdict verdict = Verdict::Holds;
    bool exact = true;
    double slack_log10 = 0.0;
};

/// A verified inequality instance, always oriented as lhs <= rhs. Reports
/// made of several comparisons keep them in `checks`; the headline sides are
/// then those of the tightest check.
struct IneqReport {
    std::string ineq;
    std::string instance;
    Expr lhs;
    Expr rhs;
    Verdict verdict = Verdict::Holds;
    bool exact = true;
    double slack_log10 = 0.0;
    std::vector<CheckStep> checks;
    std::vector<std::string> notes;
};

/// Compares lhs <= rhs.
CheckStep inequality_step(std::string label, Expr lhs, Expr rhs, const CompareOptions& options);

/// Compares lhs = rhs: Equality when equal, Violated otherwise.
CheckStep identity_step(std::string label, Expr lhs, Expr rhs, const CompareOptions& options);

IneqReport single_report(std::string ineq, std::string instance, Expr lhs, Expr rhs,
                         const CompareOptions& options);

/// Aggregate verdict: Violated if any check is, Equality if all are,
/// Holds otherwise (also for an empty list).
IneqReport aggregate_report(std::string ineq, std::string instance, std::vector<CheckStep> checks);

nlohmann::json report_to_json(const IneqReport& report);
IneqReport report_from_json(const nlohmann::json& j);

/// Human readable multi-line rendering.
std::string format_report(const IneqReport& report);

// Checkers ------------------------------------------------------------------

/// hom(G, m, lambda) <= prod_{uv} hom(K_{d_u,d_v}, m)^{1/(d_u d_v)}. With
/// constraints the edge factor becomes hom(K_{d_v,d_u}) with the d_v copies
/// on u's side constrained by lambda_u and the others by lambda_v.
IneqReport check_reverse_sidorenko(const Graph& g, const Model& m, const Constraints* constraints = nullptr,
                                   const CompareOptions& options = default_compare_options());

/// Semiproper list count <= prod_{uv} cc(L_u, L_v, d_v, d_u)^{1/(d_u d_v)}.
IneqReport check_semiproper_list(const Graph& g, std::span<const ColorSet> lists, int q, ColorSet looped,
                                 const CompareOptions& options = default_compare_options());

/// Kernels are aligned with g.edges(): kernels[i] for edge (u, v), u < v, has
/// rows indexed by Omega_u and columns by Omega_v.
IneqReport check_graphical_bl(const Graph& g, const std::vector<EdgeKernel>& kernels,
                              const CompareOptions& options = default_compare_options());

/// hom_lambda(G, m) <= prod_v h_{d_v+1}(lambda_v)^{1/(d_v+1)}.
IneqReport check_clique_max(const Graph& g, const Model& m, const Constraints* lambdas = nullptr,
                            const CompareOptions& options = default_compare_options());

/// hom(G, m)^2 <= hom(G x K2, m) for a two-color model.
IneqReport check_bst(const Graph& g, const Model& m, const CompareOptions& options = default_compare_options());

inline constexpr int kMaxSwapInjectionVertices = 7;

struct SwapInjectionResult {
    std::uint64_t pairs = 0;          // i(G)^2
    std::uint64_t target_size = 0;    // i(G x K2)
    bool images_distinct = true;
    bool images_valid = true;
};

/// Hard-core swapping map from pairs of independent sets of G into
/// independent sets of G x K2.
SwapInjectionResult swap_injection_check(const Graph& g);

/// The swap set chosen for the pair (A, B) given as vertex bitmasks: the
/// lexicographically first set (vertex 0 most significant, absence preferred)
/// containing exactly one endpoint of every unsafe edge.
std::uint64_t swap_set(const Graph& g, std::uint64_t a, std::uint64_t b);

/// Every displayed step of the worked 3-list-colouring of C6.
std::vector<IneqReport> reproduce_toy_c6(const CompareOptions& options = default_compare_options());

}  // namespace homlab
