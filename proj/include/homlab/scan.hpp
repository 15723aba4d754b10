#pragma once

#include "homlab/compare.hpp"
#include "homlab/enumerate.hpp"
#include "homlab/inequalities.hpp"
#include "homlab/model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

inline constexpr int kMaxScanVertices = 7;

/// Inequality ids accepted by the scanner: reverse-sidorenko,
/// semiproper-list, clique-max, bst, swap-injection and lemma:<lemma id>.
bool is_known_ineq(std::string_view id);

struct GraphSource {
    /// Enumerated graphs (dedup) with min_vertices..max_vertices vertices,
    /// used when `names` is empty.
    int min_vertices = 1;
    int max_vertices = 0;
    EnumerationOptions filters;
    /// Named graphs, "g6:..." strings or edge-list paths.
    std::vector<std::string> names;
};

struct ModelSource {
    /// Named models or model file paths.
    std::vector<std::string> names;
    /// Random models for seeds [seed_begin, seed_end), one per q in random_q.
    RandomModelKind random_kind = RandomModelKind::General;
    std::vector<int> random_q;
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 0;
};

struct ScanJob {
    std::string ineq;
    GraphSource graphs;
    ModelSource models;
    /// semiproper-list: random list assignments per (graph, model) cell.
    /// lemma:<id>: number of random instances (seeds 0..n-1 offset by seed_begin).
    int instances_per_cell = 1;
    std::uint64_t list_seed_begin = 0;
    unsigned jobs = 1;
    bool finding_mode = false;
    CompareOptions compare = default_compare_options();
};

enum class ScanOutcome { Holds, Equality, Violated, Undecided };

std::string_view to_string(ScanOutcome o);

struct InstanceRecord {
    std::string instance_id;
    std::string graph;
    std::string model;
    ScanOutcome outcome = ScanOutcome::Holds;
    bool exact = true;
    double slack_log10 = 0.0;
    std::string error;  // set for Undecided

    friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct Finding {
    std::string instance_id;
    nlohmann::json replay;  // {ineq, graph, model, constraints?, seed?}
    nlohmann::json report;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct ScanSummary {
    std::string ineq;
    std::uint64_t instances = 0;
    std::uint64_t holds = 0;
    std::uint64_t equality = 0;
    std::uint64_t violated = 0;
    std::uint64_t undecided = 0;
    std::optional<InstanceRecord> worst;  // smallest slack among decided instances
    std::vector<Finding> findings;
    std::vector<InstanceRecord> records;  // instance order
    std::vector<std::uint64_t> seeds;     // every seed used for random models or lists

    friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

/// Deterministic for a fixed job, independent of the worker count.
ScanSummary run_scan(const ScanJob& job);

/// Runs the checker named in a finding's replay document.
IneqReport replay_finding(const nlohmann::json& replay, const CompareOptions& options = default_compare_options());

/// Scans at most `budget` instances and returns the violations.
std::vector<Finding> search_counterexample(const std::string& ineq, const GraphSource& graphs,
                                           const ModelSource& models, std::uint64_t budget,
                                           unsigned jobs = 1,
                                           const CompareOptions& options = default_compare_options());

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_report_format(std::string_view text);

std::string emit_report(const ScanSummary& summary, ReportFormat format);

/// Writes emit_report output to path; throws Error(IoError).
void write_report(const ScanSummary& summary, ReportFormat format, const std::string& path);

nlohmann::json summary_to_json(const ScanSummary& summary);
ScanSummary summary_from_json(const nlohmann::json& j);

}  // namespace homlab
