#include "homlab/errors.hpp"
#include "homlab/scan.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace homlab;

namespace {

ScanJob small_job() {
    ScanJob job;
    job.ineq = "reverse-sidorenko";
    job.graphs.max_vertices = 5;
    job.graphs.filters.no_isolated = true;
    job.models.names = {"Kq:3", "heps:1/10"};
    job.models.random_q = {2, 3};
    job.models.seed_begin = 3;
    job.models.seed_end = 6;
    return job;
}

}  // namespace

TEST(Scan, IneqIds) {
    for (const char* id : {"reverse-sidorenko", "semiproper-list", "clique-max", "bst", "swap-injection", "lemma:local-123"})
        EXPECT_TRUE(is_known_ineq(id)) << id;
    EXPECT_FALSE(is_known_ineq("lemma:nope"));
    EXPECT_FALSE(is_known_ineq("sidorenko"));
}

TEST(Scan, WorkerCountIndependence) {
    ScanJob job = small_job();
    job.jobs = 1;
    const ScanSummary one = run_scan(job);
    job.jobs = 4;
    const ScanSummary four = run_scan(job);
    EXPECT_EQ(one, four);
    EXPECT_EQ(emit_report(one, ReportFormat::Json), emit_report(four, ReportFormat::Json));
    EXPECT_EQ(one.instances, one.holds + one.equality + one.violated + one.undecided);
    EXPECT_EQ(one.seeds, (std::vector<std::uint64_t>{3, 4, 5}));
}

TEST(Scan, FindingsReplayExactly) {
    const ScanSummary s = run_scan(small_job());
    ASSERT_FALSE(s.findings.empty());
    EXPECT_EQ(s.findings.size(), s.violated);
    for (const auto& f : s.findings) {
        const IneqReport r = replay_finding(f.replay);
        EXPECT_EQ(r.verdict, Verdict::Violated);
        EXPECT_TRUE(r.exact);
    }
}

TEST(Scan, SeedsRegenerateModels) {
    const ScanSummary s = run_scan(small_job());
    for (const auto& f : s.findings) {
        const std::string label = f.replay.at("model_label");
        EXPECT_EQ(model_from_json(f.replay.at("model")), load_model(label));
    }
    EXPECT_EQ(load_model("random:general:3:4"), random_model(3, 4, RandomModelKind::General));
}

TEST(Scan, TriangleGraphsWithHepsFindK3) {
    ScanJob job;
    job.ineq = "reverse-sidorenko";
    job.graphs.max_vertices = 5;
    job.graphs.filters.with_triangle = true;
    job.graphs.filters.no_isolated = true;
    job.models.names = {"heps:1/10"};
    job.finding_mode = true;
    const ScanSummary s = run_scan(job);
    const std::string k3 = "g6:" + to_graph6(complete_graph(3));
    EXPECT_TRUE(std::any_of(s.findings.begin(), s.findings.end(),
                            [&](const Finding& f) { return f.replay.at("graph") == k3; }));
}

TEST(Scan, ErrorsAreCollectedNotFatal) {
    ScanJob job;
    job.ineq = "reverse-sidorenko";
    job.graphs.names = {"E2", "K2"};
    job.models.names = {"hardcore"};
    const ScanSummary s = run_scan(job);
    EXPECT_EQ(s.instances, 2u);
    EXPECT_EQ(s.undecided, 1u);
    EXPECT_FALSE(s.records[0].error.empty());
    EXPECT_EQ(s.records[1].outcome, ScanOutcome::Equality);
}

TEST(Scan, EnumerationBoundIsEnforced) {
    ScanJob job = small_job();
    job.graphs.max_vertices = 8;
    EXPECT_THROW(run_scan(job), Error);
}

TEST(Scan, SemiproperListsAndLemmas) {
    ScanJob job;
    job.ineq = "semiproper-list";
    job.graphs.max_vertices = 4;
    job.graphs.filters.no_isolated = true;
    job.models.names = {"Kq-looped:3,1"};
    job.instances_per_cell = 3;
    job.list_seed_begin = 10;
    const ScanSummary s = run_scan(job);
    EXPECT_EQ(s.violated + s.undecided, 0u);
    EXPECT_EQ(s.seeds, (std::vector<std::uint64_t>{10, 11, 12}));

    ScanJob lemma;
    lemma.ineq = "lemma:color-bcd";
    lemma.instances_per_cell = 20;
    const ScanSummary ls = run_scan(lemma);
    EXPECT_EQ(ls.instances, 20u);
    EXPECT_EQ(ls.violated + ls.undecided, 0u);
}

TEST(Search, WidomRowlinsonStars) {
    GraphSource stars;
    for (int b = 1; b <= 5; ++b) stars.names.push_back("S" + std::to_string(b));
    ModelSource wr;
    wr.names = {"wr"};
    const auto findings = search_counterexample("clique-max", stars, wr, 100);
    const std::string k14 = "g6:" + to_graph6(star_graph(4));
    EXPECT_TRUE(std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.replay.at("graph") == k14; }));
    for (const auto& f : findings) EXPECT_EQ(replay_finding(f.replay).verdict, Verdict::Violated);
    EXPECT_TRUE(search_counterexample("clique-max", stars, wr, 0).empty());
}

TEST(Report, CsvShape) {
    ScanSummary empty;
    empty.ineq = "bst";
    EXPECT_EQ(emit_report(empty, ReportFormat::Csv), "instance_id,graph,model,verdict,exact,slack_log10\n");

    ScanJob job;
    job.ineq = "clique-max";
    job.graphs.names = {"S4"};
    job.models.names = {"wr"};
    const std::string csv = emit_report(run_scan(job), ReportFormat::Csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_NE(csv.find(",violated,true,"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
    const ScanSummary s = run_scan(small_job());
    EXPECT_EQ(summary_from_json(nlohmann::json::parse(emit_report(s, ReportFormat::Json))), s);
    ScanSummary empty;
    EXPECT_EQ(summary_from_json(summary_to_json(empty)), empty);
    EXPECT_THROW(write_report(s, ReportFormat::Csv, "/nonexistent/dir/out.csv"), Error);
    EXPECT_THROW(parse_report_format("xml"), Error);
}
