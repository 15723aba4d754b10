#include "homlab/scan.hpp"

#include "homlab/errors.hpp"
#include "homlab/lemmas.hpp"
#include "random_util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace homlab {

namespace {

using nlohmann::json;

constexpr std::string_view kLemmaPrefix = "lemma:";

enum class IneqKind { ReverseSidorenko, SemiproperList, CliqueMax, Bst, SwapInjection, Lemma };

struct ParsedIneq {
    IneqKind kind;
    LemmaId lemma = LemmaId::SymMonotone;
};

ParsedIneq parse_ineq(std::string_view id) {
    if (id == "reverse-sidorenko") return {IneqKind::ReverseSidorenko};
    if (id == "semiproper-list") return {IneqKind::SemiproperList};
    if (id == "clique-max") return {IneqKind::CliqueMax};
    if (id == "bst") return {IneqKind::Bst};
    if (id == "swap-injection") return {IneqKind::SwapInjection};
    if (id.substr(0, kLemmaPrefix.size()) == kLemmaPrefix)
        return {IneqKind::Lemma, parse_lemma_id(id.substr(kLemmaPrefix.size()))};
    fail(ErrorKind::InvalidArgument, "unknown inequality id '" + std::string(id) + "'");
}

bool needs_graph(IneqKind k) { return k != IneqKind::Lemma; }
bool needs_model(IneqKind k) { return k != IneqKind::Lemma && k != IneqKind::SwapInjection; }

std::string graph_label(const Graph& g) { return "g6:" + to_graph6(g); }

std::vector<ColorSet> random_lists(int n, int q, std::uint64_t seed) {
    std::mt19937_64 rng(detail::splitmix64(seed));
    std::vector<ColorSet> lists;
    for (int v = 0; v < n; ++v) lists.push_back(static_cast<ColorSet>(detail::draw(rng, 1, (1L << q) - 1)));
    return lists;
}

IneqReport swap_report(const Graph& g, const CompareOptions& o) {
    const SwapInjectionResult r = swap_injection_check(g);
    IneqReport rep = single_report("swap-injection", graph_label(g), Expr::constant(Rational(r.pairs)),
                                   Expr::constant(Rational(r.target_size)), o);
    if (!r.images_distinct || !r.images_valid) {
        rep.verdict = Verdict::Violated;
        rep.notes.push_back(!r.images_distinct ? "two pairs share an image" : "an image is not independent");
    }
    return rep;
}

json lists_json(const std::vector<ColorSet>& lists) {
    json a = json::array();
    for (ColorSet s : lists) {
        json l = json::array();
        for (int c = 0; c < kMaxColors; ++c)
            if (s >> c & 1) l.push_back(c);
        a.push_back(l);
    }
    return a;
}

std::vector<ColorSet> lists_from(const json& j) {
    std::vector<ColorSet> lists;
    for (const auto& l : j) {
        ColorSet s = 0;
        for (const auto& c : l) {
            const int x = c.get<int>();
            if (x < 0 || x >= kMaxColors) fail(ErrorKind::ParseError, "list color out of range");
            s |= ColorSet{1} << x;
        }
        lists.push_back(s);
    }
    return lists;
}

struct LabeledModel {
    std::string label;
    Model model;
    std::optional<std::uint64_t> seed;
};

// One unit of work: everything needed to build the replay document.
struct Task {
    std::size_t graph = 0;
    std::size_t model = 0;
    std::optional<std::uint64_t> seed;  // list seed or lemma seed
};

struct Outcome {
    InstanceRecord record;
    std::optional<Finding> finding;
};

ScanOutcome outcome_of(Verdict v) {
    switch (v) {
        case Verdict::Holds: return ScanOutcome::Holds;
        case Verdict::Equality: return ScanOutcome::Equality;
        case Verdict::Violated: return ScanOutcome::Violated;
    }
    return ScanOutcome::Undecided;
}

CompareOptions exact_options(CompareOptions o) {
    o.bit_cap = std::numeric_limits<std::uint64_t>::max();
    return o;
}

class Scanner {
public:
    Scanner(const ScanJob& job, std::uint64_t budget) : job_(job), ineq_(parse_ineq(job.ineq)) {
        load_graphs();
        load_models();
        build_tasks(budget);
    }

    ScanSummary run() {
        std::vector<Outcome> results(tasks_.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < tasks_.size(); i = next++) results[i] = evaluate(tasks_[i]);
        };
        const unsigned workers = std::max(1u, std::min<unsigned>(job_.jobs, static_cast<unsigned>(tasks_.size())));
        if (workers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        return summarize(std::move(results));
    }

private:
    void load_graphs() {
        if (!needs_graph(ineq_.kind)) {
            graphs_.emplace_back("-", Graph());
            return;
        }
        if (!job_.graphs.names.empty()) {
            for (const auto& name : job_.graphs.names) {
                Graph g = load_graph(name);
                graphs_.emplace_back(graph_label(g), std::move(g));
            }
            return;
        }
        const auto& src = job_.graphs;
        if (src.max_vertices > kMaxScanVertices)
            fail(ErrorKind::LimitExceeded, "scan enumeration is limited to " + std::to_string(kMaxScanVertices) + " vertices");
        if (src.min_vertices < 1 || src.max_vertices < src.min_vertices)
            fail(ErrorKind::InvalidArgument, "empty vertex range for the scan");
        for (Graph& g : enumerate_graphs_up_to(src.min_vertices, src.max_vertices, src.filters))
            graphs_.emplace_back(graph_label(g), std::move(g));
    }

    void load_models() {
        if (!needs_model(ineq_.kind)) {
            models_.push_back({"-", Model(), std::nullopt});
            return;
        }
        for (const auto& name : job_.models.names) models_.push_back({name, load_model(name), std::nullopt});
        const auto& src = job_.models;
        for (std::uint64_t s = src.seed_begin; s < src.seed_end; ++s)
            for (int q : src.random_q)
                models_.push_back({"random:" + std::string(to_string(src.random_kind)) + ":" + std::to_string(q) +
                                       ":" + std::to_string(s),
                                   random_model(q, s, src.random_kind), s});
        if (models_.empty()) fail(ErrorKind::InvalidArgument, "the scan has no models");
    }

    void build_tasks(std::uint64_t budget) {
        const int per_cell = std::max(1, job_.instances_per_cell);
        const bool seeded = ineq_.kind == IneqKind::SemiproperList || ineq_.kind == IneqKind::Lemma;
        const std::uint64_t base =
            ineq_.kind == IneqKind::Lemma ? job_.models.seed_begin : job_.list_seed_begin;
        for (std::size_t g = 0; g < graphs_.size(); ++g)
            for (std::size_t m = 0; m < models_.size(); ++m)
                for (int i = 0; i < (seeded ? per_cell : 1); ++i) {
                    if (tasks_.size() >= budget) return;
                    Task t{g, m, std::nullopt};
                    if (seeded) t.seed = base + static_cast<std::uint64_t>(i);
                    tasks_.push_back(t);
                }
    }

    std::string instance_id(const Task& t) const {
        std::string id;
        if (needs_graph(ineq_.kind)) id = graphs_[t.graph].first;
        if (needs_model(ineq_.kind)) id += "|" + models_[t.model].label;
        if (t.seed) id += (id.empty() ? "seed=" : "|seed=") + std::to_string(*t.seed);
        return id;
    }

    json replay_doc(const Task& t) const {
        json r{{"ineq", job_.ineq}};
        if (needs_graph(ineq_.kind)) r["graph"] = graphs_[t.graph].first;
        if (needs_model(ineq_.kind)) {
            r["model"] = model_to_json(models_[t.model].model);
            r["model_label"] = models_[t.model].label;
        }
        if (t.seed) r["seed"] = *t.seed;
        if (ineq_.kind == IneqKind::SemiproperList) {
            const Model& m = models_[t.model].model;
            r["lists"] = lists_json(random_lists(graphs_[t.graph].second.vertex_count(), m.q(), *t.seed));
        }
        if (ineq_.kind == IneqKind::Lemma) r["instance"] = lemma_instance_to_json(random_lemma_instance(ineq_.lemma, *t.seed));
        return r;
    }

    Outcome evaluate(const Task& t) const {
        Outcome out;
        InstanceRecord& rec = out.record;
        rec.instance_id = instance_id(t);
        rec.graph = graphs_[t.graph].first;
        rec.model = models_[t.model].label;
        try {
            const json replay = replay_doc(t);
            IneqReport rep = replay_finding(replay, job_.compare);
            if (rep.verdict == Verdict::Violated && !rep.exact)
                rep = replay_finding(replay, exact_options(job_.compare));
            rec.outcome = outcome_of(rep.verdict);
            rec.exact = rep.exact;
            rec.slack_log10 = rep.slack_log10;
            if (rep.verdict == Verdict::Violated) out.finding = Finding{rec.instance_id, replay, report_to_json(rep)};
        } catch (const std::exception& e) {
            rec.outcome = ScanOutcome::Undecided;
            rec.exact = false;
            rec.slack_log10 = 0.0;
            rec.error = e.what();
        }
        return out;
    }

    ScanSummary summarize(std::vector<Outcome> results) const {
        ScanSummary s;
        s.ineq = job_.ineq;
        std::set<std::uint64_t> seeds;
        for (const auto& m : models_)
            if (m.seed) seeds.insert(*m.seed);
        for (const auto& t : tasks_)
            if (t.seed) seeds.insert(*t.seed);
        s.seeds.assign(seeds.begin(), seeds.end());
        for (auto& r : results) {
            ++s.instances;
            switch (r.record.outcome) {
                case ScanOutcome::Holds: ++s.holds; break;
                case ScanOutcome::Equality: ++s.equality; break;
                case ScanOutcome::Violated: ++s.violated; break;
                case ScanOutcome::Undecided: ++s.undecided; break;
            }
            if (r.record.outcome != ScanOutcome::Undecided &&
                (!s.worst || r.record.slack_log10 < s.worst->slack_log10))
                s.worst = r.record;
            if (r.finding) s.findings.push_back(std::move(*r.finding));
            s.records.push_back(std::move(r.record));
        }
        return s;
    }

    const ScanJob& job_;
    ParsedIneq ineq_;
    std::vector<std::pair<std::string, Graph>> graphs_;
    std::vector<LabeledModel> models_;
    std::vector<Task> tasks_;
};

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json slack_json(double s) {
    if (std::isinf(s)) return s > 0 ? "inf" : "-inf";
    return s;
}

double slack_from(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        fail(ErrorKind::ParseError, "bad slack value '" + s + "'");
    }
    return j.get<double>();
}

ScanOutcome parse_outcome(std::string_view s) {
    for (ScanOutcome o : {ScanOutcome::Holds, ScanOutcome::Equality, ScanOutcome::Violated, ScanOutcome::Undecided})
        if (to_string(o) == s) return o;
    fail(ErrorKind::ParseError, "unknown outcome '" + std::string(s) + "'");
}

json record_json(const InstanceRecord& r) {
    json j{{"instance_id", r.instance_id}, {"graph", r.graph},   {"model", r.model},
           {"verdict", to_string(r.outcome)}, {"exact", r.exact}, {"slack_log10", slack_json(r.slack_log10)}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

InstanceRecord record_from(const json& j) {
    InstanceRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.graph = j.at("graph").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.outcome = parse_outcome(j.at("verdict").get<std::string>());
    r.exact = j.at("exact").get<bool>();
    r.slack_log10 = slack_from(j.at("slack_log10"));
    r.error = j.value("error", std::string{});
    return r;
}

}  // namespace

bool is_known_ineq(std::string_view id) {
    try {
        parse_ineq(id);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string_view to_string(ScanOutcome o) {
    switch (o) {
        case ScanOutcome::Holds: return "holds";
        case ScanOutcome::Equality: return "equality";
        case ScanOutcome::Violated: return "violated";
        case ScanOutcome::Undecided: return "undecided";
    }
    return "?";
}

ScanSummary run_scan(const ScanJob& job) {
    return Scanner(job, std::numeric_limits<std::uint64_t>::max()).run();
}

IneqReport replay_finding(const json& replay, const CompareOptions& o) {
    try {
        const ParsedIneq ineq = parse_ineq(replay.at("ineq").get<std::string>());
        if (ineq.kind == IneqKind::Lemma) {
            LemmaInstance inst = lemma_instance_from_json(replay.at("instance"));
            if (inst.id != ineq.lemma) fail(ErrorKind::InvalidArgument, "replay instance does not match its lemma id");
            return check_local_lemma(inst, o);
        }
        const Graph g = load_graph(replay.at("graph").get<std::string>());
        if (ineq.kind == IneqKind::SwapInjection) return swap_report(g, o);
        const Model m = replay.at("model").is_string() ? load_model(replay.at("model").get<std::string>())
                                                       : model_from_json(replay.at("model"));
        std::optional<Constraints> constraints;
        if (replay.contains("constraints")) {
            constraints.emplace();
            for (const auto& c : replay.at("constraints")) {
                VertexConstraint vc;
                for (const auto& w : c) vc.weights.push_back(parse_rational(w.get<std::string>()));
                constraints->push_back(std::move(vc));
            }
        }
        const Constraints* cp = constraints ? &*constraints : nullptr;
        switch (ineq.kind) {
            case IneqKind::ReverseSidorenko: return check_reverse_sidorenko(g, m, cp, o);
            case IneqKind::CliqueMax: return check_clique_max(g, m, cp, o);
            case IneqKind::Bst: return check_bst(g, m, o);
            case IneqKind::SemiproperList: {
                const auto lists = lists_from(replay.at("lists"));
                return check_semiproper_list(g, lists, m.q(), m.looped(), o);
            }
            default: break;
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("replay document: ") + e.what());
    }
    fail(ErrorKind::InvalidArgument, "unsupported replay document");
}

std::vector<Finding> search_counterexample(const std::string& ineq, const GraphSource& graphs,
                                           const ModelSource& models, std::uint64_t budget, unsigned jobs,
                                           const CompareOptions& options) {
    ScanJob job;
    job.ineq = ineq;
    job.graphs = graphs;
    job.models = models;
    job.jobs = jobs;
    job.finding_mode = true;
    job.compare = options;
    return Scanner(job, budget).run().findings;
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "text") return ReportFormat::Text;
    fail(ErrorKind::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string emit_report(const ScanSummary& s, ReportFormat format) {
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Json: out << summary_to_json(s).dump(2) << "\n"; break;
        case ReportFormat::Csv:
            out << "instance_id,graph,model,verdict,exact,slack_log10\n";
            for (const auto& r : s.records)
                out << csv_field(r.instance_id) << ',' << csv_field(r.graph) << ',' << csv_field(r.model) << ','
                    << to_string(r.outcome) << ',' << (r.exact ? "true" : "false") << ','
                    << format_double(r.slack_log10) << "\n";
            break;
        case ReportFormat::Text:
            out << "inequality: " << s.ineq << "\n"
                << "instances: " << s.instances << "\n"
                << "holds: " << s.holds << "  equality: " << s.equality << "  violated: " << s.violated
                << "  undecided: " << s.undecided << "\n";
            if (s.worst)
                out << "tightest: " << s.worst->instance_id << " (" << to_string(s.worst->outcome)
                    << ", slack_log10 " << format_double(s.worst->slack_log10) << ")\n";
            for (const auto& r : s.records)
                if (r.outcome == ScanOutcome::Undecided) out << "undecided: " << r.instance_id << ": " << r.error << "\n";
            for (const auto& f : s.findings) {
                out << "finding: " << f.instance_id << "\n";
                out << format_report(report_from_json(f.report));
            }
            break;
    }
    return out.str();
}

void write_report(const ScanSummary& summary, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << emit_report(summary, format);
    if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

json summary_to_json(const ScanSummary& s) {
    json records = json::array();
    for (const auto& r : s.records) records.push_back(record_json(r));
    json findings = json::array();
    for (const auto& f : s.findings)
        findings.push_back(json{{"instance_id", f.instance_id}, {"replay", f.replay}, {"report", f.report}});
    return json{{"ineq", s.ineq},
                {"instances", s.instances},
                {"histogram",
                 {{"holds", s.holds}, {"equality", s.equality}, {"violated", s.violated}, {"undecided", s.undecided}}},
                {"worst", s.worst ? record_json(*s.worst) : json(nullptr)},
                {"findings", findings},
                {"records", records},
                {"seeds", s.seeds}};
}

ScanSummary summary_from_json(const json& j) {
    try {
        ScanSummary s;
        s.ineq = j.at("ineq").get<std::string>();
        s.instances = j.at("instances").get<std::uint64_t>();
        const auto& h = j.at("histogram");
        s.holds = h.at("holds").get<std::uint64_t>();
        s.equality = h.at("equality").get<std::uint64_t>();
        s.violated = h.at("violated").get<std::uint64_t>();
        s.undecided = h.at("undecided").get<std::uint64_t>();
        if (!j.at("worst").is_null()) s.worst = record_from(j.at("worst"));
        for (const auto& f : j.at("findings"))
            s.findings.push_back(Finding{f.at("instance_id").get<std::string>(), f.at("replay"), f.at("report")});
        for (const auto& r : j.at("records")) s.records.push_back(record_from(r));
        s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (s.holds + s.equality + s.violated + s.undecided != s.instances)
            fail(ErrorKind::ParseError, "histogram does not add up to the instance count");
        return s;
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("scan summary JSON: ") + e.what());
    }
}

}  // namespace homlab
