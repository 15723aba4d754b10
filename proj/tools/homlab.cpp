#include "homlab/errors.hpp"
#include "homlab/homcount.hpp"
#include "homlab/inequalities.hpp"
#include "homlab/lemmas.hpp"
#include "homlab/scan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace homlab;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFindings = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot open '" + out_path + "' for writing");
    out << text;
}

// "a:b" is the half-open range [a, b); a bare "n" means [0, n).
std::pair<std::uint64_t, std::uint64_t> parse_seeds(const std::string& text) {
    try {
        const auto colon = text.find(':');
        if (colon == std::string::npos) return {0, std::stoull(text)};
        return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidArgument, "bad --seeds value '" + text + "'");
    }
}

EnumerationOptions parse_filters(const std::vector<std::string>& names) {
    EnumerationOptions o;
    for (const auto& f : names) {
        if (f == "connected") o.connected = true;
        else if (f == "no-isolated") o.no_isolated = true;
        else if (f == "triangle-free") o.triangle_free = true;
        else if (f == "with-triangle") o.with_triangle = true;
        else if (f == "labeled") o.dedup_isomorphism = false;
        else fail(ErrorKind::InvalidArgument, "unknown filter '" + f + "'");
    }
    return o;
}

struct Common {
    std::string graph;
    std::string model;
    std::string constraints;
    std::string lists;
    std::string ineq;
    std::string format = "text";
    std::string out;
    std::uint64_t bitcap = 0;
};

CompareOptions compare_options(const Common& c) {
    CompareOptions o = default_compare_options();
    if (c.bitcap > 0) o.bit_cap = c.bitcap;
    return o;
}

std::optional<Constraints> load_constraints(const Common& c, const Graph& g, const Model& m) {
    if (c.constraints.empty()) return std::nullopt;
    return parse_constraints(read_file(c.constraints), g.vertex_count(), m.q());
}

std::vector<ColorSet> load_lists(const Common& c, const Graph& g, const Model& m) {
    if (c.lists.empty()) fail(ErrorKind::InvalidArgument, "semiproper-list needs --lists");
    std::vector<ColorSet> lists;
    for (const auto& vc : parse_constraints(read_file(c.lists), g.vertex_count(), m.q())) {
        if (!vc.is_list()) fail(ErrorKind::InvalidArgument, "--lists entries must be 0/1");
        lists.push_back(vc.support());
    }
    return lists;
}

std::string render(const IneqReport& r, const std::string& format) {
    if (format == "json") return report_to_json(r).dump(2) + "\n";
    if (format == "text") return format_report(r);
    fail(ErrorKind::InvalidArgument, "reports support --format text or json");
}

int finish_report(const IneqReport& r, const Common& c) {
    emit(render(r, c.format), c.out);
    return r.verdict == Verdict::Violated ? kExitFindings : kExitOk;
}

int run_verify(const Common& c) {
    const CompareOptions o = compare_options(c);
    if (c.ineq.rfind("lemma:", 0) == 0) fail(ErrorKind::InvalidArgument, "use the lemma verb for lemma instances");
    const Graph g = load_graph(c.graph);
    if (c.ineq == "swap-injection") {
        nlohmann::json replay{{"ineq", c.ineq}, {"graph", "g6:" + to_graph6(g)}};
        return finish_report(replay_finding(replay, o), c);
    }
    const Model m = load_model(c.model);
    const auto cons = load_constraints(c, g, m);
    const Constraints* cp = cons ? &*cons : nullptr;
    if (c.ineq == "reverse-sidorenko") return finish_report(check_reverse_sidorenko(g, m, cp, o), c);
    if (c.ineq == "clique-max") return finish_report(check_clique_max(g, m, cp, o), c);
    if (c.ineq == "bst") return finish_report(check_bst(g, m, o), c);
    if (c.ineq == "semiproper-list")
        return finish_report(check_semiproper_list(g, load_lists(c, g, m), m.q(), m.looped(), o), c);
    fail(ErrorKind::InvalidArgument, "unknown inequality id '" + c.ineq + "'");
}

struct ScanArgs {
    std::vector<std::string> graphs;
    std::vector<std::string> models;
    std::vector<std::string> filters;
    int min_vertices = 1;
    int max_vertices = 0;
    std::string seeds;
    std::string random_kind = "general";
    std::vector<int> random_q;
    int instances = 1;
    std::uint64_t list_seed = 0;
    unsigned jobs = 1;
    std::uint64_t budget = 100000;
};

ScanJob make_job(const Common& c, const ScanArgs& a) {
    ScanJob job;
    job.ineq = c.ineq;
    if (!is_known_ineq(job.ineq)) fail(ErrorKind::InvalidArgument, "unknown inequality id '" + c.ineq + "'");
    job.graphs.names = a.graphs;
    if (!c.graph.empty()) job.graphs.names.insert(job.graphs.names.begin(), c.graph);
    job.graphs.min_vertices = a.min_vertices;
    job.graphs.max_vertices = a.max_vertices;
    job.graphs.filters = parse_filters(a.filters);
    job.models.names = a.models;
    if (!c.model.empty()) job.models.names.insert(job.models.names.begin(), c.model);
    if (!a.seeds.empty()) {
        std::tie(job.models.seed_begin, job.models.seed_end) = parse_seeds(a.seeds);
        job.models.random_kind = parse_random_model_kind(a.random_kind);
        job.models.random_q = a.random_q.empty() ? std::vector<int>{3} : a.random_q;
    }
    job.instances_per_cell = a.instances;
    job.list_seed_begin = a.list_seed;
    job.jobs = a.jobs;
    job.compare = compare_options(c);
    return job;
}

void log_summary(const ScanSummary& s) {
    std::cerr << "homlab: " << s.ineq << ": " << s.instances << " instances, " << s.holds << " holds, " << s.equality
              << " equality, " << s.violated << " violated, " << s.undecided << " undecided\n";
}

int run_scan_verb(const Common& c, const ScanArgs& a, bool finding_mode) {
    ScanJob job = make_job(c, a);
    job.finding_mode = finding_mode;
    const ScanSummary s = run_scan(job);
    log_summary(s);
    emit(emit_report(s, parse_report_format(c.format)), c.out);
    return s.findings.empty() ? kExitOk : kExitFindings;
}

int run_search(const Common& c, const ScanArgs& a) {
    const ScanJob job = make_job(c, a);
    const auto findings = search_counterexample(job.ineq, job.graphs, job.models, a.budget, job.jobs, job.compare);
    std::cerr << "homlab: " << findings.size() << " finding(s)\n";
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : findings)
        out.push_back({{"instance_id", f.instance_id}, {"replay", f.replay}, {"report", f.report}});
    emit(out.dump(2) + "\n", c.out);
    return findings.empty() ? kExitOk : kExitFindings;
}

int run_lemma(const Common& c, const std::string& file, const std::string& id, std::uint64_t seed) {
    LemmaInstance inst;
    if (!file.empty()) inst = load_lemma_instance(file);
    else if (!id.empty()) inst = random_lemma_instance(parse_lemma_id(id), seed);
    else fail(ErrorKind::InvalidArgument, "lemma needs --file or --id");
    return finish_report(check_local_lemma(inst, compare_options(c)), c);
}

int run_toy(const Common& c) {
    const auto reports = reproduce_toy_c6(compare_options(c));
    bool violated = false;
    std::string text;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        violated = violated || r.verdict == Verdict::Violated;
        text += format_report(r) + "\n";
        arr.push_back(report_to_json(r));
    }
    emit(c.format == "json" ? arr.dump(2) + "\n" : text, c.out);
    return violated ? kExitFindings : kExitOk;
}

int run_classify(const Common& c) {
    const Model m = load_model(c.model);
    const Classification k = classify_model(m);
    nlohmann::json j{{"model", c.model},
                     {"ferromagnetic", k.ferromagnetic},
                     {"antiferromagnetic", k.antiferromagnetic},
                     {"positive", k.positive_eigen_count},
                     {"zero", k.zero_eigen_count},
                     {"negative", k.negative_eigen_count}};
    if (c.format == "json") {
        emit(j.dump(2) + "\n", c.out);
    } else {
        std::ostringstream s;
        s << "eigenvalue signs (+/0/-): " << k.positive_eigen_count << "/" << k.zero_eigen_count << "/"
          << k.negative_eigen_count << "\nferromagnetic: " << (k.ferromagnetic ? "yes" : "no")
          << "\nantiferromagnetic: " << (k.antiferromagnetic ? "yes" : "no") << "\n";
        emit(s.str(), c.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact homomorphism counts and inequality checks"};
    app.require_subcommand(1);
    Common c;
    ScanArgs scan_args;
    std::string lemma_file, lemma_id;
    std::uint64_t lemma_seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "text, json or csv (scans)");
        sub->add_option("--out", c.out, "write the report here instead of stdout");
        sub->add_option("--bitcap", c.bitcap, "bit cap for the exact comparison path");
    };

    auto* count = app.add_subcommand("count", "exact weighted homomorphism count");
    count->add_option("--graph", c.graph, "named graph, g6:<code> or edge-list file")->required();
    count->add_option("--model", c.model, "named model or model file")->required();
    count->add_option("--constraints", c.constraints, "per-vertex weight file");
    add_common(count);

    auto* verify = app.add_subcommand("verify", "check one inequality instance");
    verify->add_option("--ineq", c.ineq, "reverse-sidorenko, semiproper-list, clique-max, bst, swap-injection")
        ->required();
    verify->add_option("--graph", c.graph)->required();
    verify->add_option("--model", c.model);
    verify->add_option("--constraints", c.constraints);
    verify->add_option("--lists", c.lists, "per-vertex color lists for semiproper-list");
    add_common(verify);

    auto add_scan = [&](CLI::App* sub) {
        sub->add_option("--ineq", c.ineq)->required();
        sub->add_option("--graph", scan_args.graphs, "explicit graphs (repeatable); otherwise enumerate");
        sub->add_option("--model", scan_args.models, "named models (repeatable)");
        sub->add_option("--min-vertices", scan_args.min_vertices);
        sub->add_option("--max-vertices", scan_args.max_vertices);
        sub->add_option("--filter", scan_args.filters, "connected, no-isolated, triangle-free, with-triangle, labeled");
        sub->add_option("--seeds", scan_args.seeds, "random model seeds a:b (or n for 0:n)");
        sub->add_option("--random-kind", scan_args.random_kind, "general, psd, antiferro-2spin, ferro-2spin");
        sub->add_option("--random-q", scan_args.random_q, "color counts of the random models");
        sub->add_option("--instances", scan_args.instances, "list assignments per cell, or lemma instances");
        sub->add_option("--list-seed", scan_args.list_seed);
        sub->add_option("--jobs", scan_args.jobs);
        add_common(sub);
    };
    auto* scan = app.add_subcommand("scan", "scan a graph x model grid");
    add_scan(scan);
    auto* search = app.add_subcommand("search", "collect violations within a budget");
    add_scan(search);
    search->add_option("--budget", scan_args.budget);

    auto* lemma = app.add_subcommand("lemma", "check a local lemma instance");
    lemma->add_option("--file", lemma_file, "lemma instance JSON");
    lemma->add_option("--id", lemma_id, "random instance of this lemma id");
    lemma->add_option("--seed", lemma_seed);
    add_common(lemma);

    auto* toy = app.add_subcommand("toy-c6", "every step of the worked C6 list colouring");
    add_common(toy);

    auto* classify = app.add_subcommand("classify", "eigenvalue sign pattern of a model");
    classify->add_option("--model", c.model)->required();
    add_common(classify);

    auto* eps = app.add_subcommand("eps-poly", "hom(G, H_eps) as a polynomial in eps");
    eps->add_option("--graph", c.graph)->required();
    add_common(eps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            const Graph g = load_graph(c.graph);
            const Model m = load_model(c.model);
            const auto cons = load_constraints(c, g, m);
            emit(format_rational(hom(g, m, cons ? &*cons : nullptr)) + "\n", c.out);
            return kExitOk;
        }
        if (*verify) return run_verify(c);
        if (*scan) return run_scan_verb(c, scan_args, false);
        if (*search) {
            c.format = c.format == "text" ? "json" : c.format;
            return run_search(c, scan_args);
        }
        if (*lemma) return run_lemma(c, lemma_file, lemma_id, lemma_seed);
        if (*toy) return run_toy(c);
        if (*classify) return run_classify(c);
        if (*eps) {
            emit(hom_eps_polynomial(load_graph(c.graph)).to_string() + "\n", c.out);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "homlab: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "homlab: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
