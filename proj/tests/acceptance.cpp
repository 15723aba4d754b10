// Acceptance driver: `acceptance <n>` runs criterion n and prints one
// PASS/FAIL line. Exit status 0 on PASS.

#include "homlab/enumerate.hpp"
#include "homlab/homcount.hpp"
#include "homlab/inequalities.hpp"
#include "homlab/lemmas.hpp"
#include "homlab/scan.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace homlab;

namespace {

struct Result {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

bool decided_ok(const ScanSummary& s) { return s.violated == 0 && s.undecided == 0; }

std::string histogram(const ScanSummary& s) {
    std::ostringstream o;
    o << s.instances << " instances (" << s.holds << " holds, " << s.equality << " equality, " << s.violated
      << " violated, " << s.undecided << " undecided)";
    return o.str();
}

std::vector<std::string> complete_looped_models(int max_q) {
    std::vector<std::string> names;
    for (int q = 1; q <= max_q; ++q)
        for (int l = 0; l <= q; ++l) names.push_back("Kq-looped:" + std::to_string(q) + "," + std::to_string(l));
    return names;
}

void c1(Result& r) {
    struct Case {
        const char* label;
        Graph g;
        Model m;
        long expected;
    };
    const std::vector<Case> cases{
        {"hom(C6,K3)", cycle_graph(6), model_complete_looped(3, 0), 66},
        {"hom(K22,K3)", biclique(2, 2), model_complete_looped(3, 0), 18},
        {"i(C6)", cycle_graph(6), model_hardcore(), 18},
        {"i(K22)", biclique(2, 2), model_hardcore(), 7},
        {"hom(K2,WR)", complete_graph(2), model_widom_rowlinson(), 7},
        {"hom(K5,WR)", complete_graph(5), model_widom_rowlinson(), 63},
        {"hom(K14,WR)", star_graph(4), model_widom_rowlinson(), 113},
    };
    for (const auto& c : cases) {
        const Rational v = hom(c.g, c.m);
        r.require(v == oracle::hom(c.g, c.m), std::string(c.label) + " disagrees with brute force");
        r.require(v == c.expected, std::string(c.label) + " = " + format_rational(v));
        r.detail << " " << c.label << "=" << format_rational(v);
    }
    r.require(oracle::independent_sets(cycle_graph(6)) == 18 && oracle::independent_sets(biclique(2, 2)) == 7,
              "independent-set oracle");
}

void c2(Result& r) {
    const IneqReport a = check_reverse_sidorenko(cycle_graph(6), model_complete_looped(3, 0));
    r.require(a.verdict == Verdict::Holds && a.exact, "66^2 <= 18^3 not decided exactly");
    r.require(pow_int(Rational(66), 2) == 4356 && pow_int(Rational(18), 3) == 5832, "powers");
    const IneqReport b = check_reverse_sidorenko(cycle_graph(6), model_hardcore());
    r.require(b.verdict == Verdict::Holds && b.exact, "18^4 <= 7^6 not decided exactly");
    r.require(b.lhs.exact_value() == Rational(18), "i(C6) side");
    r.require(compare(b.rhs, Expr::from(PowerProduct::of(7, Rational(3, 2)))).ordering == Ordering::Equal, "7^(6/4) side");
    r.require(pow_int(Rational(18), 4) == 104976 && pow_int(Rational(7), 6) == 117649, "powers");
    r.detail << " 4356 <= 5832 (" << to_string(a.verdict) << "), 104976 <= 117649 (" << to_string(b.verdict) << ")";
}

void c3(Result& r) {
    PowerProduct rhs = PowerProduct::of(7, 2);
    rhs.multiply(63, Rational(1, 5));
    const Comparison c = compare_power_products(PowerProduct::of(113), rhs);
    r.require(c.ordering == Ordering::Greater && c.exact, "113 vs 7^2 63^(1/5)");
    r.require(pow_int(BigInt(113), 5) == BigInt("18424351793"), "113^5");
    r.require(pow_int(BigInt(7), 10) * 63 == BigInt("17795940687"), "7^10 * 63");
    const IneqReport rep = check_clique_max(star_graph(4), model_widom_rowlinson());
    r.require(rep.verdict == Verdict::Violated && rep.exact, "clique-max report");
    r.detail << " 18424351793 > 17795940687, clique-max verdict " << to_string(rep.verdict);
}

void c4(Result& r) {
    std::size_t count = 0;
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {})) {
        const auto c = hom_eps_polynomial(g).coefficients;
        const long e = g.edge_count();
        const BigInt t = oracle::triangles(g);
        const std::vector<Rational> want{1, e, Rational(binomial(static_cast<unsigned long>(e), 2)),
                                         Rational(binomial(static_cast<unsigned long>(e), 3) + t)};
        for (std::size_t i = 0; i < 4; ++i) {
            const Rational got = i < c.size() ? c[i] : Rational(0);
            if (got != want[i]) r.require(false, "c" + std::to_string(i) + " of g6:" + to_graph6(g));
        }
        ++count;
    }
    r.detail << " " << count << " graphs";
}

void c5(Result& r) {
    const IneqReport k3 = check_reverse_sidorenko(complete_graph(3), model_h_eps(Rational(1, 10)));
    r.require(k3.verdict == Verdict::Violated && k3.exact, "K3 with H_{1/10}");
    ScanJob job;
    job.ineq = "reverse-sidorenko";
    job.graphs.max_vertices = 5;
    job.graphs.filters.with_triangle = true;
    job.graphs.filters.no_isolated = true;
    job.models.names = {"heps:1/10"};
    job.finding_mode = true;
    const ScanSummary s = run_scan(job);
    r.require(!s.findings.empty(), "scan found nothing");
    for (const auto& f : s.findings) {
        const IneqReport back = replay_finding(f.replay);
        r.require(back.verdict == Verdict::Violated && back.exact, "finding does not replay: " + f.instance_id);
    }
    r.detail << " K3 " << to_string(k3.verdict) << " (exact); scan " << histogram(s) << ", " << s.findings.size()
             << " findings";
}

void c6(Result& r) {
    const auto reports = reproduce_toy_c6();
    std::map<std::string, IneqReport> by_id;
    for (const auto& rep : reports) {
        by_id.emplace(rep.ineq, rep);
        r.require(rep.verdict != Verdict::Violated, rep.ineq + " violated");
    }
    for (const char* id : {"toy-split", "toy-c4-equal", "toy-post-cs-bottom"}) {
        const auto it = by_id.find(id);
        r.require(it != by_id.end() && it->second.verdict == Verdict::Equality && it->second.exact,
                  std::string(id) + " not an exact equality");
    }
    r.detail << " " << reports.size() << " steps";
}

void c7(Result& r) {
    ScanJob job;
    job.ineq = "reverse-sidorenko";
    job.graphs.max_vertices = 6;
    job.graphs.filters.triangle_free = true;
    job.graphs.filters.no_isolated = true;
    job.models.names = complete_looped_models(4);
    job.models.random_kind = RandomModelKind::General;
    job.models.random_q = {3};
    job.models.seed_begin = 0;
    job.models.seed_end = 50;
    const ScanSummary s = run_scan(job);
    r.require(decided_ok(s), "violations or undecided instances");
    r.detail << " " << histogram(s);
}

void c8(Result& r) {
    ScanJob job;
    job.ineq = "semiproper-list";
    job.graphs.max_vertices = 5;
    job.graphs.filters.no_isolated = true;
    job.models.names = complete_looped_models(3);
    job.instances_per_cell = 20;
    const ScanSummary s = run_scan(job);
    r.require(decided_ok(s), "violations or undecided instances");
    r.detail << " " << histogram(s);
}

void c9(Result& r) {
    ScanJob job;
    job.ineq = "clique-max";
    job.graphs.max_vertices = 6;
    job.models.random_kind = RandomModelKind::Psd;
    job.models.random_q = {3};
    job.models.seed_begin = 0;
    job.models.seed_end = 50;
    const ScanSummary s = run_scan(job);
    r.require(decided_ok(s), "violations or undecided instances");
    r.detail << " " << histogram(s);
}

void c10(Result& r) {
    ScanJob job;
    job.ineq = "bst";
    job.graphs.max_vertices = 6;
    job.models.random_kind = RandomModelKind::Antiferro2Spin;
    job.models.random_q = {2};
    job.models.seed_begin = 0;
    job.models.seed_end = 50;
    const ScanSummary s = run_scan(job);
    r.require(decided_ok(s), "bst violations or undecided instances");
    std::size_t graphs = 0;
    for (const Graph& g : enumerate_graphs_up_to(1, 6, {})) {
        const SwapInjectionResult sw = swap_injection_check(g);
        if (!sw.images_distinct || !sw.images_valid) r.require(false, "swap map fails on g6:" + to_graph6(g));
        ++graphs;
    }
    r.detail << " bst " << histogram(s) << "; swap map distinct and valid on " << graphs << " graphs";
}

void c11(Result& r) {
    std::size_t interval_decided = 0, total = 0;
    for (LemmaId id : all_lemma_ids()) {
        std::size_t bad = 0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            ++total;
            try {
                const IneqReport rep = check_local_lemma(random_lemma_instance(id, seed));
                if (rep.verdict == Verdict::Violated) ++bad;
                if (!rep.exact) ++interval_decided;
            } catch (const std::exception& e) {
                ++bad;
            }
        }
        r.require(bad == 0, std::string(to_string(id)) + ": " + std::to_string(bad) + " bad instances");
    }
    // exhaustive grid: numerators 0..4, denominators 1..3, n <= 4, k <= 5
    std::set<Rational> values;
    for (long p = 0; p <= 4; ++p)
        for (long q = 1; q <= 3; ++q) values.insert(make_rational(p, q));
    const std::vector<Rational> grid(values.begin(), values.end());
    std::size_t grid_cases = 0;
    std::function<void(std::vector<Rational>&, std::size_t, int)> walk = [&](std::vector<Rational>& a, std::size_t from,
                                                                             int left) {
        if (!a.empty())
            for (int k = 1; k <= 5; ++k) {
                ++grid_cases;
                if (check_sym_monotone(a, k).verdict == Verdict::Violated) r.require(false, "sym grid violation");
            }
        if (left == 0) return;
        for (std::size_t i = from; i < grid.size(); ++i) {
            a.push_back(grid[i]);
            walk(a, i, left - 1);
            a.pop_back();
        }
    };
    std::vector<Rational> a;
    walk(a, 0, 4);
    r.detail << " " << total << " lemma instances (" << interval_decided
             << " strict orderings decided by outward-rounded intervals); sym grid " << grid_cases << " cases";
}

void c12(Result& r) {
    const Model h(3, {1, 1, 1, 1, 1, 0, 1, 0, 0}, {1, 1, 1}, 0);
    const Classification c = classify_model(h);
    r.require(!c.antiferromagnetic && !c.ferromagnetic, "3x3 example");
    for (int q = 1; q <= 5; ++q)
        r.require(classify_model(model_complete_looped(q, 0)).antiferromagnetic, "K_" + std::to_string(q));
    std::size_t agree = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Model m = random_model(2, s, RandomModelKind::General);
        const Rational det = m.weight(0, 0) * m.weight(1, 1) - m.weight(0, 1) * m.weight(0, 1);
        const Classification k = classify_model(m);
        agree += (k.ferromagnetic == (det >= 0)) && (k.antiferromagnetic == (det <= 0));
    }
    r.require(agree == 1000, "determinant rule disagreement");
    r.detail << " 3x3 example: " << c.positive_eigen_count << " positive eigenvalues; determinant rule " << agree
             << "/1000";
}

struct Criterion {
    const char* name;
    double seconds;  // time limit
    void (*run)(Result&);
};

const Criterion kCriteria[] = {
    {"exact counts", 1, c1},
    {"coloring and independent-set bounds on C6", 1, c2},
    {"K_{1,4} Widom-Rowlinson clique-max violation", 1, c3},
    {"H_eps expansion coefficients", 30, c4},
    {"triangle necessity", 10, c5},
    {"toy C6 reproduction", 1, c6},
    {"reverse-Sidorenko scan", 600, c7},
    {"semiproper list scan", 300, c8},
    {"clique-max scan", 600, c9},
    {"swapping trick", 300, c10},
    {"lemma battery", 600, c11},
    {"classification", 10, c12},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <1-12>\n";
        return 2;
    }
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 12) {
        std::cerr << "criterion out of range\n";
        return 2;
    }
    const Criterion& c = kCriteria[n - 1];
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.run(r);
    } catch (const std::exception& e) {
        r.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.require(elapsed <= c.seconds, "over the " + std::to_string(static_cast<int>(c.seconds)) + " s limit");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", elapsed, c.seconds);
    std::cout << "CRITERION " << n << " " << (r.ok ? "PASS" : "FAIL") << ": " << c.name << " (" << timing << ")"
              << r.detail.str() << std::endl;
    return r.ok ? 0 : 1;
}
