#include "homlab/inequalities.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace homlab {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Equality: return "equality";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

Verdict parse_verdict(std::string_view text) {
    if (text == "holds") return Verdict::Holds;
    if (text == "equality") return Verdict::Equality;
    if (text == "violated") return Verdict::Violated;
    fail(ErrorKind::ParseError, "unknown verdict '" + std::string(text) + "'");
}

CheckStep inequality_step(std::string label, Expr lhs, Expr rhs, const CompareOptions& options) {
    Comparison c = compare(lhs, rhs, options);
    CheckStep s;
    s.label = std::move(label);
    s.verdict = c.ordering == Ordering::Less    ? Verdict::Holds
                : c.ordering == Ordering::Equal ? Verdict::Equality
                                                : Verdict::Violated;
    s.exact = c.exact;
    s.slack_log10 = c.ordering == Ordering::Equal ? 0.0 : slack_log10(lhs, rhs);
    s.lhs = std::move(lhs);
    s.rhs = std::move(rhs);
    return s;
}

CheckStep identity_step(std::string label, Expr lhs, Expr rhs, const CompareOptions& options) {
    CheckStep s = inequality_step(std::move(label), std::move(lhs), std::move(rhs), options);
    if (s.verdict == Verdict::Holds) s.verdict = Verdict::Violated;
    return s;
}

IneqReport single_report(std::string ineq, std::string instance, Expr lhs, Expr rhs, const CompareOptions& options) {
    CheckStep s = inequality_step("main", std::move(lhs), std::move(rhs), options);
    IneqReport r;
    r.ineq = std::move(ineq);
    r.instance = std::move(instance);
    r.lhs = std::move(s.lhs);
    r.rhs = std::move(s.rhs);
    r.verdict = s.verdict;
    r.exact = s.exact;
    r.slack_log10 = s.slack_log10;
    return r;
}

IneqReport aggregate_report(std::string ineq, std::string instance, std::vector<CheckStep> checks) {
    IneqReport r;
    r.ineq = std::move(ineq);
    r.instance = std::move(instance);
    r.lhs = Expr::constant(1);
    r.rhs = Expr::constant(1);
    r.verdict = checks.empty() ? Verdict::Holds : Verdict::Equality;
    const CheckStep* tightest = nullptr;
    for (const auto& c : checks) {
        r.exact = r.exact && c.exact;
        if (c.verdict == Verdict::Violated) r.verdict = Verdict::Violated;
        else if (c.verdict == Verdict::Holds && r.verdict == Verdict::Equality) r.verdict = Verdict::Holds;
        if (tightest == nullptr || c.slack_log10 < tightest->slack_log10) tightest = &c;
    }
    if (tightest != nullptr) {
        r.lhs = tightest->lhs;
        r.rhs = tightest->rhs;
        r.slack_log10 = tightest->slack_log10;
    }
    r.checks = std::move(checks);
    return r;
}

// Serialization ------------------------------------------------------------------

namespace {

nlohmann::json slack_to_json(double s) {
    if (std::isinf(s)) return s > 0 ? "inf" : "-inf";
    return s;
}

double slack_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        fail(ErrorKind::ParseError, "bad slack value '" + s + "'");
    }
    return j.get<double>();
}

nlohmann::json factors_json(const Expr& e) {
    auto pp = e.as_power_product();
    if (!pp) return nullptr;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : pp->factors())
        arr.push_back(nlohmann::json::array({format_rational(f.base), format_rational(f.exponent)}));
    return arr;
}

nlohmann::json step_to_json(const CheckStep& s) {
    return nlohmann::json{{"label", s.label},
                          {"lhs", s.lhs.to_json()},
                          {"rhs", s.rhs.to_json()},
                          {"verdict", std::string(to_string(s.verdict))},
                          {"exact", s.exact},
                          {"slack_log10", slack_to_json(s.slack_log10)}};
}

CheckStep step_from_json(const nlohmann::json& j) {
    CheckStep s;
    s.label = j.at("label").get<std::string>();
    s.lhs = Expr::from_json(j.at("lhs"));
    s.rhs = Expr::from_json(j.at("rhs"));
    s.verdict = parse_verdict(j.at("verdict").get<std::string>());
    s.exact = j.at("exact").get<bool>();
    s.slack_log10 = slack_from_json(j.at("slack_log10"));
    return s;
}

std::string graph_label(const Graph& g) { return "g6:" + to_graph6(g); }

}  // namespace

nlohmann::json report_to_json(const IneqReport& r) {
    nlohmann::json j{{"ineq", r.ineq},
                     {"instance", r.instance},
                     {"lhs", r.lhs.to_json()},
                     {"rhs", r.rhs.to_json()},
                     {"lhs_factors", factors_json(r.lhs)},
                     {"rhs_factors", factors_json(r.rhs)},
                     {"verdict", std::string(to_string(r.verdict))},
                     {"exact", r.exact},
                     {"slack_log10", slack_to_json(r.slack_log10)}};
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back(step_to_json(c));
    j["checks"] = checks;
    j["notes"] = r.notes;
    return j;
}

IneqReport report_from_json(const nlohmann::json& j) {
    try {
        IneqReport r;
        r.ineq = j.at("ineq").get<std::string>();
        r.instance = j.at("instance").get<std::string>();
        r.lhs = Expr::from_json(j.at("lhs"));
        r.rhs = Expr::from_json(j.at("rhs"));
        r.verdict = parse_verdict(j.at("verdict").get<std::string>());
        r.exact = j.at("exact").get<bool>();
        r.slack_log10 = slack_from_json(j.at("slack_log10"));
        for (const auto& c : j.value("checks", nlohmann::json::array())) r.checks.push_back(step_from_json(c));
        r.notes = j.value("notes", std::vector<std::string>{});
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("report JSON: ") + e.what());
    }
}

std::string format_report(const IneqReport& r) {
    std::ostringstream out;
    out << r.ineq << " [" << r.instance << "]\n";
    out << "  lhs: " << r.lhs.to_string() << "\n";
    out << "  rhs: " << r.rhs.to_string() << "\n";
    out << "  verdict: " << to_string(r.verdict) << (r.exact ? " (exact)" : " (interval)") << "\n";
    out << "  slack_log10: " << r.slack_log10 << "\n";
    for (const auto& c : r.checks) {
        out << "  - " << c.label << ": " << c.lhs.to_string() << " <= " << c.rhs.to_string() << " -> "
            << to_string(c.verdict) << (c.exact ? "" : " (interval)") << "\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

// Checkers -------------------------------------------------------------------------

namespace {

void require_no_isolated(const Graph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) fail(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " is isolated");
}

void require_constraints(const Graph& g, const Model& m, const Constraints* c) {
    if (c == nullptr) return;
    if (c->size() != static_cast<std::size_t>(g.vertex_count()))
        fail(ErrorKind::DimensionMismatch, "need one constraint per vertex");
    for (const auto& vc : *c)
        if (vc.weights.size() != static_cast<std::size_t>(m.q()))
            fail(ErrorKind::DimensionMismatch, "constraint length does not match q");
}

std::string model_label(const Model& m) { return m.name().empty() ? "q=" + std::to_string(m.q()) : m.name(); }

}  // namespace

IneqReport check_reverse_sidorenko(const Graph& g, const Model& m, const Constraints* constraints,
                                   const CompareOptions& options) {
    require_no_isolated(g);
    require_constraints(g, m, constraints);
    Rational lhs = hom(g, m, constraints);
    PowerProduct rhs;
    std::map<std::pair<int, int>, Rational> cache;
    for (auto [u, v] : g.edges()) {
        const int du = g.degree(u);
        const int dv = g.degree(v);
        Rational base;
        if (constraints == nullptr) {
            auto key = std::minmax(du, dv);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, hom_biclique(key.first, key.second, m)).first;
            base = it->second;
        } else {
            base = hom_biclique(dv, du, m, &(*constraints)[static_cast<std::size_t>(u)],
                                &(*constraints)[static_cast<std::size_t>(v)]);
        }
        rhs.multiply(base, Rational(1, du * dv));
    }
    IneqReport r = single_report("reverse-sidorenko", graph_label(g) + " " + model_label(m), Expr::constant(lhs),
                                 Expr::from(rhs), options);
    if (triangle_count(g) > 0) r.notes.push_back("graph contains triangles; no bound is claimed");
    return r;
}

IneqReport check_semiproper_list(const Graph& g, std::span<const ColorSet> lists, int q, ColorSet looped,
                                 const CompareOptions& options) {
    require_no_isolated(g);
    if (lists.size() != static_cast<std::size_t>(g.vertex_count()))
        fail(ErrorKind::DimensionMismatch, "need one list per vertex");
    if (q < 1 || q > kMaxColors) fail(ErrorKind::InvalidArgument, "q out of range");
    const ColorSet full = full_color_set(q);
    for (ColorSet l : lists)
        if ((l & ~full) != 0) fail(ErrorKind::InvalidArgument, "list contains colors outside 0..q-1");
    if ((looped & ~full) != 0) fail(ErrorKind::InvalidArgument, "looped set outside 0..q-1");
    BigInt lhs = semiproper_count(g, lists, looped);
    PowerProduct rhs;
    for (auto [u, v] : g.edges()) {
        const int du = g.degree(u);
        const int dv = g.degree(v);
        rhs.multiply(Rational(cc(lists[static_cast<std::size_t>(u)], lists[static_cast<std::size_t>(v)], dv, du, looped)),
                     Rational(1, du * dv));
    }
    std::ostringstream inst;
    inst << graph_label(g) << " q=" << q << " looped=" << looped << " lists=";
    for (std::size_t i = 0; i < lists.size(); ++i) inst << (i ? "," : "") << lists[i];
    return single_report("semiproper-list", inst.str(), Expr::constant(Rational(lhs)), Expr::from(rhs), options);
}

IneqReport check_graphical_bl(const Graph& g, const std::vector<EdgeKernel>& kernels, const CompareOptions& options) {
    require_no_isolated(g);
    if (kernels.size() != g.edges().size()) fail(ErrorKind::DimensionMismatch, "need one kernel per edge");
    std::vector<int> sizes(static_cast<std::size_t>(g.vertex_count()), -1);
    auto bind = [&](int v, int s) {
        auto& slot = sizes[static_cast<std::size_t>(v)];
        if (slot >= 0 && slot != s) fail(ErrorKind::DimensionMismatch, "kernel sizes disagree at vertex " + std::to_string(v));
        slot = s;
    };
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        bind(g.edges()[i].first, kernels[i].rows);
        bind(g.edges()[i].second, kernels[i].cols);
        for (const auto& x : kernels[i].values)
            if (x < 0) fail(ErrorKind::NegativeWeight, "negative kernel entry");
    }
    Rational lhs = kernel_hom(g, kernels);
    PowerProduct rhs;
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        auto [u, v] = g.edges()[i];
        const int du = g.degree(u);
        const int dv = g.degree(v);
        rhs.multiply(biclique_sum(kernels[i], dv, du), Rational(1, du * dv));
    }
    return single_report("graphical-bl", graph_label(g), Expr::constant(lhs), Expr::from(rhs), options);
}

IneqReport check_clique_max(const Graph& g, const Model& m, const Constraints* lambdas, const CompareOptions& options) {
    require_constraints(g, m, lambdas);
    Rational lhs = hom(g, m, lambdas);
    PowerProduct rhs;
    const VertexConstraint ones = VertexConstraint::ones(m.q());
    std::map<int, Rational> cache;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int d = g.degree(v);
        Rational base;
        if (lambdas == nullptr) {
            auto it = cache.find(d);
            if (it == cache.end()) it = cache.emplace(d, hom_clique(d + 1, m, ones)).first;
            base = it->second;
        } else {
            base = hom_clique(d + 1, m, (*lambdas)[static_cast<std::size_t>(v)]);
        }
        rhs.multiply(base, Rational(1, d + 1));
    }
    IneqReport r = single_report("clique-max", graph_label(g) + " " + model_label(m), Expr::constant(lhs),
                                 Expr::from(rhs), options);
    r.notes.push_back(classify_model(m).ferromagnetic ? "model is positive semidefinite"
                                                      : "model is not positive semidefinite; no bound is claimed");
    return r;
}

IneqReport check_bst(const Graph& g, const Model& m, const CompareOptions& options) {
    if (m.q() != 2) fail(ErrorKind::NotTwoSpin, "model has " + std::to_string(m.q()) + " colors, expected 2");
    Rational h = hom(g, m);
    Rational lifted = hom(tensor_with_k2(g), m);
    IneqReport r = single_report("bst", graph_label(g) + " " + model_label(m), Expr::from(PowerProduct::of(h, 2)),
                                 Expr::constant(lifted), options);
    r.notes.push_back(classify_model(m).antiferromagnetic ? "model is antiferromagnetic"
                                                          : "model is not antiferromagnetic; no bound is claimed");
    return r;
}

// Swapping injection -------------------------------------------------------------------

std::uint64_t swap_set(const Graph& g, std::uint64_t a, std::uint64_t b) {
    const int n = g.vertex_count();
    std::vector<std::uint64_t> unsafe(static_cast<std::size_t>(n), 0);
    const std::uint64_t only_a = a & ~b;
    const std::uint64_t only_b = b & ~a;
    for (auto [u, v] : g.edges()) {
        const bool hit = ((only_a >> u & 1) && (only_b >> v & 1)) || ((only_b >> u & 1) && (only_a >> v & 1));
        if (hit) {
            unsafe[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
            unsafe[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
        }
    }
    // Each component of the unsafe graph is 2-coloured with its smallest
    // vertex left out of T; that is the lexicographically first choice.
    std::uint64_t seen = 0;
    std::uint64_t t = 0;
    for (int s = 0; s < n; ++s) {
        if ((seen >> s & 1) || unsafe[static_cast<std::size_t>(s)] == 0) continue;
        std::vector<int> stack{s};
        seen |= std::uint64_t{1} << s;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            const bool in_t = (t >> x) & 1;
            for (std::uint64_t nb = unsafe[static_cast<std::size_t>(x)]; nb != 0; nb &= nb - 1) {
                int y = std::countr_zero(nb);
                const bool y_in_t = (t >> y) & 1;
                if (seen >> y & 1) {
                    if (y_in_t == in_t) fail(ErrorKind::InvalidArgument, "unsafe edges are not bipartite");
                    continue;
                }
                seen |= std::uint64_t{1} << y;
                if (!in_t) t |= std::uint64_t{1} << y;
                stack.push_back(y);
            }
        }
    }
    return t;
}

namespace {

std::vector<std::uint64_t> independent_sets(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if ((s >> u & 1) && (s >> v & 1)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    return out;
}

}  // namespace

SwapInjectionResult swap_injection_check(const Graph& g) {
    const int n = g.vertex_count();
    if (n > kMaxSwapInjectionVertices)
        fail(ErrorKind::LimitExceeded, "swap injection check is limited to " +
                                           std::to_string(kMaxSwapInjectionVertices) + " vertices");
    const auto sets = independent_sets(g);
    SwapInjectionResult r;
    r.pairs = static_cast<std::uint64_t>(sets.size()) * sets.size();
    r.target_size = independent_sets(tensor_with_k2(g)).size();
    std::vector<std::uint64_t> images;
    images.reserve(static_cast<std::size_t>(r.pairs));
    for (std::uint64_t a : sets)
        for (std::uint64_t b : sets) {
            const std::uint64_t t = swap_set(g, a, b);
            const std::uint64_t x = (a & ~t) | (b & t);
            const std::uint64_t y = (b & ~t) | (a & t);
            for (auto [u, v] : g.edges())
                if (((x >> u & 1) && (y >> v & 1)) || ((x >> v & 1) && (y >> u & 1))) r.images_valid = false;
            images.push_back(x | (y << n));
        }
    std::sort(images.begin(), images.end());
    r.images_distinct = std::adjacent_find(images.begin(), images.end()) == images.end();
    return r;
}

// Worked example ---------------------------------------------------------------------

std::vector<IneqReport> reproduce_toy_c6(const CompareOptions& options) {
    constexpr ColorSet R = 1u << 0;
    constexpr ColorSet G = 1u << 1;
    constexpr ColorSet B = 1u << 2;
    constexpr ColorSet none = 0;
    const Graph c6 = cycle_graph(6);
    const std::vector<ColorSet> lists{R | B, R | G, G | B, R | G | B, R | B, R | G | B};

    auto count = [](const Graph& g, const std::vector<ColorSet>& l) {
        return Rational(semiproper_count(g, l, none));
    };
    auto ccq = [](ColorSet a, ColorSet b, int x, int y) { return Rational(cc(a, b, x, y, none)); };
    auto root = [](const Rational& v, int k) { return Expr::power(Expr::constant(v), Rational(1, k)); };

    std::vector<IneqReport> out;
    auto relabel = [&](IneqReport r, std::string id) {
        r.ineq = std::move(id);
        out.push_back(std::move(r));
    };

    // The full inequality on the 6-cycle.
    IneqReport full = check_semiproper_list(c6, lists, 3, none, options);
    const Expr full_rhs = full.rhs;
    relabel(std::move(full), "toy-c6");

    // Fix the colour of v1; the two surviving colourings live on the path v2..v6.
    std::vector<ColorSet> red = lists;
    red[0] = R;
    std::vector<ColorSet> blue = lists;
    blue[0] = B;
    const Rational total = count(c6, lists);
    out.push_back(single_report("toy-split", "v1 in {R,B}", Expr::constant(total),
                                Expr::constant(count(c6, red)) + Expr::constant(count(c6, blue)), options));
    {
        auto& r = out.back();
        CheckStep s = identity_step("split", r.lhs, r.rhs, options);
        r.verdict = s.verdict;
        r.exact = s.exact;
    }

    const Graph p5 = path_graph(5);
    const std::vector<ColorSet> blue_path{R | G, G | B, R | G | B, R | B, R | G};
    const std::vector<ColorSet> red_path{G, G | B, R | G | B, R | B, G | B};
    IneqReport ib = check_semiproper_list(p5, blue_path, 3, none, options);
    IneqReport ir = check_semiproper_list(p5, red_path, 3, none, options);
    const Expr blue_rhs = ib.rhs;
    const Expr red_rhs = ir.rhs;
    relabel(std::move(ib), "toy-induction-blue");
    relabel(std::move(ir), "toy-induction-red");

    out.push_back(single_report("toy-cancellation", "sum of induction bounds", blue_rhs + red_rhs, full_rhs, options));

    // Local form: only factors within two steps of v1 remain.
    const Rational a1 = ccq(R | G, G | B, 2, 1);  // v2v3, blue branch
    const Rational a2 = ccq(G, G | B, 2, 1);      // v2v3, red branch
    const Rational b1 = ccq(R | B, R | G, 1, 2);  // v5v6, blue branch
    const Rational b2 = ccq(R | B, G | B, 1, 2);  // v5v6, red branch
    const Rational e12 = ccq(R | B, R | G, 2, 2);
    const Rational e23 = ccq(R | G, G | B, 2, 2);
    const Rational e56 = ccq(R | B, R | G | B, 2, 2);
    const Rational e61 = ccq(R | G | B, R | B, 2, 2);
    const Expr local_lhs = root(a1 * b1, 2) + root(a2 * b2, 2);
    const Expr local_rhs = Expr::product({root(e12, 4), root(e23, 4), root(e56, 4), root(e61, 4)});
    out.push_back(single_report("toy-local", "edges within two steps of v1", local_lhs, local_rhs, options));
    out.push_back(single_report("toy-cauchy-schwarz", "split into two paths", local_lhs,
                                root(a1 + a2, 2) * root(b1 + b2, 2), options));

    const Expr top_rhs = root(e12, 2) * root(e23, 2);
    out.push_back(single_report("toy-post-cs-top", "path v1 v2 v3", Expr::constant(a1) + Expr::constant(a2), top_rhs,
                                options));
    out.push_back(single_report("toy-post-cs-bottom", "path v1 v6 v5", Expr::constant(b1) + Expr::constant(b2),
                                root(e56, 2) * root(e61, 2), options));

    // The top left side counts list colourings of a 4-cycle a-b1-c-b2.
    const Graph c4 = cycle_graph(4);
    const std::vector<ColorSet> c4_lists{R | B, R | G, G | B, R | G};
    const Rational c4_count = count(c4, c4_lists);
    out.push_back(single_report("toy-c4-equal", "4-cycle {R,B},{R,G},{G,B},{R,G}", Expr::constant(c4_count),
                                Expr::constant(a1) + Expr::constant(a2), options));
    {
        auto& r = out.back();
        CheckStep s = identity_step("c4", r.lhs, r.rhs, options);
        r.verdict = s.verdict;
        r.exact = s.exact;
    }
    out.push_back(single_report("toy-final-c4", "4-cycle bound", Expr::constant(c4_count), top_rhs, options));
    return out;
}

}  // namespace homlab
