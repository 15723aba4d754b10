#include "homlab/lemmas.hpp"

#include "homlab/errors.hpp"
#include "random_util.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace homlab {

namespace {

const std::vector<std::pair<LemmaId, std::string_view>>& lemma_names() {
    static const std::vector<std::pair<LemmaId, std::string_view>> names{
        {LemmaId::MixedNorm, "mixed-norm"},       {LemmaId::MixedNorm2, "mixed-norm-2"},
        {LemmaId::Local123, "local-123"},         {LemmaId::ColorHolder, "color-holder"},
        {LemmaId::ColorBcd, "color-bcd"},         {LemmaId::ColorAc, "color-ac"},
        {LemmaId::ColorAbc, "color-abc"},         {LemmaId::CliqueCs, "clique-cs"},
        {LemmaId::HLogConvex, "h-log-convex"},    {LemmaId::FLogConv, "f-log-conv"},
        {LemmaId::MLogConv, "m-log-conv"},        {LemmaId::SymMonotone, "sym-monotone"},
        {LemmaId::SymCorollary, "sym-corollary"},
    };
    return names;
}

[[noreturn]] void precondition(const std::string& what) { fail(ErrorKind::PreconditionViolated, what); }

// Collects sum_i c_i * P_i with equal power products merged.
class SumBuilder {
public:
    void add(const PowerProduct& pp, const Rational& coef = Rational(1)) {
        if (coef == 0 || pp.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(pp.to_string(), Rational(0), pp);
        it->second.first += coef;
    }

    Expr build() const {
        std::vector<Expr> parts;
        for (const auto& [key, term] : terms_) parts.push_back(Expr::constant(term.first) * Expr::from(term.second));
        return Expr::sum(std::move(parts));
    }

private:
    std::map<std::string, std::pair<Rational, PowerProduct>> terms_;
};

Expr pp_expr(const Rational& base, const Rational& exponent) { return Expr::from(PowerProduct::of(base, exponent)); }

void check_kernel(const EdgeKernel& k, const std::string& name) {
    if (k.rows < 1 || k.cols < 1) precondition(name + " must be nonempty");
    if (k.values.size() != static_cast<std::size_t>(k.rows) * static_cast<std::size_t>(k.cols))
        fail(ErrorKind::DimensionMismatch, name + " has the wrong number of entries");
    for (const auto& x : k.values)
        if (x < 0) precondition(name + " must be nonnegative");
}

void check_vector(const VertexConstraint& v, int q, const std::string& name) {
    if (v.weights.size() != static_cast<std::size_t>(q))
        fail(ErrorKind::DimensionMismatch, name + " length does not match q");
    for (const auto& x : v.weights)
        if (x < 0) precondition(name + " must be nonnegative");
}

void check_sets(int q, std::initializer_list<ColorSet> sets) {
    if (q < 1 || q > kMaxColors) precondition("color count must be in 1..16");
    for (ColorSet s : sets)
        if ((s & ~full_color_set(q)) != 0) precondition("sets must lie inside the color set");
}

void require_psd(const Model& m) {
    if (!classify_model(m).ferromagnetic) precondition("H must be positive semidefinite");
}

bool pointwise_geometric(const VertexConstraint& l, const VertexConstraint& mu, const VertexConstraint& nu) {
    for (std::size_t i = 0; i < l.weights.size(); ++i)
        if (l.weights[i] * mu.weights[i] != nu.weights[i] * nu.weights[i]) return false;
    return true;
}

std::vector<int> members(ColorSet s) {
    std::vector<int> out;
    for (int c = 0; c < 32; ++c)
        if (s >> c & 1) out.push_back(c);
    return out;
}

// Calls visit(tuple) for every tuple in pool^k.
template <typename Visit>
void for_each_tuple(const std::vector<int>& pool, int k, Visit&& visit) {
    if (k > 0 && pool.empty()) return;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<int> tuple(static_cast<std::size_t>(k), pool.empty() ? 0 : pool[0]);
    while (true) {
        visit(tuple);
        int i = k - 1;
        while (i >= 0) {
            auto& j = idx[static_cast<std::size_t>(i)];
            if (++j < pool.size()) {
                tuple[static_cast<std::size_t>(i)] = pool[j];
                break;
            }
            j = 0;
            tuple[static_cast<std::size_t>(i)] = pool[0];
            --i;
        }
        if (i < 0) return;
    }
}

std::vector<int> range(int n) {
    std::vector<int> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = i;
    return r;
}

Rational ccr(ColorSet a, ColorSet b, int x, int y, ColorSet looped) { return Rational(cc(a, b, x, y, looped)); }

// Validation ------------------------------------------------------------------------

void validate(const MixedNormParams& p) {
    check_kernel(p.a, "A");
    check_kernel(p.b, "B");
    if (p.a.rows != p.b.rows) fail(ErrorKind::DimensionMismatch, "A and B need the same number of rows");
    if (p.q < 1) precondition("q >= 1 required");
}

void validate(const MixedNorm2Params& p) {
    check_kernel(p.f, "f");
    check_kernel(p.g, "g");
    check_kernel(p.h, "h");
    const int st = p.f.rows * p.f.cols;
    if (p.g.rows != st || p.h.rows != st) fail(ErrorKind::DimensionMismatch, "g and h need |S||T| rows");
    if (p.q < 1) precondition("q >= 1 required");
}

void validate(const Local123Params& p) {
    check_kernel(p.f12, "f12");
    check_kernel(p.f23, "f23");
    if (p.f12.cols != p.f23.rows) fail(ErrorKind::DimensionMismatch, "f12 columns must match f23 rows");
    if (p.beta < 1 || p.beta > p.delta) precondition("1 <= beta <= delta required");
    if (p.gamma < 2) precondition("gamma >= 2 required");
    if (p.delta > 6 || p.gamma > 6) precondition("beta, gamma, delta are limited to 6");
}

void validate(const ColorHolderParams& p) {
    check_sets(p.q, {p.looped, p.a_set, p.b_set});
    if (p.k < 0 || p.r < 0) precondition("k and r must be nonnegative");
    if (!(p.r <= p.s && p.s <= p.t)) precondition("r <= s <= t required");
    if (p.r == p.t) precondition("r < t required for the exponents to be defined");
}

void validate(const ColorBcdParams& p) {
    check_sets(p.q, {p.looped, p.b_set, p.c_set, p.d_set});
    if ((p.d_set & ~p.c_set) != 0) precondition("D must be a subset of C");
    if ((p.d_set & p.looped) != 0) precondition("D must avoid looped colors");
    if (p.b < 2) precondition("b >= 2 required");
    if (p.c < 1 || p.k < 1) precondition("c and k must be positive");
    if (p.t < 1) precondition("t >= 1 required");
}

void validate_abc(const ColorAbcParams& p) {
    check_sets(p.q, {p.looped, p.a_set, p.b_set, p.c_set});
    if (p.a < 1 || p.b < 1 || p.c < 1) precondition("a, b, c must be positive");
    if (std::max(p.b, p.c) > p.a) precondition("max{b, c} <= a required");
    if (p.b + p.c < 3) precondition("b + c >= 3 required for the exponents to be defined");
}

void validate(const CliqueCsParams& p) {
    const int n = p.g.vertex_count();
    const int q = p.m.q();
    if (p.lambda.size() != static_cast<std::size_t>(n + 2) || p.mu.size() != static_cast<std::size_t>(n) ||
        p.nu.size() != static_cast<std::size_t>(n + 1))
        fail(ErrorKind::DimensionMismatch, "lambda, mu, nu need n+2, n, n+1 entries");
    for (const auto& v : p.lambda) check_vector(v, q, "lambda");
    for (const auto& v : p.mu) check_vector(v, q, "mu");
    for (const auto& v : p.nu) check_vector(v, q, "nu");
    for (int v = 0; v < n; ++v) {
        const auto i = static_cast<std::size_t>(v);
        if (!pointwise_geometric(p.lambda[i], p.mu[i], p.nu[i]))
            precondition("lambda_v mu_v = nu_v^2 fails at vertex " + std::to_string(v));
    }
    const auto& apex = p.nu[static_cast<std::size_t>(n)];
    if (!(p.lambda[static_cast<std::size_t>(n)] == apex) || !(p.lambda[static_cast<std::size_t>(n + 1)] == apex))
        precondition("apex entries of lambda and nu must be identical");
}

void validate(const HLogConvexParams& p) {
    require_psd(p.m);
    check_vector(p.lambda, p.m.q(), "lambda");
    check_vector(p.mu, p.m.q(), "mu");
    check_vector(p.nu, p.m.q(), "nu");
    if (p.t < 2 || p.t >= p.delta) precondition("2 <= t < delta required");
    if (!pointwise_geometric(p.lambda, p.mu, p.nu)) precondition("lambda mu = nu^2 pointwise required");
}

void validate(const FLogConvParams& p) {
    require_psd(p.m);
    check_vector(p.mu, p.m.q(), "mu");
    check_vector(p.nu, p.m.q(), "nu");
    if (p.a < 1) precondition("a >= 1 required");
}

void validate(const MLogConvParams& p) {
    require_psd(p.m);
    check_vector(p.lambda, p.m.q(), "lambda");
    check_vector(p.mu, p.m.q(), "mu");
    if (!(1 <= p.b && p.b <= p.a && p.a <= p.delta)) precondition("1 <= b <= a <= delta required");
}

void validate(const SymParams& p) {
    if (p.alphas.empty()) precondition("at least one alpha required");
    if (p.alphas.size() > 16) precondition("at most 16 alphas supported");
    if (p.k < 1) precondition("k >= 1 required");
    for (const auto& a : p.alphas)
        if (a < 0) precondition("alphas must be nonnegative");
}

template <typename T>
const T& params_as(const LemmaInstance& inst) {
    const T* p = std::get_if<T>(&inst.params);
    if (p == nullptr)
        fail(ErrorKind::InvalidArgument, "parameters do not match lemma " + std::string(to_string(inst.id)));
    return *p;
}

// Evaluation -------------------------------------------------------------------------

IneqReport run_mixed_norm(const MixedNormParams& p, const std::string& inst, const CompareOptions& o) {
    const int m = p.a.rows;
    auto gram = [m](const EdgeKernel& x, const EdgeKernel& y, int i, int j) {
        Rational s = 0;
        for (int r = 0; r < m; ++r) s += x.at(r, i) * y.at(r, j);
        return s;
    };
    SumBuilder rows;
    for (int i = 0; i < p.a.cols; ++i) {
        Rational r = 0;
        for (int j = 0; j < p.b.cols; ++j) r += gram(p.a, p.b, i, j);
        rows.add(PowerProduct::of(r, p.q));
    }
    SumBuilder aa;
    for (int i = 0; i < p.a.cols; ++i)
        for (int j = 0; j < p.a.cols; ++j) aa.add(PowerProduct::of(gram(p.a, p.a, i, j), p.q));
    Rational bb = 0;
    for (int i = 0; i < p.b.cols; ++i)
        for (int j = 0; j < p.b.cols; ++j) bb += gram(p.b, p.b, i, j);
    Expr lhs = pow(rows.build(), Rational(2) / p.q);
    Expr rhs = pow(aa.build(), Rational(1) / p.q) * Expr::constant(bb);
    return single_report("mixed-norm", inst, lhs, rhs, o);
}

IneqReport run_mixed_norm2(const MixedNorm2Params& p, const std::string& inst, const CompareOptions& o) {
    const int ns = p.f.rows;
    const int nt = p.f.cols;
    auto row = [nt](int s, int t) { return s * nt + t; };
    auto gsum = [&](int s, int t) {
        Rational x = 0;
        for (int u = 0; u < p.g.cols; ++u) x += p.g.at(row(s, t), u);
        return x;
    };
    SumBuilder left, top, bottom;
    for (int t = 0; t < nt; ++t) {
        for (int v = 0; v < p.h.cols; ++v) {
            Rational x = 0;
            for (int s = 0; s < ns; ++s) x += p.f.at(s, t) * gsum(s, t) * p.h.at(row(s, t), v);
            left.add(PowerProduct::of(x, p.q));
        }
        Rational y = 0;
        for (int s = 0; s < ns; ++s) y += p.f.at(s, t) * gsum(s, t) * gsum(s, t);
        top.add(PowerProduct::of(y, p.q));
        for (int v = 0; v < p.h.cols; ++v)
            for (int w = 0; w < p.h.cols; ++w) {
                Rational z = 0;
                for (int s = 0; s < ns; ++s) z += p.f.at(s, t) * p.h.at(row(s, t), v) * p.h.at(row(s, t), w);
                bottom.add(PowerProduct::of(z, p.q));
            }
    }
    return single_report("mixed-norm-2", inst, pow(left.build(), Rational(2)), top.build() * bottom.build(), o);
}

IneqReport run_local123(const Local123Params& p, const std::string& inst, const CompareOptions& o) {
    const int n1 = p.f12.rows;
    const int n2 = p.f12.cols;
    const int n3 = p.f23.cols;
    // inner[y] = (sum_z prod_j f23(y_j, z))^(gamma - 1), shared by every x.
    std::map<std::vector<int>, Rational> inner;
    for_each_tuple(range(n2), p.beta, [&](const std::vector<int>& y) {
        Rational s = 0;
        for (int z = 0; z < n3; ++z) {
            Rational prod = 1;
            for (int yj : y) prod *= p.f23.at(yj, z);
            s += prod;
        }
        inner[y] = pow_int(s, p.gamma - 1);
    });
    SumBuilder lhs;
    for (int x = 0; x < n1; ++x) {
        Rational sx = 0;
        for (const auto& [y, w] : inner) {
            Rational prod = w;
            for (int yj : y) prod *= p.f12.at(x, yj);
            sx += prod;
        }
        lhs.add(PowerProduct::of(sx, Rational(p.delta, p.beta)));
    }
    PowerProduct rhs = PowerProduct::of(biclique_sum(p.f12, p.gamma, p.delta), Rational(1, p.gamma));
    rhs.multiply(biclique_sum(p.f23, p.beta, p.gamma), Rational(p.delta * (p.gamma - 1), p.beta * p.gamma));
    return single_report("local-123", inst, lhs.build(), Expr::from(rhs), o);
}

IneqReport run_color_holder(const ColorHolderParams& p, const std::string& inst, const CompareOptions& o) {
    auto c = [&](int i) { return ccr(p.a_set, p.b_set, p.k, i, p.looped); };
    PowerProduct rhs = PowerProduct::of(c(p.r), Rational(p.t - p.s, p.t - p.r));
    rhs.multiply(PowerProduct::of(c(p.t), Rational(p.s - p.r, p.t - p.r)));
    return single_report("color-holder", inst, Expr::constant(c(p.s)), Expr::from(rhs), o);
}

IneqReport run_color_bcd(const ColorBcdParams& p, const std::string& inst, const CompareOptions& o) {
    const int csize = color_count(p.c_set);
    SumBuilder lhs, rhs;
    for_each_tuple(members(p.d_set), p.k, [&](const std::vector<int>& x) {
        ColorSet used = 0;
        PowerProduct l, r;
        for (int xi : x) {
            const ColorSet bit = ColorSet{1} << xi;
            used |= bit;
            l.multiply(ccr(p.b_set & ~bit, p.c_set & ~bit, p.c - 1, p.b - 1, p.looped), p.t / (p.b - 1));
            r.multiply(ccr(p.b_set & ~bit, p.c_set, p.c, p.b - 1, p.looped),
                       p.t * (p.c - 1) / Rational((p.b - 1) * p.c));
        }
        r.multiply(Rational(color_count(p.c_set & ~used)), p.t);
        r.multiply(Rational(csize), -(1 - Rational(p.k, p.c)) * p.t);
        lhs.add(l);
        rhs.add(r);
    });
    return single_report("color-bcd", inst, lhs.build(), rhs.build(), o);
}

IneqReport run_color_abc(const ColorAbcParams& p, bool full, const std::string& inst, const CompareOptions& o) {
    const int e = p.b + p.c - 2;
    SumBuilder lhs, tail;
    for (int x : members(p.a_set)) {
        const ColorSet bx = ominus(p.b_set, ColorSet{1} << x, p.looped);
        const ColorSet cx = ominus(p.c_set, ColorSet{1} << x, p.looped);
        lhs.add(PowerProduct::of(ccr(bx, cx, p.c - 1, p.b - 1, p.looped), Rational(p.a, e)));
        tail.add(PowerProduct::of(ccr(bx, p.c_set, p.c, p.b - 1, p.looped), Rational(p.a, p.c)));
    }
    const Expr ac = pp_expr(ccr(p.a_set, p.c_set, p.c, p.a, p.looped), Rational(p.b - 1, p.c * e));
    Expr rhs;
    if (full) {
        PowerProduct r = PowerProduct::of(ccr(p.a_set, p.b_set, p.b, p.a, p.looped), Rational(p.c - 1, p.b * e));
        r.multiply(ccr(p.b_set, p.c_set, p.c, p.b, p.looped), Rational(p.a * (p.b - 1) * (p.c - 1), e * p.b * p.c));
        rhs = ac * Expr::from(r);
    } else {
        rhs = ac * pow(tail.build(), Rational(p.c - 1, e));
    }
    return single_report(full ? "color-abc" : "color-ac", inst, lhs.build(), rhs, o);
}

IneqReport run_clique_cs(const CliqueCsParams& p, const std::string& inst, const CompareOptions& o) {
    const Rational two = hom(add_apexes(p.g, 2), p.m, &p.lambda);
    const Rational zero = hom(p.g, p.m, &p.mu);
    const Rational one = hom(add_apexes(p.g, 1), p.m, &p.nu);
    return single_report("clique-cs", inst, pp_expr(one, 2), Expr::constant(two * zero), o);
}

IneqReport run_h_log_convex(const HLogConvexParams& p, const std::string& inst, const CompareOptions& o) {
    PowerProduct rhs = PowerProduct::of(hom_clique(p.t + 1, p.m, p.lambda), Rational(1, p.t + 1));
    rhs.multiply(hom_clique(p.t - 1, p.m, p.mu), Rational(1, p.t - 1));
    IneqReport r = single_report("h-log-convex", inst, pp_expr(hom_clique(p.t, p.m, p.nu), Rational(2, p.t)),
                                 Expr::from(rhs), o);
    r.notes.push_back("checked as an unconditional inequality on this finite instance");
    return r;
}

IneqReport run_f_log_conv(const FLogConvParams& p, const std::string& inst, const CompareOptions& o) {
    const Graph ka = complete_graph(p.a);
    std::vector<Rational> f;
    for (int i = 0; i <= p.a; ++i) {
        Constraints c;
        for (int v = 0; v < p.a; ++v) c.push_back(v < i ? p.mu : p.nu);
        f.push_back(hom(ka, p.m, &c));
    }
    std::vector<CheckStep> checks;
    for (int s = 0; s + 2 <= p.a; ++s) {
        const auto i = static_cast<std::size_t>(s);
        checks.push_back(inequality_step("F" + std::to_string(s + 1) + "^2 <= F" + std::to_string(s) + " F" +
                                             std::to_string(s + 2),
                                         pp_expr(f[i + 1], 2), Expr::constant(f[i] * f[i + 2]), o));
    }
    PowerProduct ends = PowerProduct::of(f[0], p.a - 1);
    ends.multiply(f[static_cast<std::size_t>(p.a)]);
    checks.push_back(inequality_step("F1^a <= F0^(a-1) Fa", pp_expr(f[1], p.a), Expr::from(ends), o));
    return aggregate_report("f-log-conv", inst, std::move(checks));
}

IneqReport run_m_log_conv(const MLogConvParams& p, const std::string& inst, const CompareOptions& o) {
    const int q = p.m.q();
    std::vector<Rational> eta_base;  // eta(x)^b
    for (int x = 0; x < q; ++x) {
        VertexConstraint w = p.mu;
        for (int y = 0; y < q; ++y) w.weights[static_cast<std::size_t>(y)] *= p.m.weight(x, y);
        eta_base.push_back(hom_clique(p.b, p.m, w));
    }
    const Rational hb1 = hom_clique(p.b + 1, p.m, p.mu);
    auto big_m = [&](int s) {
        const int k = p.a + 1 - s;
        SumBuilder terms;
        for (const auto& [counts, weight] : hom_clique_by_color_counts(s, p.m, p.lambda)) {
            PowerProduct pp;
            for (int x = 0; x < q; ++x)
                pp.multiply(eta_base[static_cast<std::size_t>(x)], Rational(k * counts[static_cast<std::size_t>(x)], p.b));
            terms.add(pp, weight);
        }
        return terms.build() * pp_expr(hb1, Rational(s * (s - 1), p.b + 1));
    };
    std::map<int, Expr> ms;
    auto M = [&](int s) -> const Expr& {
        auto it = ms.find(s);
        if (it == ms.end()) it = ms.emplace(s, big_m(s)).first;
        return it->second;
    };
    std::vector<CheckStep> checks;
    if (p.b < p.delta) {
        checks.push_back(inequality_step("M_b M_1 <= M_{b+1}", M(p.b) * M(1), M(p.b + 1), o));
        for (int s = p.b; s <= p.a - 1; ++s)
            checks.push_back(inequality_step("M_" + std::to_string(s + 1) + "^2 <= M_" + std::to_string(s) + " M_" +
                                                 std::to_string(s + 2),
                                             pow(M(s + 1), Rational(2)), M(s) * M(s + 2), o));
    }
    checks.push_back(inequality_step("M_1^(a+1) <= M_{a+1}", pow(M(1), Rational(p.a + 1)), M(p.a + 1), o));
    IneqReport r = aggregate_report("m-log-conv", inst, std::move(checks));
    r.notes.push_back("checked as an unconditional inequality on this finite instance");
    return r;
}

BigInt surjections(int k, int l) {
    BigInt total = 0;
    for (int j = 0; j <= l; ++j) {
        BigInt term = binomial(static_cast<unsigned long>(l), static_cast<unsigned long>(j)) *
                      pow_int(BigInt(l - j), static_cast<unsigned long>(k));
        if (j % 2) total -= term;
        else total += term;
    }
    return total;
}

// sum over l of tau(l) * (number of tuples, total weight) with exactly l distinct entries
struct DistinctProfile {
    std::vector<BigInt> tuples;      // index l
    std::vector<Rational> weight;    // index l
};

DistinctProfile distinct_profile(const std::vector<Rational>& alphas, int k) {
    const int n = static_cast<int>(alphas.size());
    DistinctProfile d;
    d.tuples.assign(static_cast<std::size_t>(std::min(n, k) + 1), BigInt(0));
    d.weight.assign(d.tuples.size(), Rational(0));
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        const int l = std::popcount(s);
        if (l > k) continue;
        d.weight[static_cast<std::size_t>(l)] += sym_f(alphas, k, s);
    }
    for (int l = 1; l <= std::min(n, k); ++l)
        d.tuples[static_cast<std::size_t>(l)] =
            binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(l)) * surjections(k, l);
    return d;
}

CheckStep corollary_step(const std::vector<Rational>& alphas, int k, const CompareOptions& o) {
    const int n = static_cast<int>(alphas.size());
    const DistinctProfile d = distinct_profile(alphas, k);
    const Rational total = Rational(pow_int(BigInt(n), static_cast<unsigned long>(k)));
    Rational e_tau = 0, e_prod = 0, e_both = 0;
    for (std::size_t l = 1; l < d.tuples.size(); ++l) {
        const Rational tau(1, static_cast<long>(l) + 1);
        e_tau += tau * Rational(d.tuples[l]);
        e_prod += d.weight[l];
        e_both += tau * d.weight[l];
    }
    return inequality_step("E[tau] E[prod] <= E[tau prod]", Expr::constant(e_tau * e_prod / (total * total)),
                           Expr::constant(e_both / total), o);
}

std::string sym_label(const std::vector<Rational>& alphas, int k) {
    std::string s = "alphas=(";
    for (std::size_t i = 0; i < alphas.size(); ++i) s += (i ? "," : "") + format_rational(alphas[i]);
    return s + ") k=" + std::to_string(k);
}

}  // namespace

std::string_view to_string(LemmaId id) {
    for (const auto& [i, name] : lemma_names())
        if (i == id) return name;
    return "?";
}

LemmaId parse_lemma_id(std::string_view text) {
    for (const auto& [i, name] : lemma_names())
        if (name == text) return i;
    fail(ErrorKind::ParseError, "unknown lemma id '" + std::string(text) + "'");
}

const std::vector<LemmaId>& all_lemma_ids() {
    static const std::vector<LemmaId> ids = [] {
        std::vector<LemmaId> v;
        for (const auto& [i, name] : lemma_names()) v.push_back(i);
        return v;
    }();
    return ids;
}

void validate_lemma_instance(const LemmaInstance& inst) {
    switch (inst.id) {
        case LemmaId::MixedNorm: return validate(params_as<MixedNormParams>(inst));
        case LemmaId::MixedNorm2: return validate(params_as<MixedNorm2Params>(inst));
        case LemmaId::Local123: return validate(params_as<Local123Params>(inst));
        case LemmaId::ColorHolder: return validate(params_as<ColorHolderParams>(inst));
        case LemmaId::ColorBcd: return validate(params_as<ColorBcdParams>(inst));
        case LemmaId::ColorAc:
        case LemmaId::ColorAbc: return validate_abc(params_as<ColorAbcParams>(inst));
        case LemmaId::CliqueCs: return validate(params_as<CliqueCsParams>(inst));
        case LemmaId::HLogConvex: return validate(params_as<HLogConvexParams>(inst));
        case LemmaId::FLogConv: return validate(params_as<FLogConvParams>(inst));
        case LemmaId::MLogConv: return validate(params_as<MLogConvParams>(inst));
        case LemmaId::SymMonotone:
        case LemmaId::SymCorollary: return validate(params_as<SymParams>(inst));
    }
}

IneqReport check_local_lemma(const LemmaInstance& inst, const CompareOptions& o) {
    validate_lemma_instance(inst);
    const std::string& label = inst.label;
    switch (inst.id) {
        case LemmaId::MixedNorm: return run_mixed_norm(params_as<MixedNormParams>(inst), label, o);
        case LemmaId::MixedNorm2: return run_mixed_norm2(params_as<MixedNorm2Params>(inst), label, o);
        case LemmaId::Local123: return run_local123(params_as<Local123Params>(inst), label, o);
        case LemmaId::ColorHolder: return run_color_holder(params_as<ColorHolderParams>(inst), label, o);
        case LemmaId::ColorBcd: return run_color_bcd(params_as<ColorBcdParams>(inst), label, o);
        case LemmaId::ColorAc: return run_color_abc(params_as<ColorAbcParams>(inst), false, label, o);
        case LemmaId::ColorAbc: return run_color_abc(params_as<ColorAbcParams>(inst), true, label, o);
        case LemmaId::CliqueCs: return run_clique_cs(params_as<CliqueCsParams>(inst), label, o);
        case LemmaId::HLogConvex: return run_h_log_convex(params_as<HLogConvexParams>(inst), label, o);
        case LemmaId::FLogConv: return run_f_log_conv(params_as<FLogConvParams>(inst), label, o);
        case LemmaId::MLogConv: return run_m_log_conv(params_as<MLogConvParams>(inst), label, o);
        case LemmaId::SymMonotone: {
            const auto& p = params_as<SymParams>(inst);
            IneqReport r = check_sym_monotone(p.alphas, p.k, o);
            if (!label.empty()) r.instance = label;
            return r;
        }
        case LemmaId::SymCorollary: {
            const auto& p = params_as<SymParams>(inst);
            IneqReport r = check_sym_corollary(p.alphas, p.k, o);
            if (!label.empty()) r.instance = label;
            return r;
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown lemma");
}

// Symmetric polynomial averages ---------------------------------------------------------

Rational sym_f(const std::vector<Rational>& alphas, int k, std::uint32_t subset) {
    // Inclusion-exclusion over the subsets T of S: tuples drawn from T, signed.
    const int size = std::popcount(subset);
    Rational total = 0;
    for (std::uint32_t t = subset;; t = (t - 1) & subset) {
        Rational s = 0;
        for (std::uint32_t r = t; r != 0; r &= r - 1) s += alphas[static_cast<std::size_t>(std::countr_zero(r))];
        Rational term = k == 0 ? Rational(1) : pow_int(s, k);
        if ((size - std::popcount(t)) % 2) total -= term;
        else total += term;
        if (t == 0) break;
    }
    return total;
}

std::vector<Rational> sym_averages(const std::vector<Rational>& alphas, int k) {
    validate(SymParams{alphas, k});
    const DistinctProfile d = distinct_profile(alphas, k);
    std::vector<Rational> m;
    for (std::size_t l = 1; l < d.tuples.size(); ++l) m.push_back(d.weight[l] / Rational(d.tuples[l]));
    return m;
}

IneqReport check_sym_monotone(const std::vector<Rational>& alphas, int k, const CompareOptions& o) {
    const auto m = sym_averages(alphas, k);
    std::vector<CheckStep> checks;
    for (std::size_t l = 0; l + 1 < m.size(); ++l)
        checks.push_back(inequality_step("m" + std::to_string(l + 2) + " <= m" + std::to_string(l + 1),
                                         Expr::constant(m[l + 1]), Expr::constant(m[l]), o));
    const int n = static_cast<int>(alphas.size());
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        if (std::popcount(s) > k) continue;
        Rational rec = 0;
        for (std::uint32_t r = s; r != 0; r &= r - 1) {
            const int x = std::countr_zero(r);
            rec += alphas[static_cast<std::size_t>(x)] *
                   (sym_f(alphas, k - 1, s) + sym_f(alphas, k - 1, s & ~(std::uint32_t{1} << x)));
        }
        checks.push_back(identity_step("recursion S=" + std::to_string(s), Expr::constant(sym_f(alphas, k, s)),
                                       Expr::constant(rec), o));
    }
    checks.push_back(corollary_step(alphas, k, o));
    IneqReport r = aggregate_report("sym-monotone", sym_label(alphas, k), std::move(checks));
    std::string seq;
    for (std::size_t i = 0; i < m.size(); ++i) seq += (i ? ", " : "") + format_rational(m[i]);
    r.notes.push_back("m = (" + seq + ")");
    return r;
}

IneqReport check_sym_corollary(const std::vector<Rational>& alphas, int k, const CompareOptions& o) {
    validate(SymParams{alphas, k});
    return aggregate_report("sym-corollary", sym_label(alphas, k), {corollary_step(alphas, k, o)});
}

// Random instances ---------------------------------------------------------------------

namespace {

using detail::draw;
using detail::small_rational;

EdgeKernel random_kernel(std::mt19937_64& rng, int rows, int cols) {
    std::vector<Rational> v;
    for (int i = 0; i < rows * cols; ++i) v.push_back(small_rational(rng, 0, 4, 3));
    return EdgeKernel(rows, cols, std::move(v));
}

VertexConstraint random_vector(std::mt19937_64& rng, int q, long lo) {
    VertexConstraint c;
    for (int i = 0; i < q; ++i) c.weights.push_back(small_rational(rng, lo, 4, 3));
    return c;
}

VertexConstraint times(const VertexConstraint& a, const VertexConstraint& b) {
    VertexConstraint c = a;
    for (std::size_t i = 0; i < c.weights.size(); ++i) c.weights[i] *= b.weights[i];
    return c;
}

Rational random_q(std::mt19937_64& rng) {
    static const Rational qs[] = {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2), Rational(3)};
    return qs[draw(rng, 0, 4)];
}

ColorSet random_set(std::mt19937_64& rng, int q) { return static_cast<ColorSet>(draw(rng, 0, (1L << q) - 1)); }

ColorSet random_nonempty_set(std::mt19937_64& rng, int q) {
    return static_cast<ColorSet>(draw(rng, 1, (1L << q) - 1));
}

// Nonempty subset of `within` when it has members.
ColorSet random_subset(std::mt19937_64& rng, ColorSet within) {
    if (within == 0) return 0;
    ColorSet s = 0;
    while (s == 0) s = random_set(rng, 16) & within;
    return s;
}

Model psd_model(std::mt19937_64& rng, int q) {
    return random_model(q, static_cast<std::uint64_t>(draw(rng, 0, 1L << 40)), RandomModelKind::Psd);
}

}  // namespace

LemmaInstance random_lemma_instance(LemmaId id, std::uint64_t seed) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(1000 + static_cast<std::uint64_t>(id))));
    LemmaInstance inst;
    inst.id = id;
    inst.label = "random:" + std::string(to_string(id)) + ":" + std::to_string(seed);
    switch (id) {
        case LemmaId::MixedNorm: {
            const int m = static_cast<int>(draw(rng, 1, 3));
            inst.params = MixedNormParams{random_kernel(rng, m, static_cast<int>(draw(rng, 1, 3))),
                                          random_kernel(rng, m, static_cast<int>(draw(rng, 1, 3))), random_q(rng)};
            break;
        }
        case LemmaId::MixedNorm2: {
            const int s = static_cast<int>(draw(rng, 1, 2));
            const int t = static_cast<int>(draw(rng, 1, 2));
            MixedNorm2Params p;
            p.f = random_kernel(rng, s, t);
            p.g = random_kernel(rng, s * t, static_cast<int>(draw(rng, 1, 2)));
            p.h = random_kernel(rng, s * t, static_cast<int>(draw(rng, 1, 3)));
            p.q = random_q(rng);
            inst.params = p;
            break;
        }
        case LemmaId::Local123: {
            Local123Params p;
            const int n1 = static_cast<int>(draw(rng, 1, 3));
            const int n2 = static_cast<int>(draw(rng, 1, 3));
            const int n3 = static_cast<int>(draw(rng, 1, 3));
            p.f12 = random_kernel(rng, n1, n2);
            p.f23 = random_kernel(rng, n2, n3);
            p.delta = static_cast<int>(draw(rng, 1, 3));
            p.beta = static_cast<int>(draw(rng, 1, p.delta));
            p.gamma = static_cast<int>(draw(rng, 2, 3));
            inst.params = p;
            break;
        }
        case LemmaId::ColorHolder: {
            ColorHolderParams p;
            p.q = static_cast<int>(draw(rng, 3, 5));
            p.looped = random_set(rng, p.q) & random_set(rng, p.q);
            p.a_set = random_nonempty_set(rng, p.q);
            p.b_set = random_nonempty_set(rng, p.q);
            p.k = static_cast<int>(draw(rng, 1, 3));
            p.r = static_cast<int>(draw(rng, 0, 2));
            p.t = static_cast<int>(draw(rng, p.r + 2, 5));
            p.s = static_cast<int>(draw(rng, p.r + 1, p.t - 1));
            inst.params = p;
            break;
        }
        case LemmaId::ColorBcd: {
            static const Rational ts[] = {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)};
            ColorBcdParams p;
            p.q = static_cast<int>(draw(rng, 3, 5));
            p.looped = random_set(rng, p.q) & random_set(rng, p.q);
            p.b_set = random_nonempty_set(rng, p.q);
            p.c_set = random_nonempty_set(rng, p.q);
            p.d_set = random_subset(rng, p.c_set & ~p.looped);
            p.b = static_cast<int>(draw(rng, 2, 3));
            p.c = static_cast<int>(draw(rng, 1, 3));
            p.k = static_cast<int>(draw(rng, 1, 3));
            p.t = ts[draw(rng, 0, 3)];
            inst.params = p;
            break;
        }
        case LemmaId::ColorAc:
        case LemmaId::ColorAbc: {
            ColorAbcParams p;
            p.q = static_cast<int>(draw(rng, 3, 5));
            p.looped = random_set(rng, p.q) & random_set(rng, p.q);
            p.a_set = random_nonempty_set(rng, p.q);
            p.b_set = random_nonempty_set(rng, p.q);
            p.c_set = random_nonempty_set(rng, p.q);
            p.a = static_cast<int>(draw(rng, 2, 3));
            do {
                p.b = static_cast<int>(draw(rng, 1, p.a));
                p.c = static_cast<int>(draw(rng, 1, p.a));
            } while (p.b + p.c < 3);
            inst.params = p;
            break;
        }
        case LemmaId::CliqueCs: {
            const int n = static_cast<int>(draw(rng, 1, 4));
            std::vector<Edge> edges;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (draw(rng, 0, 1)) edges.emplace_back(u, v);
            CliqueCsParams p;
            p.g = Graph(n, edges);
            const int q = static_cast<int>(draw(rng, 1, 3));
            p.m = random_model(q, static_cast<std::uint64_t>(draw(rng, 0, 1L << 40)), RandomModelKind::General);
            for (int v = 0; v < n; ++v) {
                VertexConstraint a = random_vector(rng, q, 0);
                VertexConstraint b = random_vector(rng, q, 0);
                p.lambda.push_back(times(a, a));
                p.mu.push_back(times(b, b));
                p.nu.push_back(times(a, b));
            }
            VertexConstraint apex = random_vector(rng, q, 0);
            p.lambda.push_back(apex);
            p.lambda.push_back(apex);
            p.nu.push_back(apex);
            inst.params = p;
            break;
        }
        case LemmaId::HLogConvex: {
            HLogConvexParams p;
            const int q = static_cast<int>(draw(rng, 1, 3));
            p.m = psd_model(rng, q);
            VertexConstraint a = random_vector(rng, q, 0);
            VertexConstraint b = random_vector(rng, q, 0);
            p.lambda = times(a, a);
            p.mu = times(b, b);
            p.nu = times(a, b);
            p.t = static_cast<int>(draw(rng, 2, 3));
            p.delta = static_cast<int>(draw(rng, p.t + 1, 4));
            inst.params = p;
            break;
        }
        case LemmaId::FLogConv: {
            FLogConvParams p;
            const int q = static_cast<int>(draw(rng, 1, 3));
            p.m = psd_model(rng, q);
            p.mu = random_vector(rng, q, 0);
            p.nu = random_vector(rng, q, 0);
            p.a = static_cast<int>(draw(rng, 1, 4));
            inst.params = p;
            break;
        }
        case LemmaId::MLogConv: {
            MLogConvParams p;
            const int q = static_cast<int>(draw(rng, 1, 3));
            p.m = psd_model(rng, q);
            p.lambda = random_vector(rng, q, 1);
            p.mu = random_vector(rng, q, 1);
            p.delta = static_cast<int>(draw(rng, 1, 3));
            p.a = static_cast<int>(draw(rng, 1, p.delta));
            p.b = static_cast<int>(draw(rng, 1, p.a));
            inst.params = p;
            break;
        }
        case LemmaId::SymMonotone:
        case LemmaId::SymCorollary: {
            SymParams p;
            const int n = static_cast<int>(draw(rng, 1, 5));
            for (int i = 0; i < n; ++i) p.alphas.push_back(small_rational(rng, 0, 4, 3));
            p.k = static_cast<int>(draw(rng, 1, 5));
            inst.params = p;
            break;
        }
    }
    return inst;
}

// JSON -------------------------------------------------------------------------------------

namespace {

using nlohmann::json;

json rat(const Rational& r) { return format_rational(r); }

Rational rat_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    fail(ErrorKind::ParseError, "rationals must be \"p/q\" strings or integers");
}

json kernel_json(const EdgeKernel& k) {
    json rows = json::array();
    for (int i = 0; i < k.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < k.cols; ++j) row.push_back(rat(k.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

EdgeKernel kernel_from(const json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "kernel must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    std::vector<Rational> v;
    for (const auto& row : j) {
        if (static_cast<int>(row.size()) != cols) fail(ErrorKind::ParseError, "kernel rows differ in length");
        for (const auto& x : row) v.push_back(rat_from(x));
    }
    return EdgeKernel(rows, cols, std::move(v));
}

json vec_json(const VertexConstraint& c) {
    json a = json::array();
    for (const auto& w : c.weights) a.push_back(rat(w));
    return a;
}

VertexConstraint vec_from(const json& j) {
    VertexConstraint c;
    for (const auto& x : j) c.weights.push_back(rat_from(x));
    return c;
}

json vecs_json(const Constraints& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back(vec_json(c));
    return a;
}

Constraints vecs_from(const json& j) {
    Constraints cs;
    for (const auto& x : j) cs.push_back(vec_from(x));
    return cs;
}

json set_json(ColorSet s) { return members(s); }

ColorSet set_from(const json& j) {
    ColorSet s = 0;
    for (const auto& x : j) {
        int c = x.get<int>();
        if (c < 0 || c >= kMaxColors) fail(ErrorKind::ParseError, "color out of range");
        s |= ColorSet{1} << c;
    }
    return s;
}

json params_json(const LemmaParams& params) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MixedNormParams>) {
                return json{{"A", kernel_json(p.a)}, {"B", kernel_json(p.b)}, {"q", rat(p.q)}};
            } else if constexpr (std::is_same_v<T, MixedNorm2Params>) {
                return json{{"f", kernel_json(p.f)}, {"g", kernel_json(p.g)}, {"h", kernel_json(p.h)}, {"q", rat(p.q)}};
            } else if constexpr (std::is_same_v<T, Local123Params>) {
                return json{{"f12", kernel_json(p.f12)}, {"f23", kernel_json(p.f23)},
                            {"beta", p.beta},           {"gamma", p.gamma},
                            {"delta", p.delta}};
            } else if constexpr (std::is_same_v<T, ColorHolderParams>) {
                return json{{"colors", p.q}, {"looped", set_json(p.looped)}, {"A", set_json(p.a_set)},
                            {"B", set_json(p.b_set)}, {"k", p.k}, {"r", p.r}, {"s", p.s}, {"t", p.t}};
            } else if constexpr (std::is_same_v<T, ColorBcdParams>) {
                return json{{"colors", p.q}, {"looped", set_json(p.looped)}, {"B", set_json(p.b_set)},
                            {"C", set_json(p.c_set)}, {"D", set_json(p.d_set)}, {"b", p.b}, {"c", p.c},
                            {"k", p.k}, {"t", rat(p.t)}};
            } else if constexpr (std::is_same_v<T, ColorAbcParams>) {
                return json{{"colors", p.q}, {"looped", set_json(p.looped)}, {"A", set_json(p.a_set)},
                            {"B", set_json(p.b_set)}, {"C", set_json(p.c_set)}, {"a", p.a}, {"b", p.b}, {"c", p.c}};
            } else if constexpr (std::is_same_v<T, CliqueCsParams>) {
                return json{{"graph", "g6:" + to_graph6(p.g)}, {"model", model_to_json(p.m)},
                            {"lambda", vecs_json(p.lambda)},   {"mu", vecs_json(p.mu)},
                            {"nu", vecs_json(p.nu)}};
            } else if constexpr (std::is_same_v<T, HLogConvexParams>) {
                return json{{"model", model_to_json(p.m)}, {"lambda", vec_json(p.lambda)}, {"mu", vec_json(p.mu)},
                            {"nu", vec_json(p.nu)},         {"t", p.t},                    {"delta", p.delta}};
            } else if constexpr (std::is_same_v<T, FLogConvParams>) {
                return json{{"model", model_to_json(p.m)}, {"mu", vec_json(p.mu)}, {"nu", vec_json(p.nu)}, {"a", p.a}};
            } else if constexpr (std::is_same_v<T, MLogConvParams>) {
                return json{{"model", model_to_json(p.m)}, {"lambda", vec_json(p.lambda)}, {"mu", vec_json(p.mu)},
                            {"a", p.a}, {"b", p.b}, {"delta", p.delta}};
            } else {
                json a = json::array();
                for (const auto& x : p.alphas) a.push_back(rat(x));
                return json{{"alphas", a}, {"k", p.k}};
            }
        },
        params);
}

LemmaParams params_from(LemmaId id, const json& j) {
    switch (id) {
        case LemmaId::MixedNorm:
            return MixedNormParams{kernel_from(j.at("A")), kernel_from(j.at("B")), rat_from(j.at("q"))};
        case LemmaId::MixedNorm2:
            return MixedNorm2Params{kernel_from(j.at("f")), kernel_from(j.at("g")), kernel_from(j.at("h")),
                                    rat_from(j.at("q"))};
        case LemmaId::Local123:
            return Local123Params{kernel_from(j.at("f12")), kernel_from(j.at("f23")), j.at("beta").get<int>(),
                                  j.at("gamma").get<int>(), j.at("delta").get<int>()};
        case LemmaId::ColorHolder:
            return ColorHolderParams{j.at("colors").get<int>(), set_from(j.value("looped", json::array())),
                                     set_from(j.at("A")), set_from(j.at("B")), j.at("k").get<int>(),
                                     j.at("r").get<int>(), j.at("s").get<int>(), j.at("t").get<int>()};
        case LemmaId::ColorBcd:
            return ColorBcdParams{j.at("colors").get<int>(), set_from(j.value("looped", json::array())),
                                  set_from(j.at("B")), set_from(j.at("C")), set_from(j.at("D")),
                                  j.at("b").get<int>(), j.at("c").get<int>(), j.at("k").get<int>(),
                                  rat_from(j.at("t"))};
        case LemmaId::ColorAc:
        case LemmaId::ColorAbc:
            return ColorAbcParams{j.at("colors").get<int>(), set_from(j.value("looped", json::array())),
                                  set_from(j.at("A")), set_from(j.at("B")), set_from(j.at("C")),
                                  j.at("a").get<int>(), j.at("b").get<int>(), j.at("c").get<int>()};
        case LemmaId::CliqueCs:
            return CliqueCsParams{load_graph(j.at("graph").get<std::string>()), model_from_json(j.at("model")),
                                  vecs_from(j.at("lambda")), vecs_from(j.at("mu")), vecs_from(j.at("nu"))};
        case LemmaId::HLogConvex:
            return HLogConvexParams{model_from_json(j.at("model")), vec_from(j.at("lambda")), vec_from(j.at("mu")),
                                    vec_from(j.at("nu")), j.at("t").get<int>(), j.at("delta").get<int>()};
        case LemmaId::FLogConv:
            return FLogConvParams{model_from_json(j.at("model")), vec_from(j.at("mu")), vec_from(j.at("nu")),
                                  j.at("a").get<int>()};
        case LemmaId::MLogConv:
            return MLogConvParams{model_from_json(j.at("model")), vec_from(j.at("lambda")), vec_from(j.at("mu")),
                                  j.at("a").get<int>(), j.at("b").get<int>(), j.at("delta").get<int>()};
        case LemmaId::SymMonotone:
        case LemmaId::SymCorollary: {
            SymParams p;
            for (const auto& x : j.at("alphas")) p.alphas.push_back(rat_from(x));
            p.k = j.at("k").get<int>();
            return p;
        }
    }
    fail(ErrorKind::ParseError, "unknown lemma");
}

}  // namespace

nlohmann::json lemma_instance_to_json(const LemmaInstance& inst) {
    return json{{"lemma", std::string(to_string(inst.id))}, {"label", inst.label}, {"params", params_json(inst.params)}};
}

LemmaInstance lemma_instance_from_json(const nlohmann::json& j) {
    try {
        LemmaInstance inst;
        inst.id = parse_lemma_id(j.at("lemma").get<std::string>());
        inst.label = j.value("label", std::string{});
        inst.params = params_from(inst.id, j.at("params"));
        return inst;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("lemma instance JSON: ") + e.what());
    }
}

LemmaInstance load_lemma_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open lemma instance '" + path + "'");
    try {
        return lemma_instance_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::ParseError, "lemma instance '" + path + "': " + e.what());
    }
}

}  // namespace homlab
