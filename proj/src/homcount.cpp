#include "homlab/homcount.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cctype>
#include <sstream>

namespace homlab {

namespace {

BigInt denominator_lcm(const std::vector<Rational>& values) {
    BigInt d = 1;
    for (const auto& v : values) d = lcm(d, v.get_den());
    return d;
}

BigInt scaled_integer(const Rational& v, const BigInt& d) {
    BigInt r = v.get_num() * (d / v.get_den());
    return r;
}

void check_constraint(const VertexConstraint& c, int q) {
    if (c.weights.size() != static_cast<std::size_t>(q))
        fail(ErrorKind::DimensionMismatch, "constraint length " + std::to_string(c.weights.size()) +
                                               " does not match q = " + std::to_string(q));
    for (const auto& w : c.weights)
        if (w < 0) fail(ErrorKind::NegativeWeight, "negative constraint weight");
}

// Visits every multiset of size `size` over `support` (count vector indexed
// like support) in lexicographic order.
template <typename Visit>
void for_each_multiset(std::size_t support, int size, Visit&& visit) {
    std::vector<int> counts(support, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == support) {
            counts[i] = left;
            visit(counts);
            counts[i] = 0;
            return;
        }
        for (int c = left; c >= 0; --c) {
            counts[i] = c;
            self(self, i + 1, left - c);
        }
        counts[i] = 0;
    };
    if (support == 0) {
        if (size == 0) visit(counts);
        return;
    }
    rec(rec, 0, size);
}

BigInt multinomial(int total, const std::vector<int>& counts) {
    BigInt r = factorial(static_cast<unsigned long>(total));
    for (int c : counts) r /= factorial(static_cast<unsigned long>(c));
    return r;
}

// Sum over y in cols^b of prod_j wb(y_j) * (sum_x wa(x) prod_j f(x, y_j))^a,
// with the y tuples compressed to multisets.
Rational contract(const std::vector<Rational>& wa, const std::vector<Rational>& wb,
                  const std::function<const Rational&(int, int)>& f, int a, int b) {
    std::vector<int> cols;
    for (std::size_t y = 0; y < wb.size(); ++y)
        if (wb[y] != 0) cols.push_back(static_cast<int>(y));
    std::vector<int> rows;
    for (std::size_t x = 0; x < wa.size(); ++x)
        if (wa[x] != 0) rows.push_back(static_cast<int>(x));
    Rational total = 0;
    for_each_multiset(cols.size(), b, [&](const std::vector<int>& counts) {
        Rational weight = 1;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (counts[j] > 0) weight *= pow_int(wb[static_cast<std::size_t>(cols[j])], counts[j]);
        if (weight == 0) return;
        Rational inner = 0;
        for (int x : rows) {
            Rational p = wa[static_cast<std::size_t>(x)];
            for (std::size_t j = 0; j < cols.size() && p != 0; ++j)
                if (counts[j] > 0) p *= pow_int(f(x, cols[j]), counts[j]);
            inner += p;
        }
        if (inner == 0 && a > 0) return;
        total += Rational(multinomial(b, counts)) * weight * pow_int(inner, a);
    });
    return total;
}

std::vector<Rational> side_weights(const Model& m, const VertexConstraint* c) {
    std::vector<Rational> w = m.vertex_weights();
    if (c != nullptr) {
        check_constraint(*c, m.q());
        for (int i = 0; i < m.q(); ++i) w[static_cast<std::size_t>(i)] *= c->weights[static_cast<std::size_t>(i)];
    }
    return w;
}

// Number of maps from an a-set onto a k-set.
BigInt surjections(int a, int k) {
    BigInt total = 0;
    for (int i = 0; i <= k; ++i) {
        BigInt term = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i)) *
                      pow_int(BigInt(k - i), static_cast<unsigned long>(a));
        if (i % 2 == 0) total += term;
        else total -= term;
    }
    return total;
}

}  // namespace

// VertexConstraint / EdgeKernel ------------------------------------------------

VertexConstraint VertexConstraint::ones(int q) {
    return VertexConstraint{std::vector<Rational>(static_cast<std::size_t>(q), Rational(1))};
}

VertexConstraint VertexConstraint::from_list(int q, ColorSet allowed) {
    if (q < 1 || q > kMaxColors) fail(ErrorKind::InvalidArgument, "color count must be in 1..16");
    if ((allowed & ~full_color_set(q)) != 0) fail(ErrorKind::InvalidArgument, "list contains a color >= q");
    VertexConstraint c;
    for (int i = 0; i < q; ++i) c.weights.emplace_back((allowed >> i) & 1u ? 1 : 0);
    return c;
}

bool VertexConstraint::is_list() const {
    return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w == 0 || w == 1; });
}

ColorSet VertexConstraint::support() const {
    ColorSet s = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] != 0) s |= ColorSet{1} << i;
    return s;
}

EdgeKernel::EdgeKernel(int rows_, int cols_, std::vector<Rational> values_)
    : rows(rows_), cols(cols_), values(std::move(values_)) {
    if (rows < 1 || cols < 1) fail(ErrorKind::DimensionMismatch, "kernel dimensions must be positive");
    if (values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        fail(ErrorKind::DimensionMismatch, "kernel entry count does not match its shape");
    for (auto& v : values) {
        v.canonicalize();
        if (v < 0) fail(ErrorKind::NegativeWeight, "negative kernel entry");
    }
}

EdgeKernel EdgeKernel::transposed() const {
    std::vector<Rational> t(values.size());
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) t[static_cast<std::size_t>(y * rows + x)] = at(x, y);
    return EdgeKernel(cols, rows, std::move(t));
}

EdgeKernel EdgeKernel::from_model(const Model& m) { return EdgeKernel(m.q(), m.q(), m.edge_weights()); }

EdgeKernel EdgeKernel::indicator_distinct(int q) {
    std::vector<Rational> v;
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) v.emplace_back(x == y ? 0 : 1);
    return EdgeKernel(q, q, std::move(v));
}

// Counting ---------------------------------------------------------------------

Rational hom(const Graph& g, const Model& m, const Constraints* constraints) {
    const int n = g.vertex_count();
    const int q = m.q();
    if (constraints != nullptr) {
        if (constraints->size() != static_cast<std::size_t>(n))
            fail(ErrorKind::DimensionMismatch, "need one constraint per vertex");
        for (const auto& c : *constraints) check_constraint(c, q);
    }
    const BigInt de = denominator_lcm(m.edge_weights());
    std::vector<BigInt> edge(static_cast<std::size_t>(q * q));
    for (int i = 0; i < q * q; ++i)
        edge[static_cast<std::size_t>(i)] = scaled_integer(m.edge_weights()[static_cast<std::size_t>(i)], de);

    // per-vertex integer weights and the colors that survive pruning
    std::vector<std::vector<BigInt>> weight(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> colors(static_cast<std::size_t>(n));
    BigInt denominator = pow_int(de, static_cast<unsigned long>(g.edge_count()));
    for (int v = 0; v < n; ++v) {
        std::vector<Rational> w = m.vertex_weights();
        if (constraints != nullptr)
            for (int c = 0; c < q; ++c) w[static_cast<std::size_t>(c)] *= (*constraints)[static_cast<std::size_t>(v)].weights[static_cast<std::size_t>(c)];
        BigInt dv = denominator_lcm(w);
        denominator *= dv;
        for (int c = 0; c < q; ++c) {
            BigInt iw = scaled_integer(w[static_cast<std::size_t>(c)], dv);
            weight[static_cast<std::size_t>(v)].push_back(iw);
            if (iw != 0) colors[static_cast<std::size_t>(v)].push_back(c);
        }
        if (colors[static_cast<std::size_t>(v)].empty()) return 0;
    }
    if (n == 0) return 1;

    // earlier neighbours of each vertex
    std::vector<std::vector<int>> back(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (g.has_edge(u, v)) back[static_cast<std::size_t>(v)].push_back(u);

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::vector<BigInt> partial(static_cast<std::size_t>(n) + 1);
    partial[0] = 1;
    BigInt total = 0;
    BigInt tmp;
    auto rec = [&](auto&& self, int v) -> void {
        const auto& vb = back[static_cast<std::size_t>(v)];
        for (int c : colors[static_cast<std::size_t>(v)]) {
            BigInt& p = partial[static_cast<std::size_t>(v) + 1];
            p = partial[static_cast<std::size_t>(v)] * weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
            for (int u : vb) {
                const BigInt& e = edge[static_cast<std::size_t>(x[static_cast<std::size_t>(u)] * q + c)];
                if (e == 0) {
                    p = 0;
                    break;
                }
                p *= e;
            }
            if (p == 0) continue;
            if (v + 1 == n) {
                total += p;
            } else {
                x[static_cast<std::size_t>(v)] = c;
                self(self, v + 1);
            }
        }
    };
    rec(rec, 0);
    Rational r(total, denominator);
    r.canonicalize();
    return r;
}

Rational hom_biclique(int a, int b, const Model& m, const VertexConstraint* side_a, const VertexConstraint* side_b) {
    if (a < 0 || b < 0) fail(ErrorKind::InvalidArgument, "biclique sides must be nonnegative");
    std::vector<Rational> wa = side_weights(m, side_a);
    std::vector<Rational> wb = side_weights(m, side_b);
    if (b > a) {
        std::swap(a, b);
        std::swap(wa, wb);
    }
    auto f = [&m](int x, int y) -> const Rational& { return m.weight(x, y); };
    return contract(wa, wb, f, a, b);
}

Rational biclique_sum(const EdgeKernel& f, int a, int b) {
    if (a < 0 || b < 0) fail(ErrorKind::InvalidArgument, "biclique sides must be nonnegative");
    if (f.rows < 1 || f.cols < 1) fail(ErrorKind::DimensionMismatch, "empty kernel");
    std::vector<Rational> wa(static_cast<std::size_t>(f.rows), Rational(1));
    std::vector<Rational> wb(static_cast<std::size_t>(f.cols), Rational(1));
    if (b > a) {
        auto g = [&f](int x, int y) -> const Rational& { return f.at(y, x); };
        return contract(wb, wa, g, b, a);
    }
    auto g = [&f](int x, int y) -> const Rational& { return f.at(x, y); };
    return contract(wa, wb, g, a, b);
}

Rational kernel_hom(const Graph& g, const std::vector<EdgeKernel>& kernels) {
    const int n = g.vertex_count();
    if (kernels.size() != static_cast<std::size_t>(g.edge_count()))
        fail(ErrorKind::DimensionMismatch, "need one kernel per edge");
    if (g.has_isolated_vertex()) fail(ErrorKind::IsolatedVertex, "kernel products need every vertex on an edge");
    std::vector<int> size(static_cast<std::size_t>(n), 0);
    auto set_size = [&](int v, int s) {
        int& cur = size[static_cast<std::size_t>(v)];
        if (cur != 0 && cur != s) fail(ErrorKind::DimensionMismatch, "kernel shapes disagree at vertex " + std::to_string(v));
        cur = s;
    };
    std::vector<Rational> all;
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        auto [u, v] = g.edges()[i];
        set_size(u, kernels[i].rows);
        set_size(v, kernels[i].cols);
        all.insert(all.end(), kernels[i].values.begin(), kernels[i].values.end());
    }
    const BigInt d = denominator_lcm(all);
    std::vector<std::vector<BigInt>> ik(kernels.size());
    for (std::size_t i = 0; i < kernels.size(); ++i)
        for (const auto& x : kernels[i].values) ik[i].push_back(scaled_integer(x, d));
    // (earlier endpoint, kernel index, earlier endpoint is the row side)
    struct Back {
        int u;
        std::size_t k;
        bool u_is_row;
    };
    std::vector<std::vector<Back>> back(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        auto [u, v] = g.edges()[i];
        back[static_cast<std::size_t>(v)].push_back({u, i, true});
    }
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::vector<BigInt> partial(static_cast<std::size_t>(n) + 1);
    partial[0] = 1;
    BigInt total = 0;
    auto rec = [&](auto&& self, int v) -> void {
        for (int c = 0; c < size[static_cast<std::size_t>(v)]; ++c) {
            BigInt& p = partial[static_cast<std::size_t>(v) + 1];
            p = partial[static_cast<std::size_t>(v)];
            for (const auto& b : back[static_cast<std::size_t>(v)]) {
                const auto& kern = kernels[b.k];
                const BigInt& e = ik[b.k][static_cast<std::size_t>(x[static_cast<std::size_t>(b.u)] * kern.cols + c)];
                if (e == 0) {
                    p = 0;
                    break;
                }
                p *= e;
            }
            if (p == 0) continue;
            if (v + 1 == n) {
                total += p;
            } else {
                x[static_cast<std::size_t>(v)] = c;
                self(self, v + 1);
            }
        }
    };
    if (n > 0) rec(rec, 0);
    else total = 1;
    Rational r(total, pow_int(d, static_cast<unsigned long>(g.edge_count())));
    r.canonicalize();
    return r;
}

std::map<std::vector<int>, Rational> hom_clique_by_color_counts(int a, const Model& m, const VertexConstraint& lambda) {
    if (a < 0) fail(ErrorKind::InvalidArgument, "clique size must be nonnegative");
    std::vector<Rational> w = side_weights(m, &lambda);
    const int q = m.q();
    std::vector<int> support;
    for (int c = 0; c < q; ++c)
        if (w[static_cast<std::size_t>(c)] != 0) support.push_back(c);
    std::map<std::vector<int>, Rational> out;
    if (a == 0) {
        out[std::vector<int>(static_cast<std::size_t>(q), 0)] = 1;
        return out;
    }
    for_each_multiset(support.size(), a, [&](const std::vector<int>& counts) {
        Rational value(multinomial(a, counts));
        for (std::size_t i = 0; i < support.size() && value != 0; ++i) {
            const int ci = counts[i];
            if (ci == 0) continue;
            const int x = support[i];
            value *= pow_int(w[static_cast<std::size_t>(x)], ci);
            if (ci >= 2) value *= pow_int(m.weight(x, x), static_cast<long>(ci) * (ci - 1) / 2);
            for (std::size_t j = i + 1; j < support.size() && value != 0; ++j)
                if (counts[j] > 0) value *= pow_int(m.weight(x, support[j]), static_cast<long>(ci) * counts[j]);
        }
        if (value == 0) return;
        std::vector<int> full(static_cast<std::size_t>(q), 0);
        for (std::size_t i = 0; i < support.size(); ++i) full[static_cast<std::size_t>(support[i])] = counts[i];
        out[full] = value;
    });
    return out;
}

Rational hom_clique(int a, const Model& m, const VertexConstraint& lambda) {
    Rational total = 0;
    for (const auto& [counts, value] : hom_clique_by_color_counts(a, m, lambda)) total += value;
    return total;
}

// Semiproper colorings ---------------------------------------------------------

ColorSet ominus(ColorSet a, ColorSet b, ColorSet looped) { return a & ~(b & ~looped); }

ColorSet ominus(ColorSet a, std::span<const int> colors, ColorSet looped) {
    ColorSet b = 0;
    for (int c : colors) {
        if (c < 0 || c >= kMaxColors) fail(ErrorKind::InvalidArgument, "color out of range");
        b |= ColorSet{1} << c;
    }
    return ominus(a, b, looped);
}

BigInt cc(ColorSet a_set, ColorSet b_set, int a, int b, ColorSet looped) {
    if (a < 0 || b < 0) fail(ErrorKind::InvalidArgument, "biclique sides must be nonnegative");
    std::vector<int> colors;
    for (int c = 0; c < 32; ++c)
        if ((a_set >> c) & 1u) colors.push_back(c);
    BigInt total = 0;
    const std::uint32_t limit = std::uint32_t{1} << colors.size();
    std::vector<BigInt> surj(colors.size() + 1);
    for (std::size_t k = 0; k <= colors.size(); ++k) surj[k] = surjections(a, static_cast<int>(k));
    for (std::uint32_t sub = 0; sub < limit; ++sub) {
        const int k = std::popcount(sub);
        if (k > a) continue;
        if (surj[static_cast<std::size_t>(k)] == 0) continue;
        ColorSet s = 0;
        for (std::size_t i = 0; i < colors.size(); ++i)
            if ((sub >> i) & 1u) s |= ColorSet{1} << colors[i];
        total += surj[static_cast<std::size_t>(k)] *
                 pow_int(BigInt(color_count(ominus(b_set, s, looped))), static_cast<unsigned long>(b));
    }
    return total;
}

BigInt semiproper_count(const Graph& g, std::span<const ColorSet> lists, ColorSet looped) {
    const int n = g.vertex_count();
    if (lists.size() != static_cast<std::size_t>(n)) fail(ErrorKind::DimensionMismatch, "need one list per vertex");
    if (n == 0) return 1;
    std::vector<std::vector<int>> back(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (g.has_edge(u, v)) back[static_cast<std::size_t>(v)].push_back(u);
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    BigInt total = 0;
    auto rec = [&](auto&& self, int v) -> void {
        ColorSet allowed = lists[static_cast<std::size_t>(v)];
        for (int u : back[static_cast<std::size_t>(v)]) allowed = ominus(allowed, ColorSet{1} << x[static_cast<std::size_t>(u)], looped);
        if (v + 1 == n) {
            total += std::popcount(allowed);
            return;
        }
        for (ColorSet m = allowed; m; m &= m - 1) {
            x[static_cast<std::size_t>(v)] = std::countr_zero(m);
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return total;
}

// H_eps expansion ----------------------------------------------------------------

Rational EpsPolynomial::evaluate(const Rational& eps) const {
    Rational r = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) r = r * eps + *it;
    return r;
}

std::string EpsPolynomial::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (i) s += ", ";
        s += format_rational(coefficients[i]);
    }
    return s + "]";
}

EpsPolynomial hom_eps_polynomial(const Graph& g) {
    const int n = g.vertex_count();
    if (n > kMaxEpsPolynomialVertices) fail(ErrorKind::LimitExceeded, "eps polynomial supports at most 12 vertices");
    const int e = g.edge_count();
    std::vector<BigInt> histogram(static_cast<std::size_t>(e) + 1, 0);
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        int mono = 0;
        for (auto [u, v] : g.edges()) mono += ((x >> u) & 1u) == ((x >> v) & 1u);
        histogram[static_cast<std::size_t>(mono)] += 1;
    }
    EpsPolynomial p;
    p.coefficients.assign(static_cast<std::size_t>(e) + 1, Rational(0));
    const BigInt scale = pow_int(BigInt(2), static_cast<unsigned long>(n));
    for (int m = 0; m <= e; ++m) {
        if (histogram[static_cast<std::size_t>(m)] == 0) continue;
        for (int k = 0; k <= m; ++k) {
            BigInt term = histogram[static_cast<std::size_t>(m)] * binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k)) *
                          pow_int(BigInt(2), static_cast<unsigned long>(k));
            p.coefficients[static_cast<std::size_t>(k)] += Rational(term, scale);
        }
    }
    for (auto& c : p.coefficients) c.canonicalize();
    return p;
}

// Constraint files ---------------------------------------------------------------

Constraints parse_constraints(std::string_view text, int n, int q) {
    Constraints out(static_cast<std::size_t>(n), VertexConstraint::ones(q));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::istringstream in{std::string(text)};
    std::string line;
    int next_vertex = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        int v = next_vertex;
        std::string body = line;
        auto colon = line.find(':');
        if (colon != std::string::npos) {
            Rational rv = parse_rational(line.substr(0, colon));
            if (!is_integer(rv)) fail(ErrorKind::ParseError, "vertex id must be an integer");
            v = static_cast<int>(rv.get_num().get_si());
            body = line.substr(colon + 1);
        }
        if (v < 0 || v >= n) fail(ErrorKind::DimensionMismatch, "constraint for vertex " + std::to_string(v) + " out of range");
        if (seen[static_cast<std::size_t>(v)]) fail(ErrorKind::ParseError, "duplicate constraint for vertex " + std::to_string(v));
        seen[static_cast<std::size_t>(v)] = true;
        next_vertex = v + 1;
        auto open = body.find('{');
        if (open != std::string::npos) {
            auto close = body.find('}', open);
            if (close == std::string::npos) fail(ErrorKind::ParseError, "unterminated list in constraints");
            std::string inner = body.substr(open + 1, close - open - 1);
            for (char& c : inner)
                if (c == ',') c = ' ';
            std::istringstream ls(inner);
            std::string tok;
            ColorSet allowed = 0;
            while (ls >> tok) {
                Rational c = parse_rational(tok);
                if (!is_integer(c) || c < 0 || c >= q) fail(ErrorKind::DimensionMismatch, "list color out of range");
                allowed |= ColorSet{1} << c.get_num().get_si();
            }
            out[static_cast<std::size_t>(v)] = VertexConstraint::from_list(q, allowed);
            continue;
        }
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream ls(body);
        std::string tok;
        VertexConstraint c;
        while (ls >> tok) c.weights.push_back(parse_rational(tok));
        check_constraint(c, q);
        out[static_cast<std::size_t>(v)] = c;
    }
    return out;
}

std::string format_constraints(const Constraints& constraints) {
    std::ostringstream out;
    for (std::size_t v = 0; v < constraints.size(); ++v) {
        const auto& c = constraints[v];
        out << v << ":";
        if (c.is_list()) {
            out << " {";
            bool first = true;
            for (std::size_t i = 0; i < c.weights.size(); ++i) {
                if (c.weights[i] == 0) continue;
                out << (first ? "" : ",") << i;
                first = false;
            }
            out << "}";
        } else {
            for (const auto& w : c.weights) out << ' ' << format_rational(w);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace homlab
