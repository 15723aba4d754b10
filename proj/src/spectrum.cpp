#include "homlab/spectrum.hpp"

#include "homlab/errors.hpp"

#include <utility>

namespace homlab {

namespace {

void trim(Polynomial& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Polynomial& p) { return static_cast<int>(p.size()) - 1; }

Polynomial derivative(const Polynomial& p) {
    Polynomial d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Polynomial subtract(Polynomial a, const Polynomial& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Returns (quotient, remainder); b must be nonzero.
std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
    trim(a);
    const int db = degree(b);
    Polynomial q;
    if (degree(a) >= db) q.assign(static_cast<std::size_t>(degree(a) - db + 1), Rational(0));
    while (!a.empty() && degree(a) >= db) {
        const int shift = degree(a) - db;
        Rational factor = a.back() / b.back();
        q[static_cast<std::size_t>(shift)] = factor;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= factor * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Polynomial monic(Polynomial p) {
    trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

Polynomial gcd(Polynomial a, Polynomial b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

int sign(const Rational& r) { return sgn(r); }

int sign_changes(const std::vector<int>& signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Polynomial reflect(const Polynomial& p) {
    Polynomial r = p;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return r;
}

int positive_roots_with_multiplicity(const Polynomial& p) {
    int total = 0;
    auto factors = square_free_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (degree(factors[i]) < 1) continue;
        total += static_cast<int>(i + 1) * sturm_positive_root_count(factors[i]);
    }
    return total;
}

}  // namespace

Polynomial characteristic_polynomial(const std::vector<Rational>& matrix, int n) {
    if (n < 0 || matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        fail(ErrorKind::DimensionMismatch, "characteristic polynomial needs an n x n matrix");
    auto at = [n](const std::vector<Rational>& m, int i, int j) -> const Rational& {
        return m[static_cast<std::size_t>(i * n + j)];
    };
    Polynomial c(static_cast<std::size_t>(n) + 1, Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    std::vector<Rational> m(static_cast<std::size_t>(n * n), Rational(0));  // M_0 = 0
    for (int k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        std::vector<Rational> next(static_cast<std::size_t>(n * n), Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational s = 0;
                for (int l = 0; l < n; ++l) s += at(matrix, i, l) * at(m, l, j);
                next[static_cast<std::size_t>(i * n + j)] = s;
            }
        for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i * n + i)] += c[static_cast<std::size_t>(n - k + 1)];
        m = std::move(next);
        Rational trace = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) trace += at(matrix, i, l) * at(m, l, i);
        c[static_cast<std::size_t>(n - k)] = -trace / k;
    }
    return c;
}

int sturm_positive_root_count(const Polynomial& p_in) {
    Polynomial p = p_in;
    trim(p);
    if (p.empty()) fail(ErrorKind::InvalidArgument, "Sturm count of the zero polynomial");
    if (p[0] == 0) fail(ErrorKind::InvalidArgument, "Sturm count needs p(0) != 0");
    if (degree(p) == 0) return 0;
    std::vector<Polynomial> seq{p, derivative(p)};
    while (!seq.back().empty() && degree(seq.back()) > 0) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        seq.push_back(r);
    }
    std::vector<int> at_zero;
    std::vector<int> at_inf;
    for (const auto& s : seq) {
        at_zero.push_back(sign(s[0]));
        at_inf.push_back(sign(s.back()));
    }
    return sign_changes(at_zero) - sign_changes(at_inf);
}

std::vector<Polynomial> square_free_decomposition(const Polynomial& p_in) {
    Polynomial f = monic(p_in);
    if (f.empty()) fail(ErrorKind::InvalidArgument, "square-free decomposition of zero");
    std::vector<Polynomial> out;
    if (degree(f) == 0) return out;
    Polynomial df = derivative(f);
    Polynomial a = gcd(f, df);
    Polynomial b = divmod(f, a).first;
    Polynomial c = divmod(df, a).first;
    Polynomial d = subtract(c, derivative(b));
    while (degree(b) > 0) {
        Polynomial ai = gcd(b, d);
        out.push_back(ai);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = subtract(c, derivative(b));
    }
    return out;
}

Inertia symmetric_inertia(const std::vector<Rational>& matrix, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (matrix[static_cast<std::size_t>(i * n + j)] != matrix[static_cast<std::size_t>(j * n + i)])
                fail(ErrorKind::NonSymmetric, "matrix is not symmetric");
    Polynomial p = characteristic_polynomial(matrix, n);
    Inertia result;
    std::size_t z = 0;
    while (z < p.size() && p[z] == 0) ++z;
    result.zero = static_cast<int>(z);
    Polynomial q(p.begin() + static_cast<long>(z), p.end());
    result.positive = positive_roots_with_multiplicity(q);
    result.negative = positive_roots_with_multiplicity(reflect(q));
    if (result.positive + result.negative + result.zero != n)
        fail(ErrorKind::InvalidArgument, "eigenvalue count mismatch; matrix spectrum is not real");
    return result;
}

}  // namespace homlab
