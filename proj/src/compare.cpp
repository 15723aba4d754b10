#include "homlab/compare.hpp"

#include "homlab/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

namespace homlab {

// PowerProduct ------------------------------------------------------------------

PowerProduct PowerProduct::of(const Rational& value, const Rational& exponent) {
    PowerProduct p;
    p.multiply(value, exponent);
    return p;
}

bool PowerProduct::is_zero() const noexcept { return factors_.size() == 1 && factors_[0].base == 0; }

PowerProduct& PowerProduct::multiply(const Rational& raw_base, const Rational& raw_exponent) {
    Rational base = raw_base;
    Rational exponent = raw_exponent;
    base.canonicalize();
    exponent.canonicalize();
    if (base < 0) fail(ErrorKind::InvalidArgument, "power product bases must be nonnegative");
    if (exponent == 0 || base == 1) return *this;
    if (base == 0) {
        if (exponent < 0) fail(ErrorKind::InvalidArgument, "zero base with a negative exponent");
        factors_ = {PowerFactor{Rational(0), Rational(1)}};
        return *this;
    }
    if (is_zero()) return *this;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), base,
                               [](const PowerFactor& f, const Rational& b) { return f.base < b; });
    if (it != factors_.end() && it->base == base) {
        it->exponent += exponent;
        if (it->exponent == 0) factors_.erase(it);
    } else {
        factors_.insert(it, PowerFactor{base, exponent});
    }
    return *this;
}

PowerProduct& PowerProduct::multiply(const PowerProduct& other) {
    if (other.is_zero()) {
        factors_ = other.factors_;
        return *this;
    }
    for (const auto& f : other.factors_) multiply(f.base, f.exponent);
    return *this;
}

PowerProduct PowerProduct::raised(const Rational& exponent) const {
    if (exponent == 0) return PowerProduct{};
    if (is_zero()) {
        if (exponent < 0) fail(ErrorKind::InvalidArgument, "zero raised to a negative power");
        return *this;
    }
    PowerProduct p = *this;
    for (auto& f : p.factors_) f.exponent *= exponent;
    return p;
}

std::string PowerProduct::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " * ";
        s += format_rational(factors_[i].base);
        if (factors_[i].exponent != 1) {
            std::string e = format_rational(factors_[i].exponent);
            s += is_integer(factors_[i].exponent) && factors_[i].exponent > 0 ? "^" + e : "^(" + e + ")";
        }
    }
    return s;
}

Ordering reverse(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return Ordering::Equal;
}

CompareOptions default_compare_options() {
    CompareOptions o;
    if (const char* env = std::getenv("HOMLAB_BITCAP"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == nullptr || *end != '\0' || v == 0)
            fail(ErrorKind::InvalidArgument, "HOMLAB_BITCAP must be a positive integer");
        o.bit_cap = v;
    }
    return o;
}

// Interval arithmetic -------------------------------------------------------------

namespace {

class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct Interval {
    Real lo;
    Real hi;
    explicit Interval(mpfr_prec_t p) : lo(p), hi(p) {}
};

Interval interval_of(const Rational& r, mpfr_prec_t p) {
    Interval x(p);
    mpfr_set_q(x.lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(x.hi.get(), r.get_mpq_t(), MPFR_RNDU);
    return x;
}

Interval add(const Interval& a, const Interval& b, mpfr_prec_t p) {
    Interval r(p);
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
}

// Both operands nonnegative.
Interval mul_nonneg(const Interval& a, const Interval& b, mpfr_prec_t p) {
    Interval r(p);
    mpfr_mul(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_mul(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
}

Interval mul_signed(const Interval& a, const Interval& b, mpfr_prec_t p) {
    Interval r(p);
    Real t(p);
    bool first = true;
    for (auto x : {a.lo.get(), a.hi.get()})
        for (auto y : {b.lo.get(), b.hi.get()}) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

// x^(num/den) for x >= 0 and num > 0, rounded in direction rnd.
void root_pow(mpfr_ptr out, mpfr_srcptr x, unsigned long num, unsigned long den, mpfr_rnd_t rnd) {
    mpfr_rootn_ui(out, x, den, rnd);
    mpfr_pow_ui(out, out, num, rnd);
}

Interval pow_nonneg(const Interval& x, const Rational& e, mpfr_prec_t p) {
    Interval r(p);
    const unsigned long den = e.get_den().get_ui();
    BigInt absnum = abs(e.get_num());
    if (!absnum.fits_ulong_p() || !e.get_den().fits_ulong_p())
        fail(ErrorKind::UndecidedAtPrecisionCap, "exponent too large for interval evaluation");
    const unsigned long num = absnum.get_ui();
    if (e > 0) {
        root_pow(r.lo.get(), x.lo.get(), num, den, MPFR_RNDD);
        root_pow(r.hi.get(), x.hi.get(), num, den, MPFR_RNDU);
    } else {
        Real t(p);
        root_pow(t.get(), x.hi.get(), num, den, MPFR_RNDU);
        mpfr_ui_div(r.lo.get(), 1, t.get(), MPFR_RNDD);
        root_pow(t.get(), x.lo.get(), num, den, MPFR_RNDD);
        mpfr_ui_div(r.hi.get(), 1, t.get(), MPFR_RNDU);
    }
    return r;
}

}  // namespace

// Expr ----------------------------------------------------------------------------

struct Expr::Node {
    Kind kind = Kind::Constant;
    Rational value;
    std::vector<Expr> children;
    Rational exponent;
};

namespace {

const Rational& zero_rational() {
    static const Rational z(0);
    return z;
}

}  // namespace

Expr::Expr() : Expr(constant(Rational(0))) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(const Rational& value) {
    if (value < 0) fail(ErrorKind::InvalidArgument, "expressions are nonnegative");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    n->value.canonicalize();
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rational c = 0;
    for (auto& t : terms) {
        if (t.kind() == Kind::Constant) {
            c += t.value();
        } else if (t.kind() == Kind::Sum) {
            for (const auto& s : t.children()) {
                if (s.kind() == Kind::Constant) c += s.value();
                else flat.push_back(s);
            }
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != 0 || flat.empty()) flat.push_back(constant(c));
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rational c = 1;
    for (auto& f : factors) {
        if (f.kind() == Kind::Constant) {
            c *= f.value();
        } else if (f.kind() == Kind::Product) {
            for (const auto& s : f.children()) {
                if (s.kind() == Kind::Constant) c *= s.value();
                else flat.push_back(s);
            }
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c == 0) return constant(0);
    if (c != 1 || flat.empty()) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, const Rational& exponent_in) {
    Rational e = exponent_in;
    e.canonicalize();
    if (e == 0) return constant(1);
    if (e == 1) return base;
    if (base.kind() == Kind::Constant) {
        if (base.value() == 0) {
            if (e < 0) fail(ErrorKind::InvalidArgument, "zero raised to a negative power");
            return constant(0);
        }
        if (base.value() == 1) return base;
        if (is_integer(e) && abs(e.get_num()) <= 64) return constant(pow_int(base.value(), e.get_num().get_si()));
    }
    if (base.kind() == Kind::Power) return power(base.children()[0], base.exponent() * e);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->children = {std::move(base)};
    n->exponent = e;
    return Expr(std::move(n));
}

Expr Expr::from(const PowerProduct& pp) {
    if (pp.is_zero()) return constant(0);
    std::vector<Expr> factors;
    for (const auto& f : pp.factors()) factors.push_back(power(constant(f.base), f.exponent));
    return product(std::move(factors));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->kind == Kind::Constant ? node_->value : zero_rational(); }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Rational& Expr::exponent() const { return node_->exponent; }

std::optional<PowerProduct> Expr::as_power_product() const {
    switch (kind()) {
        case Kind::Constant: return PowerProduct::of(value());
        case Kind::Sum: return std::nullopt;
        case Kind::Product: {
            PowerProduct p;
            for (const auto& c : children()) {
                auto cp = c.as_power_product();
                if (!cp) return std::nullopt;
                p.multiply(*cp);
            }
            return p;
        }
        case Kind::Power: {
            auto cp = children()[0].as_power_product();
            if (!cp) return std::nullopt;
            return cp->raised(exponent());
        }
    }
    return std::nullopt;
}

namespace {

std::uint64_t bit_size(const Rational& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

// Exact evaluation that gives up once a value would exceed `budget` bits.
std::optional<Rational> exact_eval(const Expr& e, std::uint64_t budget) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return e.value();
        case Expr::Kind::Sum: {
            Rational s = 0;
            for (const auto& c : e.children()) {
                auto v = exact_eval(c, budget);
                if (!v) return std::nullopt;
                s += *v;
            }
            return s;
        }
        case Expr::Kind::Product: {
            Rational s = 1;
            for (const auto& c : e.children()) {
                auto v = exact_eval(c, budget);
                if (!v) return std::nullopt;
                s *= *v;
                if (bit_size(s) > budget) return std::nullopt;
            }
            return s;
        }
        case Expr::Kind::Power: {
            auto v = exact_eval(e.children()[0], budget);
            if (!v) return std::nullopt;
            const Rational& ex = e.exponent();
            if (*v == 0) {
                if (ex < 0) fail(ErrorKind::InvalidArgument, "zero raised to a negative power");
                return Rational(0);
            }
            if (!ex.get_den().fits_ulong_p() || !ex.get_num().fits_slong_p()) return std::nullopt;
            Rational root;
            if (!exact_root(*v, ex.get_den().get_ui(), root)) return std::nullopt;
            const long k = ex.get_num().get_si();
            if (static_cast<double>(bit_size(root)) * std::abs(static_cast<double>(k)) > static_cast<double>(budget))
                return std::nullopt;
            return pow_int(root, k);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Rational> Expr::exact_value() const {
    return exact_eval(*this, default_compare_options().bit_cap);
}

std::string Expr::to_string() const {
    switch (kind()) {
        case Kind::Constant: return format_rational(value());
        case Kind::Sum: {
            std::string s = "(";
            for (std::size_t i = 0; i < children().size(); ++i) s += (i ? " + " : "") + children()[i].to_string();
            return s + ")";
        }
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < children().size(); ++i) s += (i ? " * " : "") + children()[i].to_string();
            return s;
        }
        case Kind::Power: {
            const Expr& b = children()[0];
            std::string base = b.kind() == Kind::Product ? "(" + b.to_string() + ")" : b.to_string();
            std::string ex = format_rational(exponent());
            return base + (is_integer(exponent()) && exponent() > 0 ? "^" + ex : "^(" + ex + ")");
        }
    }
    return "?";
}

nlohmann::json Expr::to_json() const {
    switch (kind()) {
        case Kind::Constant: return nlohmann::json{{"const", format_rational(value())}};
        case Kind::Sum:
        case Kind::Product: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : children()) arr.push_back(c.to_json());
            return nlohmann::json{{kind() == Kind::Sum ? "sum" : "prod", arr}};
        }
        case Kind::Power:
            return nlohmann::json{{"pow", children()[0].to_json()}, {"exp", format_rational(exponent())}};
    }
    return nullptr;
}

Expr Expr::from_json(const nlohmann::json& j) {
    try {
        if (j.contains("const")) return constant(parse_rational(j.at("const").get<std::string>()));
        if (j.contains("sum") || j.contains("prod")) {
            const bool is_sum = j.contains("sum");
            std::vector<Expr> parts;
            for (const auto& c : j.at(is_sum ? "sum" : "prod")) parts.push_back(from_json(c));
            return is_sum ? sum(std::move(parts)) : product(std::move(parts));
        }
        if (j.contains("pow")) return power(from_json(j.at("pow")), parse_rational(j.at("exp").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("expression JSON: ") + e.what());
    }
    fail(ErrorKind::ParseError, "unrecognised expression JSON");
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::Constant: return a.value() == b.value();
        case Expr::Kind::Power:
            return a.exponent() == b.exponent() && a.children()[0] == b.children()[0];
        default: return a.children() == b.children();
    }
}

// Power product comparison ---------------------------------------------------------

namespace {

constexpr unsigned kLogGuardBits = 32;

Interval log_sum(const PowerProduct& pp, mpfr_prec_t p) {
    Interval acc(p);
    for (const auto& f : pp.factors()) {
        Interval b = interval_of(f.base, p);
        Interval lb(p);
        mpfr_log(lb.lo.get(), b.lo.get(), MPFR_RNDD);
        mpfr_log(lb.hi.get(), b.hi.get(), MPFR_RNDU);
        acc = add(acc, mul_signed(interval_of(f.exponent, p), lb, p), p);
    }
    return acc;
}

Comparison interval_compare_logs(const PowerProduct& lhs, const PowerProduct& rhs, const CompareOptions& o) {
    for (unsigned p = std::max(o.initial_precision, 64u); p <= o.max_precision; p *= 2) {
        const mpfr_prec_t prec = static_cast<mpfr_prec_t>(p + kLogGuardBits);
        Interval l = log_sum(lhs, prec);
        Interval r = log_sum(rhs, prec);
        if (mpfr_less_p(l.hi.get(), r.lo.get())) return {Ordering::Less, false};
        if (mpfr_greater_p(l.lo.get(), r.hi.get())) return {Ordering::Greater, false};
    }
    fail(ErrorKind::UndecidedAtPrecisionCap,
         "interval comparison undecided up to " + std::to_string(o.max_precision) + " bits");
}

}  // namespace

Comparison compare_power_products(const PowerProduct& lhs, const PowerProduct& rhs, const CompareOptions& o) {
    if (lhs.is_zero() || rhs.is_zero()) {
        if (lhs.is_zero() && rhs.is_zero()) return {Ordering::Equal, true};
        return {lhs.is_zero() ? Ordering::Less : Ordering::Greater, true};
    }
    // Move everything to one quotient lhs / rhs and clear denominators.
    PowerProduct q = lhs;
    q.multiply(rhs.raised(Rational(-1)));
    if (q.factors().empty()) return {Ordering::Equal, true};
    BigInt l = 1;
    for (const auto& f : q.factors()) l = lcm(l, f.exponent.get_den());
    BigInt g = 0;
    std::vector<BigInt> k;
    for (const auto& f : q.factors()) {
        k.push_back(f.exponent.get_num() * (l / f.exponent.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.back().get_mpz_t());
    }
    double bits_up = 0;
    double bits_down = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] /= g;
        double b = static_cast<double>(bit_size(q.factors()[i].base)) * std::abs(k[i].get_d());
        (k[i] > 0 ? bits_up : bits_down) += b;
    }
    if (bits_up <= static_cast<double>(o.bit_cap) && bits_down <= static_cast<double>(o.bit_cap)) {
        Rational up = 1;
        Rational down = 1;
        for (std::size_t i = 0; i < k.size(); ++i) {
            Rational t = pow_int(q.factors()[i].base, std::labs(k[i].get_si()));
            if (k[i] > 0) up *= t;
            else down *= t;
        }
        int c = cmp(up, down);
        return {c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal), true};
    }
    return interval_compare_logs(lhs, rhs, o);
}

// Normal forms -------------------------------------------------------------------------

namespace {

struct TooBig {};

using Monomial = std::map<int, Rational>;
using Poly = std::map<Monomial, Rational>;

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        const unsigned long limit = 1u << 16;
        std::vector<bool> composite(limit + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

class NormalForms {
public:
    explicit NormalForms(std::size_t cap) : cap_(cap) {}

    std::optional<Poly> build(const Expr& e) {
        try {
            return eval(e);
        } catch (const TooBig&) {
            return std::nullopt;
        }
    }

private:
    struct Atom {
        bool is_sum = false;
        BigInt value;
        Poly sum;
    };

    std::size_t cap_;
    std::vector<Atom> atoms_;
    std::map<BigInt, int> int_ids_;
    std::map<Poly, int> sum_ids_;
    std::map<BigInt, std::vector<std::pair<BigInt, unsigned long>>> factor_cache_;

    void guard(std::size_t n) const {
        if (n > cap_) throw TooBig{};
    }

    static Poly constant(const Rational& c) {
        Poly p;
        if (c != 0) p[Monomial{}] = c;
        return p;
    }

    int int_atom(const BigInt& v) {
        auto [it, inserted] = int_ids_.try_emplace(v, static_cast<int>(atoms_.size()));
        if (inserted) atoms_.push_back(Atom{false, v, {}});
        return it->second;
    }

    const std::vector<std::pair<BigInt, unsigned long>>& factor(const BigInt& n) {
        auto it = factor_cache_.find(n);
        if (it != factor_cache_.end()) return it->second;
        std::vector<std::pair<BigInt, unsigned long>> out;
        BigInt r = n;
        for (unsigned long p : small_primes()) {
            if (r == 1) break;
            if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
                unsigned long k = 0;
                while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
                    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
                    ++k;
                }
                out.emplace_back(BigInt(p), k);
            }
        }
        if (r > 1) {
            // leftover with large prime factors: pull out a maximal perfect power
            unsigned long best = 1;
            BigInt base = r;
            const unsigned long top = mpz_sizeinbase(r.get_mpz_t(), 2) / 16 + 1;
            for (unsigned long j = top; j >= 2; --j) {
                BigInt s;
                if (mpz_root(s.get_mpz_t(), r.get_mpz_t(), j) != 0) {
                    best = j;
                    base = s;
                    break;
                }
            }
            out.emplace_back(base, best);
        }
        return factor_cache_.emplace(n, std::move(out)).first->second;
    }

    // coefficient * prod atom^exponent with integer parts of integer-atom
    // exponents folded into the coefficient and integer powers of sum atoms
    // expanded.
    Poly normalize_term(Rational coef, const Monomial& raw) {
        Monomial kept;
        std::vector<std::pair<int, long>> expand;
        for (const auto& [id, e] : raw) {
            if (e == 0) continue;
            const Atom& a = atoms_[static_cast<std::size_t>(id)];
            if (!a.is_sum) {
                BigInt fl;
                mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
                if (!fl.fits_slong_p() || abs(fl) > 4096) throw TooBig{};
                if (fl != 0) coef *= pow_int(Rational(a.value), fl.get_si());
                Rational frac = e - Rational(fl);
                if (frac != 0) kept[id] = frac;
            } else if (is_integer(e) && e > 0) {
                if (e > 16) throw TooBig{};
                expand.emplace_back(id, e.get_num().get_si());
            } else {
                kept[id] = e;
            }
        }
        Poly result;
        result[kept] = coef;
        for (auto [id, k] : expand) {
            Poly s = atoms_[static_cast<std::size_t>(id)].sum;
            for (long i = 0; i < k; ++i) result = mul(result, s);
        }
        return result;
    }

    static void add_into(Poly& acc, const Poly& p) {
        for (const auto& [m, c] : p) {
            auto& slot = acc[m];
            slot += c;
            if (slot == 0) acc.erase(m);
        }
    }

    Poly mul(const Poly& a, const Poly& b) {
        guard(a.size() * b.size());
        Poly out;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                Monomial raw = ma;
                for (const auto& [id, e] : mb) raw[id] += e;
                add_into(out, normalize_term(ca * cb, raw));
                guard(out.size());
            }
        return out;
    }

    Poly rational_power(const Rational& c, const Rational& e) {
        if (c == 0) {
            if (e <= 0) throw TooBig{};  // undefined or 0^0; leave to other paths
            return {};
        }
        if (is_integer(e)) {
            if (abs(e.get_num()) > 4096) throw TooBig{};
            return constant(pow_int(c, e.get_num().get_si()));
        }
        Monomial raw;
        for (const auto& [p, k] : factor(c.get_num())) raw[int_atom(p)] += Rational(BigInt(k)) * e;
        for (const auto& [p, k] : factor(c.get_den())) raw[int_atom(p)] -= Rational(BigInt(k)) * e;
        return normalize_term(Rational(1), raw);
    }

    Poly monomial_power(const Monomial& m, const Rational& c, const Rational& e) {
        Poly cp = rational_power(c, e);
        Poly out;
        for (const auto& [mc, cc] : cp) {
            Monomial raw = mc;
            for (const auto& [id, x] : m) raw[id] += x * e;
            add_into(out, normalize_term(cc, raw));
        }
        return out;
    }

    // S = d * T with the first coefficient of T equal to 1.
    static std::pair<Rational, Poly> split_content(const Poly& s) {
        Rational d = s.begin()->second;
        Poly t;
        for (const auto& [m, c] : s) t[m] = c / d;
        return {d, t};
    }

    // Writes the normalized sum s (first coefficient 1) as base^beta * atom^kappa.
    struct SumAtom {
        int id;
        Rational kappa;
        Rational base;
        Rational beta;
    };

    SumAtom register_sum(const Poly& s) {
        if (auto it = sum_ids_.find(s); it != sum_ids_.end()) return {it->second, Rational(1), Rational(1), Rational(0)};
        for (const auto& [known, id] : sum_ids_) {
            for (int k = 2; k <= 4; ++k) {
                try {
                    auto [d, u] = split_content(power(known, Rational(k)));
                    if (u == s) return {id, Rational(k), d, Rational(-1)};  // s = T^k / d
                } catch (const TooBig&) {
                }
                try {
                    auto [d, u] = split_content(power(s, Rational(k)));
                    if (u == known) return {id, Rational(1, k), d, Rational(1, k)};  // s^k = d T
                } catch (const TooBig&) {
                }
            }
        }
        int id = static_cast<int>(atoms_.size());
        atoms_.push_back(Atom{true, BigInt(0), s});
        sum_ids_.emplace(s, id);
        return {id, Rational(1), Rational(1), Rational(0)};
    }

    Poly power(const Poly& p, const Rational& e) {
        if (e == 0) return constant(1);
        if (p.empty()) {
            if (e < 0) throw TooBig{};
            return {};
        }
        if (p.size() == 1) return monomial_power(p.begin()->first, p.begin()->second, e);
        if (is_integer(e) && e > 0) {
            if (e > 16) throw TooBig{};
            Poly r = constant(1);
            for (long i = 0; i < e.get_num().get_si(); ++i) r = mul(r, p);
            return r;
        }
        auto [d, t] = split_content(p);
        SumAtom a = register_sum(t);
        Poly out = rational_power(d, e);
        if (a.beta != 0) out = mul(out, rational_power(a.base, a.beta * e));
        Monomial m;
        m[a.id] = a.kappa * e;
        Poly atom_part;
        atom_part[m] = 1;
        return mul(out, atom_part);
    }

    Poly eval(const Expr& e) {
        switch (e.kind()) {
            case Expr::Kind::Constant: return constant(e.value());
            case Expr::Kind::Sum: {
                Poly acc;
                for (const auto& c : e.children()) {
                    add_into(acc, eval(c));
                    guard(acc.size());
                }
                return acc;
            }
            case Expr::Kind::Product: {
                Poly acc = constant(1);
                for (const auto& c : e.children()) acc = mul(acc, eval(c));
                return acc;
            }
            case Expr::Kind::Power: return power(eval(e.children()[0]), e.exponent());
        }
        return {};
    }
};

Interval eval_interval(const Expr& e, mpfr_prec_t p) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return interval_of(e.value(), p);
        case Expr::Kind::Sum: {
            Interval acc = interval_of(Rational(0), p);
            for (const auto& c : e.children()) acc = add(acc, eval_interval(c, p), p);
            return acc;
        }
        case Expr::Kind::Product: {
            Interval acc = interval_of(Rational(1), p);
            for (const auto& c : e.children()) acc = mul_nonneg(acc, eval_interval(c, p), p);
            return acc;
        }
        case Expr::Kind::Power: return pow_nonneg(eval_interval(e.children()[0], p), e.exponent(), p);
    }
    return interval_of(Rational(0), p);
}

bool structurally_zero(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return e.value() == 0;
        case Expr::Kind::Sum:
            return std::all_of(e.children().begin(), e.children().end(), structurally_zero);
        case Expr::Kind::Product:
            return std::any_of(e.children().begin(), e.children().end(), structurally_zero);
        case Expr::Kind::Power: return e.exponent() > 0 && structurally_zero(e.children()[0]);
    }
    return false;
}

Ordering order_of(int c) { return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal); }

}  // namespace

Comparison compare(const Expr& lhs, const Expr& rhs, const CompareOptions& o) {
    auto pl = lhs.as_power_product();
    auto pr = rhs.as_power_product();
    if (pl && pr) return compare_power_products(*pl, *pr, o);

    auto vl = exact_eval(lhs, o.bit_cap);
    auto vr = exact_eval(rhs, o.bit_cap);
    if (vl && vr) return {order_of(cmp(*vl, *vr)), true};

    const bool zl = structurally_zero(lhs);
    const bool zr = structurally_zero(rhs);
    if (zl && zr) return {Ordering::Equal, true};

    NormalForms nf(20000);
    auto nl = nf.build(lhs);
    auto nr = nf.build(rhs);
    if (nl && nr && *nl == *nr) return {Ordering::Equal, true};

    for (unsigned p = std::max(o.initial_precision, 64u); p <= o.max_precision; p *= 2) {
        const auto prec = static_cast<mpfr_prec_t>(p);
        Interval l = eval_interval(lhs, prec);
        Interval r = eval_interval(rhs, prec);
        if (mpfr_less_p(l.hi.get(), r.lo.get())) return {Ordering::Less, zl || zr};
        if (mpfr_greater_p(l.lo.get(), r.hi.get())) return {Ordering::Greater, zl || zr};
    }
    fail(ErrorKind::UndecidedAtPrecisionCap,
         "comparison undecided up to " + std::to_string(o.max_precision) + " bits");
}

double slack_log10(const Expr& lhs, const Expr& rhs) {
    const bool zl = structurally_zero(lhs);
    const bool zr = structurally_zero(rhs);
    if (zl && zr) return 0.0;
    if (zl) return std::numeric_limits<double>::infinity();
    if (zr) return -std::numeric_limits<double>::infinity();
    auto pl = lhs.as_power_product();
    auto pr = rhs.as_power_product();
    const mpfr_prec_t prec = 128;
    Real mid_l(prec), mid_r(prec);
    if (pl && pr) {
        Interval l = log_sum(*pl, prec);
        Interval r = log_sum(*pr, prec);
        mpfr_add(mid_l.get(), l.lo.get(), l.hi.get(), MPFR_RNDN);
        mpfr_add(mid_r.get(), r.lo.get(), r.hi.get(), MPFR_RNDN);
        mpfr_sub(mid_r.get(), mid_r.get(), mid_l.get(), MPFR_RNDN);
        return mpfr_get_d(mid_r.get(), MPFR_RNDN) / 2.0 / std::log(10.0);
    }
    Interval l = eval_interval(lhs, prec);
    Interval r = eval_interval(rhs, prec);
    mpfr_add(mid_l.get(), l.lo.get(), l.hi.get(), MPFR_RNDN);
    mpfr_add(mid_r.get(), r.lo.get(), r.hi.get(), MPFR_RNDN);
    mpfr_log10(mid_l.get(), mid_l.get(), MPFR_RNDN);
    mpfr_log10(mid_r.get(), mid_r.get(), MPFR_RNDN);
    mpfr_sub(mid_r.get(), mid_r.get(), mid_l.get(), MPFR_RNDN);
    return mpfr_get_d(mid_r.get(), MPFR_RNDN);
}

}  // namespace homlab
