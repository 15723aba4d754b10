#pragma once

#include "homlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace homlab {

struct PowerFactor {
    Rational base;      // >= 0; a zero base only ever appears with a positive exponent
    Rational exponent;

    friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

/// Formal product of rational powers prod b_i^{e_i}. Normalized on every
/// mutation: equal bases merged, base-1 and exponent-0 factors dropped, factors
/// sorted by base. A zero factor makes the whole product zero and is kept alone.
class PowerProduct {
public:
    PowerProduct() = default;

    static PowerProduct of(const Rational& value, const Rational& exponent = Rational(1));

    PowerProduct& multiply(const Rational& base, const Rational& exponent = Rational(1));
    PowerProduct& multiply(const PowerProduct& other);
    PowerProduct raised(const Rational& exponent) const;

    const std::vector<PowerFactor>& factors() const noexcept { return factors_; }
    bool is_zero() const noexcept;

    std::string to_string() const;

    friend bool operator==(const PowerProduct&, const PowerProduct&) = default;

private:
    std::vector<PowerFactor> factors_;
};

enum class Ordering { Less, Equal, Greater };

Ordering reverse(Ordering o);

struct Comparison {
    Ordering ordering = Ordering::Equal;
    bool exact = true;  // false when the interval fallback decided
};

struct CompareOptions {
    /// Above this estimated size (bits) the exponent-clearing path is skipped.
    std::uint64_t bit_cap = 10'000'000;
    unsigned initial_precision = 128;
    unsigned max_precision = 1u << 15;
};

/// Default options, with HOMLAB_BITCAP (if set) overriding the bit cap.
CompareOptions default_compare_options();

/// Exact ordering by clearing exponent denominators; falls back to outward
/// rounded interval logarithms once either side is estimated to exceed the
/// bit cap. The interval path never answers Equal: persistent overlap up to
/// max_precision raises UndecidedAtPrecisionCap.
Comparison compare_power_products(const PowerProduct& lhs, const PowerProduct& rhs,
                                  const CompareOptions& options = default_compare_options());

/// Nonnegative real expression built from rational constants with sums,
/// products and rational powers. Used for inequality sides that are not a
/// single power product (sums of fractional powers, nested norms).
class Expr {
public:
    enum class Kind { Constant, Sum, Product, Power };

    Expr();  // the constant 0
    static Expr constant(const Rational& value);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, const Rational& exponent);
    static Expr from(const PowerProduct& pp);

    Kind kind() const;
    const Rational& value() const;           // Constant
    const std::vector<Expr>& children() const;  // Sum, Product, Power (one child)
    const Rational& exponent() const;        // Power

    /// Present when the expression is a product of powers of constants.
    std::optional<PowerProduct> as_power_product() const;

    /// Exact rational value when every fractional power reduces exactly.
    std::optional<Rational> exact_value() const;

    std::string to_string() const;
    nlohmann::json to_json() const;
    static Expr from_json(const nlohmann::json& j);

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

inline Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
inline Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
inline Expr pow(const Expr& base, const Rational& exponent) { return Expr::power(base, exponent); }

/// Decision order: power-product exponent clearing when both sides are power
/// products; exact rational evaluation; structural normal form (identical
/// normal forms prove equality); finally interval evaluation.
Comparison compare(const Expr& lhs, const Expr& rhs, const CompareOptions& options = default_compare_options());

/// log10(rhs / lhs) for reporting; +inf when only lhs is zero, -inf when only
/// rhs is zero, 0 when both are.
double slack_log10(const Expr& lhs, const Expr& rhs);

}  // namespace homlab
