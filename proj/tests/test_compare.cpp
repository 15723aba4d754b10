#include "homlab/compare.hpp"
#include "homlab/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace homlab;

namespace {

PowerProduct pp(std::initializer_list<std::pair<long, Rational>> factors) {
    PowerProduct p;
    for (const auto& [b, e] : factors) p.multiply(Rational(b), e);
    return p;
}

PowerProduct random_pp(std::mt19937_64& rng) {
    PowerProduct p;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
        p.multiply(make_rational(1 + static_cast<long>(rng() % 30), 1 + static_cast<long>(rng() % 4)),
                   make_rational(static_cast<long>(rng() % 7) - 2, 1 + static_cast<long>(rng() % 6)));
    return p;
}

CompareOptions interval_only() {
    CompareOptions o;
    o.bit_cap = 0;
    return o;
}

}  // namespace

TEST(PowerProduct, Normalization) {
    EXPECT_EQ(pp({{2, Rational(1, 2)}, {2, Rational(1, 2)}}), PowerProduct::of(2));
    EXPECT_TRUE(pp({{1, Rational(5)}}).factors().empty());
    EXPECT_TRUE(pp({{3, Rational(0)}}).factors().empty());
    EXPECT_TRUE(pp({{3, Rational(1)}, {0, Rational(1, 2)}}).is_zero());
    EXPECT_THROW(PowerProduct::of(Rational(-1)), Error);
    EXPECT_THROW(PowerProduct::of(Rational(0), Rational(-1)), Error);
    EXPECT_EQ(pp({{3, 1}, {2, 1}}).factors().front().base, 2);
}

TEST(ComparePowerProducts, Examples) {
    Comparison c = compare_power_products(PowerProduct::of(66), PowerProduct::of(18, Rational(3, 2)));
    EXPECT_EQ(c.ordering, Ordering::Less);
    EXPECT_TRUE(c.exact);
    c = compare_power_products(pp({{2, Rational(1, 2)}}).multiply(2, Rational(1, 2)), PowerProduct::of(2));
    EXPECT_EQ(c.ordering, Ordering::Equal);
    EXPECT_TRUE(c.exact);
    PowerProduct rhs = PowerProduct::of(7, 2);
    rhs.multiply(63, Rational(1, 5));
    c = compare_power_products(PowerProduct::of(113), rhs);
    EXPECT_EQ(c.ordering, Ordering::Greater);
    EXPECT_TRUE(c.exact);
    // 113^5 and 7^10 * 63 as big integers
    EXPECT_EQ(pow_int(BigInt(113), 5), BigInt("18424351793"));
    EXPECT_EQ(pow_int(BigInt(7), 10) * 63, BigInt("17795940687"));
}

TEST(ComparePowerProducts, ZeroSides) {
    PowerProduct zero = PowerProduct::of(0, Rational(1, 3));
    EXPECT_EQ(compare_power_products(zero, PowerProduct::of(5)).ordering, Ordering::Less);
    EXPECT_EQ(compare_power_products(zero, zero).ordering, Ordering::Equal);
    EXPECT_EQ(compare_power_products(PowerProduct::of(5), zero).ordering, Ordering::Greater);
}

TEST(ComparePowerProducts, AntisymmetricAndTransitive) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const PowerProduct a = random_pp(rng), b = random_pp(rng), c = random_pp(rng);
        const Ordering ab = compare_power_products(a, b).ordering;
        EXPECT_EQ(compare_power_products(b, a).ordering, reverse(ab));
        const Ordering bc = compare_power_products(b, c).ordering;
        if (ab != Ordering::Greater && bc != Ordering::Greater) {
            const Ordering ac = compare_power_products(a, c).ordering;
            EXPECT_NE(ac, Ordering::Greater);
            if (ab == Ordering::Less || bc == Ordering::Less) EXPECT_EQ(ac, Ordering::Less);
        }
    }
}

TEST(ComparePowerProducts, IntervalPathAgreesWithExactPath) {
    std::mt19937_64 rng(2);
    int decided = 0;
    for (int i = 0; i < 1000; ++i) {
        const PowerProduct a = random_pp(rng), b = random_pp(rng);
        const Comparison exact = compare_power_products(a, b);
        ASSERT_TRUE(exact.exact);
        if (exact.ordering == Ordering::Equal) {
            // cancelled factor by factor, or left to intervals which cannot separate equal values
            PowerProduct quotient = a;
            quotient.multiply(b.raised(Rational(-1)));
            if (quotient.factors().empty())
                EXPECT_EQ(compare_power_products(a, b, interval_only()).ordering, Ordering::Equal);
            else
                EXPECT_THROW(compare_power_products(a, b, interval_only()), Error);
            continue;
        }
        const Comparison approx = compare_power_products(a, b, interval_only());
        EXPECT_FALSE(approx.exact);
        EXPECT_EQ(approx.ordering, exact.ordering);
        ++decided;
    }
    EXPECT_GT(decided, 900);
}

TEST(ComparePowerProducts, UndecidedRaisesTypedError) {
    try {
        compare_power_products(PowerProduct::of(2, Rational(1, 2)), PowerProduct::of(8, Rational(1, 6)), interval_only());
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UndecidedAtPrecisionCap);
    }
}

TEST(Expr, Simplification) {
    EXPECT_EQ(Expr::constant(2) + Expr::constant(3), Expr::constant(5));
    EXPECT_EQ(Expr::constant(0) * pow(Expr::constant(7), Rational(1, 2)), Expr::constant(0));
    EXPECT_EQ(pow(Expr::constant(3), Rational(2)), Expr::constant(9));
    EXPECT_EQ(pow(Expr::constant(5), Rational(1)), Expr::constant(5));
    EXPECT_THROW(Expr::constant(-1), Error);
    EXPECT_EQ(Expr::from(PowerProduct::of(4, Rational(1, 2))).exact_value(), Rational(2));
    EXPECT_FALSE(Expr::from(PowerProduct::of(2, Rational(1, 2))).exact_value().has_value());
}

TEST(Expr, CompareSumsOfRadicals) {
    const Expr r2 = pow(Expr::constant(2), Rational(1, 2));
    const Expr r8 = pow(Expr::constant(8), Rational(1, 2));
    // sqrt 2 + sqrt 8 = 3 sqrt 2
    Comparison c = compare(r2 + r8, Expr::constant(3) * r2);
    EXPECT_EQ(c.ordering, Ordering::Equal);
    EXPECT_TRUE(c.exact);
    // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
    c = compare(pow(Expr::constant(1) + r2, Rational(2)), Expr::constant(3) + Expr::constant(2) * r2);
    EXPECT_EQ(c.ordering, Ordering::Equal);
    // (a + b)^(1/2) squared against a + b with a radical inside
    const Expr s = Expr::constant(1) + pow(Expr::constant(3), Rational(1, 3));
    c = compare(pow(pow(s, Rational(1, 2)), Rational(2)), s);
    EXPECT_EQ(c.ordering, Ordering::Equal);
    // sqrt 2 + sqrt 3 < sqrt 10
    c = compare(r2 + pow(Expr::constant(3), Rational(1, 2)), pow(Expr::constant(10), Rational(1, 2)));
    EXPECT_EQ(c.ordering, Ordering::Less);
    EXPECT_EQ(compare(Expr::constant(Rational(1, 3)), Expr::constant(Rational(1, 2))).ordering, Ordering::Less);
}

TEST(Expr, JsonRoundTrip) {
    const Expr e = Expr::constant(Rational(3, 2)) * pow(Expr::constant(2) + pow(Expr::constant(5), Rational(1, 3)), Rational(2, 3));
    EXPECT_EQ(Expr::from_json(e.to_json()), e);
    EXPECT_THROW(Expr::from_json(nlohmann::json{{"bogus", 1}}), Error);
}

TEST(SlackLog10, SignsAndInfinities) {
    EXPECT_NEAR(slack_log10(Expr::constant(1), Expr::constant(10)), 1.0, 1e-12);
    EXPECT_NEAR(slack_log10(Expr::constant(100), Expr::constant(10)), -1.0, 1e-12);
    EXPECT_TRUE(std::isinf(slack_log10(Expr::constant(0), Expr::constant(3))));
    EXPECT_EQ(slack_log10(Expr::constant(0), Expr::constant(0)), 0.0);
}

TEST(CompareOptions, EnvironmentOverride) {
    setenv("HOMLAB_BITCAP", "1234", 1);
    EXPECT_EQ(default_compare_options().bit_cap, 1234u);
    setenv("HOMLAB_BITCAP", "junk", 1);
    EXPECT_THROW(default_compare_options(), Error);
    unsetenv("HOMLAB_BITCAP");
    EXPECT_EQ(default_compare_options().bit_cap, 10'000'000u);
}
