#include "homlab/rational.hpp"

#include "homlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace homlab {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) return false;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
    }
    out.set_str(std::string(text.substr(i)), 10);
    if (negative) out = -out;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    BigInt num;
    BigInt den = 1;
    auto slash = text.find('/');
    bool ok;
    if (slash == std::string_view::npos) {
        ok = parse_integer(text, num);
    } else {
        ok = parse_integer(trim(text.substr(0, slash)), num) && parse_integer(trim(text.substr(slash + 1)), den);
        if (ok && (den < 0 || text.substr(slash + 1).find_first_of("+-") != std::string_view::npos)) ok = false;
    }
    if (!ok) fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational make_rational(long num, long den) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational pow_int(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) fail(ErrorKind::InvalidArgument, "zero to a negative power");
        Rational inv = 1 / base;
        return pow_int(inv, -exponent);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(n, d);
    r.canonicalize();
    return r;
}

BigInt pow_int(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

bool exact_root(const Rational& value, unsigned long degree, Rational& root) {
    if (degree == 0) fail(ErrorKind::InvalidArgument, "root of degree 0");
    if (value < 0) return false;
    BigInt n, d;
    if (mpz_root(n.get_mpz_t(), value.get_num_mpz_t(), degree) == 0) return false;
    if (mpz_root(d.get_mpz_t(), value.get_den_mpz_t(), degree) == 0) return false;
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

double log10_approx(const Rational& value) {
    if (value <= 0) return value == 0 ? -HUGE_VAL : std::nan("");
    long en = 0;
    long ed = 0;
    double mn = mpz_get_d_2exp(&en, value.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, value.get_den_mpz_t());
    return std::log10(mn / md) + static_cast<double>(en - ed) * std::log10(2.0);
}

}  // namespace homlab
