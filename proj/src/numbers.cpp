#include "ratelab/numbers.hpp"

#include <boost/multiprecision/integer.hpp>

namespace ratelab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

Int parse_int_strict(std::string_view text, std::string_view original) {
    bool neg = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text))
        throw config_error("not an integer literal: '" + std::string(original) + "'");
    Int value{std::string(text)};
    return neg ? Int(-value) : value;
}

// Number of bits of x > 0, i.e. floor(log2 x) + 1.
Int bitlen(const Int& x) { return Int(boost::multiprecision::msb(x)) + 1; }

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int_strict(text, text));
    }
    Int num = parse_int_strict(text.substr(0, slash), text);
    std::string_view den_part = text.substr(slash + 1);
    if (!all_digits(den_part))
        throw config_error("denominator must be a positive integer: '" + std::string(text) + "'");
    Int den{std::string(den_part)};
    if (den == 0)
        throw config_error("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational& q) {
    Int den = denominator(q);
    if (den == 1) return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

Nat parse_nat(std::string_view text) {
    if (!all_digits(text))
        throw config_error("not a natural number literal: '" + std::string(text) + "'");
    return Nat{std::string(text)};
}

std::string format_int(const Int& n) { return n.str(); }

Nat ceil_div(const Nat& a, const Nat& b) {
    if (b <= 0) throw domain_error("ceil_div: divisor must be >= 1");
    if (a < 0) throw domain_error("ceil_div: negative dividend");
    return (a + b - 1) / b;
}

Int floor_rat(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int quot = n / d;  // truncates toward zero
    if (n < 0 && quot * d != n) --quot;
    return quot;
}

Int ceil_rat(const Rational& q) { return -floor_rat(Rational(-q)); }

Nat ceil_rat_nat(const Rational& q) {
    if (q < 0) throw domain_error("ceil_rat_nat: negative value");
    return ceil_rat(q);
}

Rational pow_rat(const Rational& x, const Nat& k) {
    if (k < 0) throw domain_error("pow_rat: negative exponent");
    Rational result(1);
    Rational base = x;
    Nat e = k;
    while (e > 0) {
        if ((e & 1) != 0) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

Nat pow2_nat(const Nat& k) {
    if (k < 0) throw domain_error("pow2_nat: negative exponent");
    if (k > 10'000'000) throw resource_error("pow2_nat: exponent too large");
    return Nat(1) << k.convert_to<unsigned long>();
}

Int ceil_log2(const Rational& q) {
    if (q <= 0) throw domain_error("ceil_log2: argument must be positive");
    Int num = numerator(q), den = denominator(q);
    Int k = bitlen(num) - bitlen(den);
    // 2^(k-1) <= q < 2^(k+1), so the answer is one of k-1, k, k+1.
    auto pow2_ge_q = [&](const Int& j) {
        if (j >= 0) return Int(den << j.convert_to<unsigned long>()) >= num;
        return den >= Int(num << Int(-j).convert_to<unsigned long>());
    };
    if (pow2_ge_q(k - 1)) return k - 1;
    if (pow2_ge_q(k)) return k;
    return k + 1;
}

Nat omega(const Rational& eps, const Nat& p) {
    if (eps <= 0) throw domain_error("omega: eps must be positive");
    if (p < 1) throw domain_error("omega: p must be >= 1");
    Int c = ceil_log2(Rational(denominator(eps), numerator(eps)));
    if (c < 1) c = 1;
    return p * c;
}

}  // namespace ratelab
