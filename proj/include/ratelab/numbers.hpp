#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "ratelab/errors.hpp"

namespace ratelab {

// Exact arithmetic throughout: indices and bounds can overflow any fixed
// width (iterated rate functionals grow fast), so everything numeric is
// arbitrary precision. Rational is kept in canonical form by the backend
// (gcd-reduced, positive denominator).
using Int = boost::multiprecision::cpp_int;
using Nat = boost::multiprecision::cpp_int;  // non-negative by convention, checked at boundaries
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

Nat parse_nat(std::string_view text);
std::string format_int(const Int& n);

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// ceil(a / b) for b >= 1.
Nat ceil_div(const Nat& a, const Nat& b);

Int floor_rat(const Rational& q);
Int ceil_rat(const Rational& q);

// ceil of a non-negative rational as a Natural.
Nat ceil_rat_nat(const Rational& q);

// x^k by repeated squaring; k >= 0.
Rational pow_rat(const Rational& x, const Nat& k);

// 2^k for k >= 0.
Nat pow2_nat(const Nat& k);

// Least k in Z with 2^k >= q, for q > 0. Exact: decided by integer
// shift-and-compare, no floating point anywhere.
Int ceil_log2(const Rational& q);

// Decay-length functional: omega(eps, p) = p * max(1, ceil_log2(1/eps)).
// Guarantees omega >= p and x^l <= eps for every x in [0, 1 - 1/p] and
// l >= omega(eps, p). Requires eps > 0 and p >= 1.
Nat omega(const Rational& eps, const Nat& p);

}  // namespace ratelab
