// core.hpp
//
// Exact arithmetic primitives shared by every module: arbitrary-precision
// integers and rationals, integer roots, and deterministic decimal rendering.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oklab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Floor of a/b for integers, b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("floor_div: zero divisor");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rational& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rational& q) { return ceil_div(num(q), den(q)); }

/// Integer square root: largest s with s*s <= n. Requires n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  if (n == 0) return 0;
  Int x = Int(1) << (unsigned)((boost::multiprecision::msb(n) / 2) + 1);
  while (true) {
    Int y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

/// Integer d-th root: largest s with s^d <= n. Requires n >= 0, d >= 1.
inline Int iroot(const Int& n, unsigned d) {
  if (d == 0) throw std::invalid_argument("iroot: d == 0");
  if (n < 0) throw std::domain_error("iroot of negative");
  if (d == 1 || n <= 1) return n;
  if (d == 2) return isqrt(n);
  Int lo = 0, hi = Int(1) << (unsigned)(boost::multiprecision::msb(n) / d + 1);
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, d) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline Rational pow_rat(const Rational& q, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

/// Exact d-th root of a rational if it is itself rational; nullopt-style
/// signalled by returning false.
inline bool exact_root(const Rational& q, unsigned d, Rational& out) {
  if (q < 0) return false;
  Int rn = iroot(num(q), d), rd = iroot(den(q), d);
  if (boost::multiprecision::pow(rn, d) == num(q) &&
      boost::multiprecision::pow(rd, d) == den(q)) {
    out = Rational(rn, rd);
    return true;
  }
  return false;
}

/// Enclosure of q^(1/d): lo <= q^(1/d) <= hi with hi-lo <= 10^-digits.
/// Exact-rational endpoints; used where roots must be compared soundly.
inline void root_bounds(const Rational& q, unsigned d, unsigned digits,
                        Rational& lo, Rational& hi) {
  if (q < 0) throw std::domain_error("root_bounds of negative");
  Rational exact;
  if (exact_root(q, d, exact)) {
    lo = hi = exact;
    return;
  }
  Int scale = boost::multiprecision::pow(Int(10), digits);
  // floor of (q * 10^(d*digits))^(1/d) gives the scaled lower bound.
  Int scaled_num = num(q) * boost::multiprecision::pow(scale, d);
  Int r = iroot(scaled_num / den(q), d);
  lo = Rational(r, scale);
  hi = Rational(r + 1, scale);
}

/// Render an exact rational as a rounded-to-nearest decimal string with the
/// given number of fraction digits. Deterministic; advisory only (the exact
/// value always travels as "num/den").
inline std::string decimal_string(const Rational& q, unsigned digits = 6) {
  Int n = num(q), d = den(q);
  bool neg = n < 0;
  if (neg) n = -n;
  Int scale = boost::multiprecision::pow(Int(10), digits);
  Int scaled = (n * scale * 2 + d) / (2 * d);  // round half up
  Int whole = scaled / scale, frac = scaled % scale;
  std::string fs = frac.str();
  fs.insert(fs.begin(), digits - fs.size(), '0');
  std::string out = (neg && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) out += "." + fs;
  return out;
}

/// "num/den" form; always reduced, denominator positive.
inline std::string rational_string(const Rational& q) {
  return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  Int n(s.substr(0, slash)), d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(n, d);
}

inline Int factorial(unsigned n) {
  Int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Int int128_to_int(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
  std::uint64_t lo = static_cast<std::uint64_t>(u);
  Int r(hi);
  r <<= 64;
  r += lo;
  return neg ? Int(-r) : r;
}

}  // namespace oklab
