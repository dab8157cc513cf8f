#pragma once

// Exact rational scalars. Allocation probabilities, beliefs and mixing
// weights are defined by exact equalities (probability exactly 1, belief
// exactly 1/2), so on rational-weight graphs all of that arithmetic is done
// in arbitrary-precision rationals; binary doubles only enter for
// irrational quantities (softmax beliefs) or float-weighted input graphs.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "dpp/errors.hpp"

namespace dpp {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double to_double(long long x) { return static_cast<double>(x); }

/// Parses "7", "-3/2" or "0.25" into an exact rational.
inline Rat rat_parse(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  bool neg = !digits.empty() && digits[0] == '-';
  BigInt num(digits);
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  (void)neg;
  return Rat(num, den);
}

/// Recovers the rational a decimal literal meant from its double image.
/// Continued-fraction search bounded by `max_den`; falls back to the exact
/// binary value of the double when nothing small fits. "0.6" therefore
/// becomes 3/5 rather than 5404319552844595/2^53.
inline Rat rat_from_double(double x, std::uint64_t max_den = 1000000) {
  if (!std::isfinite(x)) throw input_error("non-finite number");
  if (x == 0.0) return Rat(0);
  const bool neg = x < 0;
  double target = neg ? -x : x;
  // continued fraction convergents
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = target;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 9e18) break;
    auto a = static_cast<std::uint64_t>(fl);
    if (q0 != 0 && a > (UINT64_MAX - q0) / (q1 ? q1 : 1)) break;
    std::uint64_t p2 = a * p1 + p0;
    std::uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 != 0) {
    Rat cand(BigInt(p1), BigInt(q1));
    double err = std::abs(to_double(cand) - target);
    if (err <= 1e-9 * std::max(1.0, target)) return neg ? Rat(-cand) : cand;
  }
  // exact binary expansion of the double
  int exp = 0;
  double mant = std::frexp(target, &exp);  // mant in [0.5, 1)
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rat r(BigInt(scaled), BigInt(1));
  int shift = exp - 53;
  if (shift >= 0) {
    r *= Rat(BigInt(1) << shift, 1);
  } else {
    r /= Rat(BigInt(1) << (-shift), 1);
  }
  return neg ? Rat(-r) : r;
}

inline std::string rat_str(const Rat& r) { return r.str(); }

/// Traits binding a weight scalar to its comparison rule and to the field
/// its probabilities live in. Integer and rational weights are exact;
/// float weights compare with a fixed tolerance.
template <class W>
struct weight_traits;

template <>
struct weight_traits<long long> {
  static constexpr bool exact = true;
  using field = Rat;
  static bool eq(long long a, long long b) { return a == b; }
  static field to_field(long long a) { return Rat(a); }
};

template <>
struct weight_traits<Rat> {
  static constexpr bool exact = true;
  using field = Rat;
  static bool eq(const Rat& a, const Rat& b) { return a == b; }
  static field to_field(const Rat& a) { return a; }
};

template <>
struct weight_traits<double> {
  static constexpr bool exact = false;
  static constexpr double tol = 1e-9;
  using field = double;
  static bool eq(double a, double b) { return std::abs(a - b) <= tol; }
  static field to_field(double a) { return a; }
};

template <class W>
using field_of = typename weight_traits<W>::field;

template <class W>
field_of<W> to_field(const W& w) {
  return weight_traits<W>::to_field(w);
}

}  // namespace dpp
