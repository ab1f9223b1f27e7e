#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace lgi {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational frac(long num, long den) { return Rational(num, den); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace lgi
