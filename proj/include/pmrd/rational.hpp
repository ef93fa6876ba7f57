#pragma once

// Exact rational scalar for the identity checks in constants.hpp. Arbitrary
// precision integers keep the Moser ladder exact out to n = 30 even when
// N/(N-2) does not reduce to an integer.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace pmrd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational ratio(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& x) {
  return static_cast<double>(boost::multiprecision::cpp_rational(
      x.numerator(), x.denominator()));
}

}  // namespace pmrd
