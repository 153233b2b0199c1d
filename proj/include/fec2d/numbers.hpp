// SPDX-License-Identifier: MIT

#ifndef FEC2D_NUMBERS_HPP
#define FEC2D_NUMBERS_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>

namespace fec2d {

/// Exact arbitrary-precision scalar types. All arithmetic in this project is
/// rational; no floating-point path exists anywhere.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatVector2 = Eigen::Matrix<Rational, 2, 1>;
using RatMatrix2 = Eigen::Matrix<Rational, 2, 2>;
using Index = Eigen::Index;

/// Parse "p/q" or "p" (arbitrary precision, q > 0 after normalization).
Rational ratFromString(const std::string& s);

/// Format in lowest terms, "p/q" or "p" when q == 1.
std::string ratToString(const Rational& r);

Integer binomial(long n, long k);
Integer factorial(long n);

/// 90-degree clockwise rotation (a,b) -> (b,-a), the perp convention used throughout.
inline RatVector2 perp(const RatVector2& v) { return RatVector2(v[1], -v[0]); }

inline Rational cross2(const RatVector2& a, const RatVector2& b) {
  return a[0] * b[1] - a[1] * b[0];
}

}  // namespace fec2d

#endif
