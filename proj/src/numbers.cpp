// SPDX-License-Identifier: MIT

#include "fec2d/numbers.hpp"

#include "fec2d/errors.hpp"

namespace fec2d {

Rational ratFromString(const std::string& s) {
  if (s.empty()) throw ParseError("empty number literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ParseError("bad number literal '" + s + "'");
  }
}

std::string ratToString(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer result = 1;
  for (long i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

Integer factorial(long n) {
  Integer result = 1;
  for (long i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace fec2d
