#pragma once

#include <algorithm>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "fano/errors.hpp"

namespace fano {

/// Arbitrary-precision signed integer. Every count, dimension and
/// inequality in this library is evaluated exactly over these; there is
/// no floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;

/// Binomial coefficient C(a, b). Returns 0 when b < 0 or b > a.
[[nodiscard]] inline BigInt binomial(long long a, long long b) {
  if (a < 0) throw invalid_input("binomial: a must be nonnegative");
  if (b < 0 || b > a) return BigInt(0);
  b = std::min(b, a - b);
  BigInt result(1);
  for (long long i = 1; i <= b; ++i) {
    result *= (a - b + i);
    result /= i;  // running value is C(a-b+i, i), so division is exact
  }
  return result;
}

/// Gaussian binomial [a choose b]_q: the number of b-dimensional linear
/// subspaces of an a-dimensional vector space over a field with q
/// elements,
///
///   [a choose b]_q = prod_{i=0}^{b-1} (q^{a-i} - 1) / (q^{b-i} - 1).
[[nodiscard]] inline BigInt gaussian_binomial(long long a, long long b, long long q) {
  if (a < 0 || b < 0) throw invalid_input("gaussian_binomial: negative argument");
  if (b > a) throw invalid_input("gaussian_binomial: b exceeds a");
  if (q < 2) throw invalid_input("gaussian_binomial: q must be at least 2");
  const BigInt base(q);
  BigInt numerator(1);
  BigInt denominator(1);
  for (long long i = 0; i < b; ++i) {
    numerator *= boost::multiprecision::pow(base, static_cast<unsigned>(a - i)) - 1;
    denominator *= boost::multiprecision::pow(base, static_cast<unsigned>(b - i)) - 1;
  }
  return numerator / denominator;  // exact: the q-binomial is an integer
}

/// Deterministic primality test by trial division; correct for all
/// 0 <= p < 2^63 and fast for the supported modulus range p < 2^31.
[[nodiscard]] inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0 || p % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= p; d += 6) {
    if (p % d == 0 || p % (d + 2) == 0) return false;
  }
  return true;
}

}  // namespace fano
