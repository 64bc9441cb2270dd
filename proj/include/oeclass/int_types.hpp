#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oeclass {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Floor division and the matching remainder in [0, |b|).
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// Exact division; throws if b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("exact_div: division by zero");
  Int q = a / b;
  if (q * b != a) throw std::domain_error("exact_div: not divisible");
  return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r = 1;
  Int b = base;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Int binomial(const Int& n, unsigned k) {
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = exact_div(r * (n - Int(i - 1)), Int(i));
  return r;
}

// Stirling numbers of the second kind, S(0,0) = 1.
inline Int stirling2(unsigned k, unsigned j) {
  if (j > k) return 0;
  if (k == 0) return j == 0 ? 1 : 0;
  if (j == 0) return 0;
  // S(k,j) = j*S(k-1,j) + S(k-1,j-1)
  std::vector<Int> row(k + 1, Int(0));
  row[0] = 1;  // S(0,0)
  for (unsigned kk = 1; kk <= k; ++kk) {
    for (unsigned jj = std::min(kk, k); jj >= 1; --jj) {
      row[jj] = Int(jj) * row[jj] + row[jj - 1];
    }
    row[0] = 0;
  }
  return row[j];
}

inline std::string int_to_string(const Int& a) { return a.str(); }

}  // namespace oeclass
