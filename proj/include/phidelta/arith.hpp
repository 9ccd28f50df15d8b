#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace phidelta {

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  explicit RingMismatch(std::string const& what)
      : Error("ring mismatch: " + what) {}
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(std::string const& what)
      : Error("bound exceeded: " + what) {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

namespace arith {

using int_t = std::int64_t;

inline int_t gcd(int_t a, int_t b) {
  return std::gcd(a, b);
}

// lcm(0, x) = 0, matching the ideal convention 0Z ∩ xZ = 0Z.
inline int_t lcm(int_t a, int_t b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return std::lcm(a, b);
}

inline int_t abs(int_t a) {
  return a < 0 ? -a : a;
}

// Least nonnegative residue.
inline int_t mod(int_t a, int_t n) {
  int_t r = a % n;
  return r < 0 ? r + n : r;
}

// Distinct prime factors in increasing order; n = 0 and |n| = 1 have none.
inline std::vector<int_t> prime_factors(int_t n) {
  n = abs(n);
  std::vector<int_t> out;
  for (int_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) {
        n /= p;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

// Product of the distinct prime factors; radical(0) = 0, radical(1) = 1.
inline int_t radical(int_t n) {
  if (n == 0) {
    return 0;
  }
  int_t r = 1;
  for (int_t p : prime_factors(n)) {
    r *= p;
  }
  return r;
}

inline std::vector<int_t> divisors(int_t n) {
  n = abs(n);
  std::vector<int_t> small, large;
  for (int_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) {
        large.push_back(n / d);
      }
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline int_t checked_mul(int_t a, int_t b) {
  int_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw BoundExceeded("integer overflow in multiplication");
  }
  return r;
}

}  // namespace arith
}  // namespace phidelta
