#include "noether/common.hpp"

#include <cstdlib>

namespace noether {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw AlgebraError("exponent overflow in addition");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw AlgebraError("exponent overflow in multiplication");
  return r;
}

long long ipow(long long base, int exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  long long r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long mod_inverse(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, r = mod_floor(a, m);
  if (m == 1) return 0;
  while (r != 0) {
    long long q = g / r;
    long long t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw AlgebraError("element not invertible modulo " + std::to_string(m));
  return mod_floor(x, m);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace noether
