#ifndef NOETHER_COMMON_HPP
#define NOETHER_COMMON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace noether {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for parameter combinations outside the supported families/bounds.
/// The CLI maps it to exit status 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an algebraic precondition fails (division by zero, undefined
/// variable, non-Galois exponent, ...).
class AlgebraError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Outcome of a mechanical check. `detail` is human readable and, on
/// failure, carries the offending expression or relation.
struct Verdict {
  bool ok = true;
  std::string detail;

  static Verdict pass(std::string d = {}) { return {true, std::move(d)}; }
  static Verdict fail(std::string d) { return {false, std::move(d)}; }
  explicit operator bool() const { return ok; }
};

// Checked 64-bit helpers used for exponent arithmetic.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);
long long ipow(long long base, int exp);
long long mod_floor(long long a, long long m);
long long mod_inverse(long long a, long long m);
long long gcd_ll(long long a, long long b);
bool is_prime(long long n);

}  // namespace noether

#endif
