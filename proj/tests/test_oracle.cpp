#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/actions.hpp"

using namespace noether;

TEST_CASE("modular helpers") {
  CHECK(powmod(3, 16, 17) == 1);
  CHECK(mulmod(invmod(5, 17), 5, 17) == 1);
  CHECK_THROWS_AS(invmod(17, 17), AlgebraError);
  CHECK(is_prime_u64(1048583));
  CHECK_FALSE(is_prime_u64(1048577));  // 17 * 61681
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(1));
}

TEST_CASE("primes with a root of unity") {
  PrimeField f1 = find_prime_with_root(1, 2);
  CHECK(f1.q == 2);
  PrimeField f4 = find_prime_with_root(4, 2);
  CHECK(f4.q == 5);
  PrimeField f8 = find_prime_with_root(8, 2);
  CHECK(f8.q == 17);
  for (int m : {3, 8, 9, 16, 25, 32}) {
    PrimeField f = find_prime_with_root(m);
    CHECK(f.q >= kDefaultMinQ);
    CHECK((f.q - 1) % m == 0);
    CHECK(powmod(f.omega, m, f.q) == 1);
    for (int d = 1; d < m; ++d)
      if (m % d == 0) CHECK(powmod(f.omega, d, f.q) != 1);
  }
  // the default lower bound 2^20+1 is not prime; the search must move on
  CHECK(find_prime_with_root(1).q > kDefaultMinQ);
}

TEST_CASE("images of cyclotomic elements") {
  PrimeField F = find_prime_with_root(8, 17);
  const CycField& K = CycField::get(8);
  CHECK(F.image(K.zeta(1)) == F.omega);
  CHECK(F.image(K.zeta(1), 3) == powmod(F.omega, 3, F.q));
  CHECK(F.image(K.from_rational(Rational(1, 2))) == invmod(2, 17));
  CycElem e = K.zeta(1) * K.zeta(1) + K.from_int(3);
  CHECK(F.image(e * e) == mulmod(F.image(e), F.image(e), F.q));
}

TEST_CASE("evaluation") {
  PrimeField F = find_prime_with_root(1, 17);
  const CycField& K = CycField::get(1);
  RF x = RF::variable(K, 2, 0), y = RF::variable(K, 2, 1);
  RF f = (x + y) / (x - y);
  CHECK(evaluate(f, {3, 1}, F) == uint64_t{2});
  CHECK_FALSE(evaluate(f, {4, 4}, F).has_value());
  CompiledRatFunc c(f, F);
  (void)c;
}

TEST_CASE("sample checks") {
  PrimeField F = find_prime_with_root(4, 17);
  const CycField& K = CycField::get(4);
  RF x = RF::variable(K, 2, 0), y = RF::variable(K, 2, 1);
  OracleResult ok = sample_check((x * x - y * y) / (x - y), x + y, F, 100, 1);
  CHECK(ok.ok);
  CHECK(ok.agree == 100);
  CHECK(ok.trials == 100);
  OracleResult bad = sample_check(x * y, x + y, F, 100, 1);
  CHECK_FALSE(bad.ok);
  // same seed, same verdict and counts
  OracleResult again = sample_check(x * y, x + y, F, 100, 1);
  CHECK(again.agree == bad.agree);
  CHECK(step_seed("a", "b") == step_seed("a", "b"));
  CHECK(step_seed("a", "b") != step_seed("a", "c"));
}

TEST_CASE("identity for the involution quotient over F_17") {
  PrimeField F = find_prime_with_root(1, 17);
  const CycField& K = CycField::get(1);
  const size_t nv = 4;
  RF x = RF::variable(K, nv, 0), y = RF::variable(K, nv, 1), a = RF::variable(K, nv, 2), b = RF::variable(K, nv, 3);
  auto [u, v] = theorem_2_3_uv(x, y, a, b);
  RF lhs = (x - a / x) / (b * x / y - a * y / x);
  RF rhs = u / (b * u * u - a * v * v);
  OracleResult r = sample_check(lhs, rhs, F, 100, 42);
  CHECK(r.ok);
  CHECK(r.agree == 100);
  CHECK_FALSE(sample_check(lhs, -rhs, F, 100, 42).ok);
}
