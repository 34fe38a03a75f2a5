#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/cyclotomic.hpp"

using namespace noether;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

long totient(long m) {
  long c = 0;
  for (long k = 1; k <= m; ++k) c += gcd_ll(k, m) == 1;
  return c;
}

// remainder of x^m - 1 divided by a monic integer polynomial
std::vector<Integer> rem_xm_minus_1(long m, const std::vector<Integer>& f) {
  std::vector<Integer> a(m + 1, Integer(0));
  a[0] = -1;
  a[m] = 1;
  const size_t d = f.size() - 1;
  for (size_t top = a.size(); top-- > d;) {
    Integer c = a[top];
    if (c == 0) continue;
    for (size_t i = 0; i <= d; ++i) a[top - d + i] -= c * f[i];
  }
  a.resize(d);
  return a;
}

}  // namespace

TEST_CASE("cyclotomic polynomials of small order") {
  CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
  CHECK(cyclotomic_polynomial(4) == ints({1, 0, 1}));
  CHECK(cyclotomic_polynomial(8) == ints({1, 0, 0, 0, 1}));
  CHECK(cyclotomic_polynomial(9) == ints({1, 0, 0, 1, 0, 0, 1}));
}

TEST_CASE("Phi_m is monic of degree phi(m) and divides x^m - 1") {
  for (int m = 1; m <= 40; ++m) {
    auto f = cyclotomic_polynomial(m);
    CHECK(f.back() == 1);
    CHECK(static_cast<long>(f.size()) - 1 == totient(m));
    for (const auto& r : rem_xm_minus_1(m, f)) CHECK(r == 0);
  }
}

TEST_CASE("zeta has exact order m") {
  for (int m : {1, 2, 3, 4, 5, 8, 9, 12, 16, 25, 27, 32}) {
    const CycField& K = CycField::get(m);
    CHECK(K.zeta(1).pow(m).is_one());
    for (int d = 1; d < m; ++d)
      if (m % d == 0) CHECK_FALSE(K.zeta(1).pow(d).is_one());
    CHECK(root_order(K.zeta(1)) == m);
  }
}

TEST_CASE("field arithmetic") {
  const CycField& K = CycField::get(8);
  CycElem z = K.zeta(1);
  CHECK(z.pow(4) == K.from_int(-1));
  CHECK(K.zeta(-1) == -z.pow(3));
  CycElem e = K.from_int(3) + z * K.from_rational(Rational(1, 2)) - z.pow(3);
  CHECK((e * e.inverse()).is_one());
  CHECK((e / e).is_one());
  CHECK(e.pow(-2) * e.pow(2) == K.one());
  CHECK(K.zeta(5) == -z);
  CHECK(K.from_int(2).is_rational());
  CHECK_FALSE(z.is_rational());
  const CycField& K9 = CycField::get(9);
  CycElem w = K9.zeta(1) + K9.zeta(4) + K9.from_int(2);
  CHECK((w * w.inverse()).is_one());
}

TEST_CASE("Galois maps") {
  const CycField& K = CycField::get(8);
  CycElem z = K.zeta(1);
  CycElem e = K.from_int(2) + z - z.pow(2);
  CHECK(galois_apply(GaloisMap::identity(8), e) == e);
  CHECK(galois_apply(GaloisMap(8, -1), z) == -z.pow(3));
  CHECK(galois_apply(GaloisMap(8, -1), z.pow(2)) == -z.pow(2));
  // homomorphism and involution when a^2 = 1
  CycElem f = z.pow(3) - K.from_rational(Rational(3, 4));
  for (long a : {3L, 5L, 7L}) {
    GaloisMap g(8, a);
    CHECK(galois_apply(g, e * f) == galois_apply(g, e) * galois_apply(g, f));
    CHECK(galois_apply(g, e + f) == galois_apply(g, e) + galois_apply(g, f));
    CHECK(galois_apply(g, galois_apply(g, e)) == e);
  }
  CHECK_THROWS(GaloisMap(8, 2));
}

TEST_CASE("root orders and logarithms") {
  CHECK(root_order(CycField::get(8).one()) == 1);
  CHECK(root_order(CycField::get(8).zeta(2)) == 4);
  CHECK(root_order(CycField::get(9).zeta(3)) == 3);
  CHECK_FALSE(root_order(CycField::get(8).from_int(2)).has_value());
  CHECK(zeta_log(CycField::get(8).zeta(-1)) == 7);
  CHECK(zeta_log(CycField::get(8).from_int(-1)) == 4);
  CHECK_FALSE(zeta_log(CycField::get(8).from_int(3)).has_value());
}

TEST_CASE("lemma on zeta_4") {
  CHECK(verify_lemma_2_4(3, -1).ok);
  CHECK(verify_lemma_2_4(3, 3).ok);
  CHECK(verify_lemma_2_4(4, -1).ok);
  CHECK(verify_lemma_2_4(5, 15).ok);
  CHECK_FALSE(verify_lemma_2_4(3, 5).ok);  // zeta -> -zeta fixes zeta_4
  CHECK_THROWS(verify_lemma_2_4(2, -1));
}
