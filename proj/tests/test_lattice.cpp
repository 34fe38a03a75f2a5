#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "noether/lattice.hpp"

using namespace noether;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

Integer gcd_entries(const IntMatrix& m) {
  Integer g = 0;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(m(i, j)).get_mpz_t());
  return g;
}

Integer gcd_2x2_minors(const IntMatrix& m) {
  Integer g = 0;
  for (size_t a = 0; a < m.rows(); ++a)
    for (size_t b = a + 1; b < m.rows(); ++b)
      for (size_t c = 0; c < m.cols(); ++c)
        for (size_t d = c + 1; d < m.cols(); ++d) {
          Integer minor = m(a, c) * m(b, d) - m(a, d) * m(b, c);
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
        }
  return g;
}

}  // namespace

TEST_CASE("determinants") {
  CHECK(determinant(IntMatrix::identity(4)) == 1);
  CHECK(abs(determinant(IntMatrix{{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}})) == 1);
  CHECK(determinant(IntMatrix{{2, 0}, {0, 1}}) == 2);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK_THROWS(determinant(IntMatrix(2, 3)));
  // cofactor expansion oracle on random 4x4
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m = random_matrix(rng, 3, 3, -9, 9);
    Integer cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    CHECK(determinant(m) == cof);
  }
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(IntMatrix::identity(3)));
  CHECK_FALSE(is_unimodular(IntMatrix{{2, 0}, {0, 2}}));
  // z over y in the D/Q subcase with lambda(zeta) = zeta^{-1}, n = 4
  IntMatrix z{{1, -4, -2, 2}, {0, 0, 1, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  CHECK(is_unimodular(z));
  IntMatrix inv = unimodular_inverse(z);
  CHECK(inv * z == IntMatrix::identity(4));
  CHECK(z * inv == IntMatrix::identity(4));
  CHECK_THROWS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}));
}

TEST_CASE("Smith normal form") {
  SmithForm z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.D.is_zero());
  CHECK(z.U == IntMatrix::identity(2));
  CHECK(z.V == IntMatrix::identity(3));
  SmithForm s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  CHECK(s.D == IntMatrix({{2, 0}, {0, 4}}));
  SmithForm u = smith_normal_form(IntMatrix{{2, 1}, {1, 1}});
  CHECK(u.D == IntMatrix::identity(2));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const size_t r = 2 + t % 3, c = 2 + (t / 3) % 3;
    IntMatrix m = random_matrix(rng, r, c, -6, 6);
    SmithForm f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.D);
    CHECK(f.D.is_diagonal());
    CHECK(is_unimodular(f.U));
    CHECK(is_unimodular(f.V));
    const size_t k = std::min(r, c);
    for (size_t i = 0; i + 1 < k; ++i)
      if (f.D(i + 1, i + 1) != 0) CHECK(f.D(i + 1, i + 1) % f.D(i, i) == 0);
    // d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    CHECK(f.D(0, 0) == gcd_entries(m));
    CHECK(f.D(0, 0) * f.D(1, 1) == gcd_2x2_minors(m));
  }
}

TEST_CASE("diagonal invariant lattices") {
  CHECK(diagonal_invariant_lattice({0, 0, 0}, 5) == IntMatrix::identity(3));
  CHECK(diagonal_invariant_lattice({1, 2}, 3) == IntMatrix({{1, 1}, {0, 3}}));
  CHECK(diagonal_invariant_lattice({1}, 2) == IntMatrix({{2}}));

  // brute force: the lattice contains m Z^r, so its index is m^r / |L cap [0,m)^r|
  for (const auto& [w, m] : std::vector<std::pair<std::vector<long long>, long long>>{
           {{1, 2}, 3}, {{1, 1, -1, -1}, 4}, {{1, -1, -1, 1}, 8}, {{2, 4, 6}, 8}, {{1, 7, 3, 5}, 8}, {{3, 6}, 9}}) {
    IntMatrix B = diagonal_invariant_lattice(w, m);
    const size_t r = w.size();
    long count = 0, total = 1;
    for (size_t i = 0; i < r; ++i) total *= m;
    for (long idx = 0; idx < total; ++idx) {
      long x = idx, dot = 0;
      for (size_t i = 0; i < r; ++i) {
        dot += (x % m) * w[i];
        x /= m;
      }
      count += mod_floor(dot, m) == 0;
    }
    CHECK(abs(determinant(B)) == total / count);
    for (size_t i = 0; i < B.rows(); ++i) {
      Integer dot = 0;
      const Integer mm(static_cast<long>(m));
      for (size_t j = 0; j < r; ++j) dot += B(i, j) * Integer(static_cast<long>(w[j]));
      CHECK(dot % mm == 0);
    }
  }
}
