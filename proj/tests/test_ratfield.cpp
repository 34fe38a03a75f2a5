#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/actions.hpp"

using namespace noether;

namespace {

struct Vars {
  const CycField& K = CycField::get(4);
  size_t nv = 4;
  RF x = RF::variable(K, nv, 0), y = RF::variable(K, nv, 1), a = RF::variable(K, nv, 2), b = RF::variable(K, nv, 3);
  RF one = RF::from_int(K, nv, 1);
};

}  // namespace

TEST_CASE("variable spaces") {
  SpacePtr s = make_space({"x0", "x1", "y"});
  CHECK(s->size() == 3);
  CHECK(s->index("y") == 2);
  CHECK_FALSE(s->find("z").has_value());
  CHECK_THROWS_AS(s->index("z"), AlgebraError);
  CHECK_THROWS(make_space({"x", "x"}));
}

TEST_CASE("field arithmetic of rational functions") {
  Vars V;
  RF f = (V.x + V.y) / (V.x - V.y);
  CHECK(equals(f * f.inverse(), V.one));
  CHECK(equals(f - f, RF(V.K, V.nv)));
  CHECK(equals((V.x * V.x - V.y * V.y) / (V.x - V.y), V.x + V.y));
  CHECK(equals(f.pow(-2) * f.pow(3), f));
  CHECK(equals(V.one / V.x * V.x, V.one));
  CHECK(V.x.inverse().is_laurent());
  CHECK((V.x * V.y.inverse()).as_term().has_value());
  CHECK_FALSE((V.x + V.one).as_term().has_value());
  CHECK_THROWS_AS(V.x / RF(V.K, V.nv), AlgebraError);
  RF i = RF::constant(V.K, V.nv, V.K.zeta(1));
  CHECK(equals(i * i, -V.one));
  CHECK_FALSE(equals(V.x, V.y));
}

TEST_CASE("two-variable involution identities") {
  Vars V;
  auto [u, v] = theorem_2_3_uv(V.x, V.y, V.a, V.b);
  RF u2 = u * u, v2 = v * v;
  CHECK(equals(V.x + V.a / V.x, (-V.b * u2 + V.a * v2 + V.one) / v));
  CHECK(equals(V.y + V.b / V.y, (V.b * u2 - V.a * v2 + V.one) / u));
  CHECK(equals(V.x * V.y + V.a * V.b / (V.x * V.y), (-V.b * u2 - V.a * v2 + V.one) / (u * v)));
  // a deliberately wrong sign must be rejected
  CHECK_FALSE(equals(V.x + V.a / V.x, (V.b * u2 + V.a * v2 + V.one) / v));
}

TEST_CASE("substitution") {
  Vars V;
  std::vector<RF> swap{V.y, V.x, V.a, V.b};
  RF f = (V.x * V.x + V.a) / (V.y - V.b);
  CHECK(equals(substitute(substitute(f, swap), swap), f));
  CHECK(equals(substitute(f, identity_images<CycElem>(V.K, V.nv)), f));
  std::vector<RF> inv{V.a / V.x, V.b / V.y, V.a, V.b};
  CHECK(equals(substitute(V.x + V.a / V.x, inv), V.x + V.a / V.x));
  // images that are themselves fractions, negative exponents
  std::vector<RF> frac{(V.x + V.one) / V.y, V.y, V.a, V.b};
  RF g = V.x.pow(-2) * V.y + V.x;
  RF want = (V.y / (V.x + V.one)).pow(2) * V.y + (V.x + V.one) / V.y;
  CHECK(equals(substitute(g, frac), want));
  CHECK_THROWS_AS(substitute(V.x.inverse(), std::vector<RF>{RF(V.K, V.nv), V.y, V.a, V.b}), AlgebraError);
}

TEST_CASE("T0 built two ways") {
  const CycField& K = CycField::get(8);
  const size_t nv = 2;
  RF x0 = RF::variable(K, nv, 0), x1 = RF::variable(K, nv, 1);
  RF xi = RF::constant(K, nv, K.zeta(2));
  // x0/x1 + xi x1/x0 written as a single fraction
  RF direct = (x0 * x0 + xi * x1 * x1) / (x0 * x1);
  RF sum = x0 / x1 + xi * x1 / x0;
  CHECK(equals(direct, sum));
  CHECK(direct.den() == sum.den());
}

TEST_CASE("prime-field coefficients") {
  PrimeField F = find_prime_with_root(4, 17);
  using MF = RatFunc<ModElem>;
  MF x = MF::variable(F, 2, 0), y = MF::variable(F, 2, 1);
  MF one = MF::from_int(F, 2, 1);
  MF f = (x + y) / (x - y);
  CHECK(equals(f * f.inverse(), one));
  CHECK(equals((x * x - y * y) / (x + y), x - y));
  MF seventeen = MF::from_int(F, 2, 17);
  CHECK(seventeen.is_zero());
}

TEST_CASE("printing") {
  SpacePtr s = make_space({"x", "y"});
  const CycField& K = CycField::get(1);
  RF x = RF::variable(K, 2, 0), y = RF::variable(K, 2, 1);
  CHECK(to_string(x * y.inverse(), *s).find("x") != std::string::npos);
  CHECK(to_string(RF(K, 2), *s) == "0");
}
