#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/actions.hpp"

using namespace noether;

TEST_CASE("regular representation") {
  GroupSpec d = GroupSpec::make(Family::D, 2, 4);
  const CycField& K = CycField::get(4);
  auto [space, act] = regular_representation(d, K);
  CHECK(static_cast<long>(space->size()) == d.order());
  CHECK(check_relations(act).ok);
  std::vector<RF> xs;
  for (size_t i = 0; i < space->size(); ++i) xs.push_back(RF::variable(K, space->size(), static_cast<uint32_t>(i)));
  CHECK(check_faithful(act, xs, space.get()).ok);
  // g . x(h) = x(gh)
  for (long g = 0; g < d.order(); ++g) {
    FieldAutomorphism phi = act.element(element_at(g, d));
    for (long h = 0; h < d.order(); ++h) {
      RF img = phi.apply(xs[h]);
      CHECK(equals(img, xs[element_index(multiply(element_at(g, d), element_at(h, d), d), d)]));
    }
  }
}

TEST_CASE("Galois generator on the regular representation") {
  GroupSpec q = GroupSpec::make(Family::Q, 2, 5);
  const CycField& K = CycField::get(16);
  auto [space, act] = regular_representation(q, K, 3);  // a = 3, a^2 = 9 != 1 mod 16
  CHECK(act.lambda.has_value());
  Verdict rel = check_relations(act);
  CHECK_FALSE(rel.ok);
  auto [s2, act2] = regular_representation(q, K, 7);
  CHECK(check_relations(act2).ok);
}

TEST_CASE("eigenvectors") {
  GroupSpec m = GroupSpec::make(Family::M, 3, 4);
  const CycField& K = CycField::get(9);
  auto [space, act] = regular_representation(m, K);
  RF v = modular_eigenvector(m, K);
  RF xi = RF::constant(K, space->size(), K.zeta(1));
  CHECK(equals(act.sigma.pow(3).apply(v), xi * v));
  CHECK(equals(act.tau.apply(v), v));

  GroupSpec d = GroupSpec::make(Family::D, 2, 5);
  const CycField& K8 = CycField::get(8);
  auto [ds, da] = regular_representation(d, K8);
  RF w = dihedral_eigenvector(d, K8);
  CHECK(equals(da.sigma.pow(2).apply(w), RF::constant(K8, ds->size(), K8.zeta(1)) * w));

  const CycField& K16 = CycField::get(16);
  auto [gs, ga] = regular_representation(d, K16, 7);
  RF g = galois_eigenvector(d, K16, 7);
  CHECK(equals(ga.sigma.apply(g), RF::constant(K16, gs->size(), K16.zeta(7)) * g));
  CHECK(equals(ga.lambda->apply(g), g) == false);
}

TEST_CASE("automorphism composition") {
  const CycField& K = CycField::get(8);
  RF x = RF::variable(K, 2, 0), y = RF::variable(K, 2, 1);
  RF z = RF::constant(K, 2, K.zeta(1));
  FieldAutomorphism f({z * y, x}, GaloisMap(8, 3));
  FieldAutomorphism g({y, x.inverse()}, GaloisMap(8, 5));
  RF e = x + z * y * y;
  CHECK(equals(f.compose(g).apply(e), f.apply(g.apply(e))));
  CHECK(f.pow(0).is_identity());
  CHECK(f.pow(2) == f.compose(f));
  CHECK_THROWS(f.pow(-1));
}

TEST_CASE("claimed actions") {
  const CycField& K = CycField::get(1);
  RF x = RF::variable(K, 2, 0), y = RF::variable(K, 2, 1);
  FieldAutomorphism inv({x.inverse(), y}, GaloisMap(1, 1));
  CHECK(check_claimed_action(inv, x + y, x.inverse() + y).ok);
  CHECK_FALSE(check_claimed_action(inv, x + y, x + y).ok);
}

TEST_CASE("affine forms") {
  PrimeField F = find_prime_with_root(1);
  const CycField& K = CycField::get(1);
  RF x = RF::variable(K, 3, 0), y = RF::variable(K, 3, 1), t = RF::variable(K, 3, 2);
  FieldAutomorphism phi({t * x + y, RF::from_int(K, 3, 2) * y + x, t + RF::from_int(K, 3, 1)}, GaloisMap(1, 1));
  AffineForm a = check_affine_form(phi, {0, 1}, F);
  CHECK(a.verdict.ok);
  FieldAutomorphism sq({x * x, y, t}, GaloisMap(1, 1));
  CHECK_FALSE(check_affine_form(sq, {0}, F).verdict.ok);
  // singular linear part
  FieldAutomorphism sing({x + y, x + y, t}, GaloisMap(1, 1));
  CHECK_FALSE(check_affine_form(sing, {0, 1}, F).verdict.ok);
}

TEST_CASE("involution theorem hypotheses") {
  const CycField& K = CycField::get(1);
  const size_t nv = 4;
  RF x = RF::variable(K, nv, 0), y = RF::variable(K, nv, 1), a = RF::variable(K, nv, 2), b = RF::variable(K, nv, 3);
  FieldAutomorphism inv({a / x, b / y, a, b}, GaloisMap(1, 1));
  CHECK(verify_theorem_2_3(a, b, inv, 0, 1).ok);
  RF one = RF::from_int(K, nv, 1);
  FieldAutomorphism unit({one / x, one / y, a, b}, GaloisMap(1, 1));
  CHECK(verify_theorem_2_3(one, one, unit, 0, 1).ok);
  // the involution must actually be x -> a/x, y -> b/y
  FieldAutomorphism wrong({a / x, y, a, b}, GaloisMap(1, 1));
  CHECK_FALSE(verify_theorem_2_3(a, b, wrong, 0, 1).ok);
  CHECK_FALSE(verify_theorem_2_3(RF(K, nv), b, inv, 0, 1).ok);
}
