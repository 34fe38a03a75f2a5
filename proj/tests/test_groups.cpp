#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/groups.hpp"

using namespace noether;

namespace {

std::vector<GroupSpec> small_groups() {
  std::vector<GroupSpec> out;
  for (int n = 3; n <= 5; ++n)
    for (Family f : {Family::M, Family::D, Family::SD, Family::Q}) {
      try {
        out.push_back(GroupSpec::make(f, 2, n));
      } catch (const ParameterError&) {
      }
    }
  out.push_back(GroupSpec::make(Family::M, 3, 3));
  out.push_back(GroupSpec::make(Family::M, 3, 4));
  out.push_back(GroupSpec::make(Family::M, 5, 3));
  return out;
}

long brute_order(const GroupElement& g, const GroupSpec& s) {
  GroupElement x = g;
  long k = 1;
  while (!(x == identity_element())) {
    x = multiply(x, g, s);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("family bounds") {
  CHECK_THROWS_AS(GroupSpec::make(Family::SD, 2, 3), ParameterError);
  CHECK_THROWS_AS(GroupSpec::make(Family::D, 2, 3), ParameterError);
  CHECK_THROWS_AS(GroupSpec::make(Family::Q, 3, 4), ParameterError);
  CHECK_THROWS_AS(GroupSpec::make(Family::M, 4, 3), ParameterError);
  CHECK_NOTHROW(GroupSpec::make(Family::Q, 2, 3));
  CHECK(GroupSpec::make(Family::M, 2, 3).order() == 8);
}

TEST_CASE("twist exponents") {
  CHECK(GroupSpec::make(Family::M, 3, 3).twist() == 4);
  CHECK(GroupSpec::make(Family::D, 2, 4).twist() == 7);
  CHECK(GroupSpec::make(Family::Q, 2, 4).twist() == 7);
  CHECK(GroupSpec::make(Family::SD, 2, 5).twist() == 7);
}

TEST_CASE("multiplication examples") {
  GroupSpec d = GroupSpec::make(Family::D, 2, 4);
  GroupElement s = sigma_element(), t = tau_element();
  CHECK(multiply(multiply(inverse(t, d), s, d), t, d) == GroupElement{7, 0});
  GroupSpec q = GroupSpec::make(Family::Q, 2, 4);
  CHECK(multiply(t, t, q) == GroupElement{4, 0});
  for (const auto& g : small_groups())
    for (const auto& e : enumerate_elements(g)) {
      CHECK(multiply(identity_element(), e, g) == e);
      CHECK(multiply(e, inverse(e, g), g) == identity_element());
    }
}

TEST_CASE("element orders") {
  CHECK(element_order(identity_element(), GroupSpec::make(Family::Q, 2, 4)) == 1);
  CHECK(element_order(tau_element(), GroupSpec::make(Family::Q, 2, 4)) == 4);
  CHECK(element_order(sigma_element(), GroupSpec::make(Family::M, 3, 3)) == 9);
}

TEST_CASE("exponent matches brute force") {
  CHECK(group_exponent(GroupSpec::make(Family::M, 2, 3)) == 4);
  CHECK(group_exponent(GroupSpec::make(Family::D, 2, 4)) == 8);
  CHECK(group_exponent(GroupSpec::make(Family::Q, 2, 4)) == 8);
  for (const auto& g : small_groups()) {
    long best = 1;
    for (const auto& e : enumerate_elements(g)) {
      const long o = brute_order(e, g);
      CHECK(o == element_order(e, g));
      best = std::max(best, o);
    }
    CHECK(best == group_exponent(g));
  }
}

TEST_CASE("presentations and involutions") {
  for (const auto& g : small_groups()) {
    CHECK(verify_presentation(g).ok);
    CHECK(static_cast<long>(enumerate_elements(g).size()) == g.order());
    auto h = order_histogram(g);
    long total = 0;
    for (const auto& [o, c] : h) total += c;
    CHECK(total == g.order());
    if (g.family == Family::Q) CHECK(h[2] == 1);
    else if (g.p == 2) CHECK(h[2] > 1);
  }
}

TEST_CASE("element indices round trip") {
  GroupSpec g = GroupSpec::make(Family::SD, 2, 5);
  for (long i = 0; i < g.order(); ++i) CHECK(element_index(element_at(i, g), g) == i);
}
