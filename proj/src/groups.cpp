#include "noether/groups.hpp"

#include <random>
#include <set>

namespace noether {

std::string family_name(Family f) {
  switch (f) {
    case Family::M: return "M";
    case Family::D: return "D";
    case Family::SD: return "SD";
    case Family::Q: return "Q";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "M") return Family::M;
  if (s == "D") return Family::D;
  if (s == "SD") return Family::SD;
  if (s == "Q") return Family::Q;
  throw ParameterError("unknown group family '" + s + "' (expected M, D, SD or Q)");
}

GroupSpec GroupSpec::make(Family family, int p, int n) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (n > 10) throw ParameterError("n = " + std::to_string(n) + " exceeds the supported cap n <= 10");
  switch (family) {
    case Family::M:
      if (n < 3) throw ParameterError("M(p^n) requires n >= 3");
      break;
    case Family::D:
    case Family::SD:
      if (p != 2) throw ParameterError(family_name(family) + " requires p = 2");
      if (n < 4) throw ParameterError(family_name(family) + "(2^{n-1}) requires n >= 4");
      break;
    case Family::Q:
      if (p != 2) throw ParameterError("Q requires p = 2");
      if (n < 3) throw ParameterError("Q(2^n) requires n >= 3");
      break;
  }
  if (ipow(p, n) > (1L << 40)) throw ParameterError("group order too large");
  return GroupSpec{family, p, n};
}

long GroupSpec::order() const { return ipow(p, n); }
long GroupSpec::sigma_order() const { return ipow(p, n - 1); }

long GroupSpec::twist() const {
  const long m = sigma_order();
  switch (family) {
    case Family::M: return mod_floor(1 + ipow(p, n - 2), m);
    case Family::D:
    case Family::Q: return m - 1;
    case Family::SD: return mod_floor(-1 + ipow(2, n - 2), m);
  }
  return 1;
}

long GroupSpec::twist_inverse() const { return mod_inverse(twist(), sigma_order()); }

std::string GroupSpec::name() const {
  switch (family) {
    case Family::M: return "M(" + std::to_string(order()) + ")";
    case Family::D: return "D(" + std::to_string(order() / 2) + ")";
    case Family::SD: return "SD(" + std::to_string(order() / 2) + ")";
    case Family::Q: return "Q(" + std::to_string(order()) + ")";
  }
  return "?";
}

GroupElement identity_element() { return {0, 0}; }
GroupElement sigma_element() { return {1, 0}; }
GroupElement tau_element() { return {0, 1}; }

namespace {

// k^{-j} modulo p^{n-1}: tau^j sigma^c = sigma^{c * kinv^j} tau^j
long conj_factor(int j, const GroupSpec& spec) {
  const long m = spec.sigma_order();
  long f = 1;
  const long kinv = spec.twist_inverse();
  for (int t = 0; t < j; ++t) f = (f * kinv) % m;
  return f;
}

}  // namespace

GroupElement multiply(const GroupElement& g, const GroupElement& h, const GroupSpec& spec) {
  const long m = spec.sigma_order();
  long i = mod_floor(g.i + (h.i % m) * conj_factor(g.j, spec), m);
  int j = g.j + h.j;
  const int span = spec.tau_span();
  if (j >= span) {
    j -= span;
    // tau^p = 1, except tau^2 = sigma^{2^{n-2}} for Q
    if (spec.family == Family::Q) i = mod_floor(i + ipow(2, spec.n - 2), m);
  }
  return {i, j};
}

GroupElement power(const GroupElement& g, long e, const GroupSpec& spec) {
  if (e < 0) return power(inverse(g, spec), -e, spec);
  GroupElement acc = identity_element(), base = g;
  while (e > 0) {
    if (e & 1) acc = multiply(acc, base, spec);
    e >>= 1;
    if (e) base = multiply(base, base, spec);
  }
  return acc;
}

GroupElement inverse(const GroupElement& g, const GroupSpec& spec) {
  // g^{-1} = g^{ord(g)-1}; orders are p-powers bounded by the group order
  GroupElement cur = g, prev = identity_element();
  while (!(cur == identity_element())) {
    prev = cur;
    cur = multiply(cur, g, spec);
  }
  return prev;
}

long element_order(const GroupElement& g, const GroupSpec& spec) {
  long d = 1;
  GroupElement cur = g;
  while (!(cur == identity_element())) {
    cur = multiply(cur, g, spec);
    ++d;
    if (d > spec.order()) throw AlgebraError("element_order: no finite order found");
  }
  return d;
}

long element_index(const GroupElement& g, const GroupSpec& spec) {
  return static_cast<long>(g.j) * spec.sigma_order() + g.i;
}

GroupElement element_at(long index, const GroupSpec& spec) {
  const long m = spec.sigma_order();
  return {index % m, static_cast<int>(index / m)};
}

std::string element_name(const GroupElement& g) {
  if (g.i == 0 && g.j == 0) return "1";
  std::string s;
  if (g.i == 1) s += "s";
  else if (g.i > 1) s += "s^" + std::to_string(g.i);
  if (g.j == 1) s += "t";
  else if (g.j > 1) s += "t^" + std::to_string(g.j);
  return s;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, long cap) {
  if (spec.order() > cap)
    throw ParameterError("group order " + std::to_string(spec.order()) + " exceeds enumeration cap " +
                         std::to_string(cap));
  std::vector<GroupElement> out;
  out.reserve(spec.order());
  for (long idx = 0; idx < spec.order(); ++idx) out.push_back(element_at(idx, spec));
  return out;
}

long group_exponent(const GroupSpec& spec, long cap) {
  long best = 1;
  for (const auto& g : enumerate_elements(spec, cap)) best = std::max(best, element_order(g, spec));
  return best;
}

std::map<long, long> order_histogram(const GroupSpec& spec, long cap) {
  std::map<long, long> h;
  for (const auto& g : enumerate_elements(spec, cap)) ++h[element_order(g, spec)];
  return h;
}

Verdict verify_presentation(const GroupSpec& spec) {
  const auto elems = enumerate_elements(spec);
  const GroupElement e = identity_element(), s = sigma_element(), t = tau_element();
  const long m = spec.sigma_order();

  if (!(power(s, m, spec) == e)) return Verdict::fail("sigma^{p^{n-1}} != 1");
  if (element_order(s, spec) != m) return Verdict::fail("sigma does not have order p^{n-1}");
  if (spec.family == Family::Q) {
    if (!(power(t, 2, spec) == power(s, ipow(2, spec.n - 2), spec)))
      return Verdict::fail("tau^2 != sigma^{2^{n-2}}");
    if (!(power(t, 4, spec) == e)) return Verdict::fail("tau^4 != 1");
  } else if (!(power(t, spec.p, spec) == e)) {
    return Verdict::fail("tau^p != 1");
  }
  const GroupElement conj = multiply(multiply(inverse(t, spec), s, spec), t, spec);
  if (!(conj == power(s, spec.twist(), spec)))
    return Verdict::fail("tau^-1 sigma tau = " + element_name(conj) + " != sigma^k");

  std::set<GroupElement> seen(elems.begin(), elems.end());
  if (static_cast<long>(seen.size()) != spec.order()) return Verdict::fail("normal forms are not distinct");
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (!seen.count(multiply(a, b, spec))) return Verdict::fail("multiplication table not closed");

  auto assoc = [&](const GroupElement& a, const GroupElement& b, const GroupElement& c) {
    return multiply(multiply(a, b, spec), c, spec) == multiply(a, multiply(b, c, spec), spec);
  };
  if (spec.order() <= 256) {
    for (const auto& a : elems)
      for (const auto& b : elems)
        for (const auto& c : elems)
          if (!assoc(a, b, c))
            return Verdict::fail("associativity fails at (" + element_name(a) + ", " + element_name(b) + ", " +
                                 element_name(c) + ")");
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 200000; ++trial) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      const auto& c = elems[rng() % elems.size()];
      if (!assoc(a, b, c)) return Verdict::fail("associativity fails on a sampled triple");
    }
  }
  for (const auto& a : elems)
    if (!(multiply(a, inverse(a, spec), spec) == e)) return Verdict::fail("g * g^-1 != 1");

  // <sigma> has index p
  std::set<GroupElement> cyc;
  for (long i = 0; i < m; ++i) cyc.insert(power(s, i, spec));
  if (static_cast<long>(cyc.size()) * spec.p != spec.order()) return Verdict::fail("<sigma> does not have index p");

  bool abelian = true;
  for (const auto& a : elems) {
    for (const auto& b : elems)
      if (!(multiply(a, b, spec) == multiply(b, a, spec))) {
        abelian = false;
        break;
      }
    if (!abelian) break;
  }
  if (abelian) return Verdict::fail("group is abelian");

  return Verdict::pass(spec.name() + ": order " + std::to_string(spec.order()) + ", relations hold");
}

}  // namespace noether
