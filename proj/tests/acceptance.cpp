// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "noether/replay.hpp"

using namespace noether;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RunOptions defaults() { return RunOptions{}; }

bool has_step(const Report& r, const std::string& id, Status want) {
  for (const auto& s : r.steps)
    if (s.step_id == id) return s.status == want;
  return false;
}

bool refuted(const Report& r) {
  for (const auto& s : r.steps) {
    if (s.oracle_refuted) return true;
    for (const auto& d : s.delegated)
      if (refuted(d)) return true;
  }
  return false;
}

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

Outcome c1() {
  Outcome o;
  auto t0 = Clock::now();
  Report r = run_script(make_params("thm2.3", Family::D, 2, 4), defaults());
  const double t = since(t0);
  o.require(r.passed, "thm2.3 replay failed");
  o.require(has_step(r, "identities", Status::Pass), "identities step");
  o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome c2() {
  Outcome o;
  const CycField& K = CycField::get(1);
  const size_t nv = 4;
  RF x = RF::variable(K, nv, 0), y = RF::variable(K, nv, 1), a = RF::variable(K, nv, 2), b = RF::variable(K, nv, 3);
  auto [u, v] = theorem_2_3_uv(x, y, a, b);
  RF lhs = (x - a / x) / (b * x / y - a * y / x);
  RF rhs = u / (b * u * u - a * v * v);
  o.require(equals(lhs, rhs), "symbolic identity");
  PrimeField F = find_prime_with_root(1, 17);
  o.require(F.q == 17, "q = " + std::to_string(F.q));
  OracleResult s = sample_check(lhs, rhs, F, 100, step_seed("acceptance", "identity1"));
  o.require(s.ok && s.agree == 100 && s.trials == 100,
            "sampling " + std::to_string(s.agree) + "/" + std::to_string(s.trials));
  return o;
}

Outcome c3() {
  Outcome o;
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {5, 3}, {2, 4}, {3, 4}}) {
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(n) + ")";
    auto t0 = Clock::now();
    Report r = run_script(make_params("thm3.1", Family::M, p, n), defaults());
    const double t = since(t0);
    o.require(r.passed, tag + " failed");
    o.require(has_step(r, "v", Status::Pass), tag + " eigenvector");
    o.require(has_step(r, "s.invariants", Status::Pass), tag + " lattice index");
    o.require(t < 60.0, tag + " runtime " + std::to_string(t) + " s");
  }
  return o;
}

Outcome c4() {
  Outcome o;
  for (Family f : {Family::D, Family::Q})
    for (int n : {4, 5}) {
      const std::string tag = family_name(f) + " n=" + std::to_string(n);
      Report r = run_script(make_params("thm3.2", f, 2, n), defaults());
      o.require(r.passed, tag + " failed");
      o.require(has_step(r, "uv.actions", Status::Pass), tag + " sigma(w), sigma(u)");
      o.require(has_step(r, "TXY.involution", Status::Delegated), tag + " final involution");
    }
  return o;
}

Outcome c5() {
  Outcome o;
  Report r = run_script(make_params("thm3.3", Family::SD, 2, 5), defaults());
  o.require(r.passed, "thm3.3 n=5 failed");
  o.require(has_step(r, "z.actions", Status::Pass), "z table");
  return o;
}

Outcome c6() {
  Outcome o;
  auto sits = enumerate_situations();
  o.require(sits.size() == 12, std::to_string(sits.size()) + " situations");
  for (const auto& s : sits)
    for (int n : {4, 5}) {
      const std::string tag = s.script_id + " " + family_name(s.family) + " n=" + std::to_string(n);
      Report r = run_script(make_params(s.script_id, s.family, 2, n, s.a(n)), defaults());
      o.require(r.passed, tag + " failed");
      bool relabel = false, delegated = false;
      for (const auto& st : r.steps) {
        relabel |= st.kind == StepKind::Relabel && st.status == Status::Pass;
        if (st.kind == StepKind::Delegate) {
          delegated = !st.delegated.empty();
          for (const auto& d : st.delegated) o.require(d.passed, tag + " delegation target");
        }
      }
      const std::string sub = s.script_id.substr(s.script_id.find('.') + 1);
      const bool needs_relabel = s.script_id == "case2.1" || s.script_id == "case2.2" || s.script_id == "case3.1";
      if (needs_relabel) o.require(relabel, tag + " relabel");
      if (sub == "3") o.require(delegated, tag + " delegation");
    }
  return o;
}

Outcome c7() {
  Outcome o;
  for (Family f : {Family::D, Family::Q}) {
    Verdict v = check_n_independence("case1.1", f, {4, 5, 6}, defaults());
    o.require(v.ok, family_name(f) + ": " + v.detail);
  }
  return o;
}

Outcome c8() {
  Outcome o;
  for (int m : {3, 4, 5})
    for (long a : {-1L, -1L + (1L << (m - 1))}) {
      Verdict v = verify_lemma_2_4(m, a);
      o.require(v.ok, "m=" + std::to_string(m) + " a=" + std::to_string(a));
    }
  return o;
}

Outcome c9() {
  Outcome o;
  std::vector<GroupSpec> specs;
  for (Family f : {Family::M, Family::D, Family::SD, Family::Q})
    for (int n = 3; n <= 5; ++n) {
      try {
        specs.push_back(GroupSpec::make(f, 2, n));
      } catch (const ParameterError&) {
      }
    }
  specs.push_back(GroupSpec::make(Family::M, 3, 3));
  specs.push_back(GroupSpec::make(Family::M, 3, 4));
  specs.push_back(GroupSpec::make(Family::M, 5, 3));
  for (const auto& g : specs) {
    const std::string tag = g.name();
    o.require(verify_presentation(g).ok, tag + " presentation");
    long brute = 1;
    long involutions = 0;
    for (const auto& e : enumerate_elements(g)) {
      GroupElement x = e;
      long k = 1;
      while (!(x == identity_element())) {
        x = multiply(x, e, g);
        ++k;
      }
      brute = std::max(brute, k);
      involutions += k == 2;
    }
    o.require(brute == group_exponent(g), tag + " exponent");
    const long want_exp = g.family == Family::M ? ipow(g.p, g.n - 1) : ipow(2, g.n - 1);
    o.require(brute == want_exp, tag + " exponent p^(n-1)");
    if (g.family == Family::Q) o.require(involutions == 1, tag + " unique involution");
    else if (g.p == 2) o.require(involutions > 1, tag + " has several involutions");
  }
  return o;
}

Outcome c10() {
  Outcome o;
  auto t0 = Clock::now();
  int runs = 0;
  for (const auto& e : sweep_entries(5)) {
    if (!e.params) continue;
    Report r = run_script(*e.params, defaults());
    ++runs;
    o.require(!refuted(r), e.label + " refuted by sampling");
    o.require(r.passed, e.label + " failed");
  }
  const double t = since(t0);
  o.require(runs > 0, "empty sweep");
  o.require(t < 600.0, "runtime " + std::to_string(t) + " s");
  if (o.ok) o.note = std::to_string(runs) + " scripts, " + std::to_string(t) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 two-variable involution certificate", c1},
      {"2 quotient identity symbolic and over F_17", c2},
      {"3 thm3.1 replays", c3},
      {"4 thm3.2 replays D/Q n=4,5", c4},
      {"5 thm3.3 replay n=5", c5},
      {"6 all twelve subcase situations n=4,5", c6},
      {"7 case1.1 n-independence n=4,5,6", c7},
      {"8 lemma on zeta_4, m=3,4,5", c8},
      {"9 group suite", c9},
      {"10 oracle soundness over the full sweep", c10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("%s  %s%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.note.empty() ? "" : "  -- ", o.note.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
