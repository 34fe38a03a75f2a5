#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "noether/replay.hpp"

using namespace noether;

namespace {

RunOptions quick(int trials = 20) {
  RunOptions o;
  o.oracle.trials = trials;
  return o;
}

const StepReport* find_step(const Report& r, const std::string& id) {
  for (const auto& s : r.steps)
    if (s.step_id == id) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("script ids and parameters") {
  auto ids = script_ids();
  CHECK(std::find(ids.begin(), ids.end(), "thm3.1") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "case3.2") != ids.end());
  CHECK(make_params("thm2.3-identities", Family::D, 2, 4).id == "thm2.3");
  CHECK_THROWS_AS(make_params("thm3.2", Family::SD, 2, 4), ParameterError);
  CHECK_THROWS_AS(make_params("thm3.1", Family::D, 2, 4), ParameterError);
  CHECK_THROWS_AS(make_params("case1.1", Family::D, 2, 3), ParameterError);
  CHECK_THROWS_AS(make_params("case1.1", Family::D, 2, 4, 3), ParameterError);
  CHECK_THROWS_AS(make_params("thm9.9", Family::D, 2, 4), ParameterError);
  CHECK_THROWS_AS(make_params("thm3.1", Family::M, 3, 6), ParameterError);
  CHECK(*make_params("case1.1", Family::Q, 2, 5).a == 15);
  CHECK(make_params("case1.1", Family::Q, 2, 5, -1).a == 15);
  CHECK(script_field_order(make_params("thm3.1", Family::M, 3, 4)) == 9);
  CHECK(script_field_order(make_params("case2.1", Family::M, 2, 5)) == 16);
}

TEST_CASE("situations") {
  auto s = enumerate_situations();
  CHECK(s.size() == 12);
  int delegating = 0;
  for (const auto& x : s) {
    CHECK(x.epsilon * x.epsilon == 1);
    const long a = x.a(5);
    CHECK(mod_floor(a * a, 16) == 1);
    CHECK(a != 1);
    delegating += x.script_id.back() == '3';
  }
  CHECK(delegating == 4);  // subcase 3 for D, Q, M, SD
}

TEST_CASE("small replays pass") {
  for (const auto& p : {make_params("thm2.3", Family::D, 2, 4), make_params("thm3.1", Family::M, 2, 3),
                        make_params("thm3.1", Family::M, 3, 3), make_params("thm3.2", Family::Q, 2, 4),
                        make_params("case1.1", Family::D, 2, 4), make_params("case2.1", Family::M, 2, 4)}) {
    Report r = run_script(p, quick());
    INFO(format_text(r, true));
    CHECK(r.passed);
    for (const auto& s : r.steps) CHECK_FALSE(s.oracle_refuted);
  }
}

TEST_CASE("the corrected T_p image is reported") {
  Report r = run_script(make_params("thm3.1", Family::M, 3, 3), quick());
  CHECK(r.passed);
  bool seen = false;
  for (const auto& s : r.steps)
    if (s.detail.find("T0") != std::string::npos && s.detail.find("T1") != std::string::npos) seen = true;
  CHECK(seen);
}

TEST_CASE("statuses") {
  Report r = run_script(make_params("case1.3", Family::D, 2, 4), quick());
  CHECK(r.passed);
  bool delegated = false;
  for (const auto& s : r.steps)
    if (s.status == Status::Delegated && !s.delegated.empty()) {
      delegated = true;
      for (const auto& d : s.delegated) CHECK(d.passed);
    }
  CHECK(delegated);
  CHECK(status_name(Status::HypothesisOnly) != status_name(Status::Pass));
}

TEST_CASE("disabled oracle reports zero trials") {
  RunOptions o;
  o.oracle.enabled = false;
  Report r = run_script(make_params("thm3.1", Family::M, 2, 3), o);
  CHECK(r.passed);
  for (const auto& s : r.steps) CHECK(s.oracle_trials == 0);
}

TEST_CASE("n-independence of the case1.1 tables") {
  CHECK(check_n_independence("case1.1", Family::D, {4, 5}, quick(5)).ok);
  CHECK(check_n_independence("case1.1", Family::Q, {4, 5}, quick(5)).ok);
  Report r = run_script(make_params("case1.1", Family::D, 2, 4), quick(5));
  CHECK(r.tables.count("z") == 1);
  CHECK(find_step(r, "z.actions") != nullptr);
}

TEST_CASE("json output is deterministic") {
  auto p = make_params("thm3.1", Family::M, 2, 3);
  std::string a = format_json({run_script(p, quick())});
  std::string b = format_json({run_script(p, quick())});
  CHECK(a == b);
  CHECK(a.find("\"oracle_trials\"") != std::string::npos);
  CHECK(a.find("\"script\"") != std::string::npos);
}

TEST_CASE("sweep entries") {
  auto e = sweep_entries(4);
  CHECK_FALSE(e.empty());
  CHECK(std::is_sorted(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.label < y.label; }));
  for (const auto& x : e) CHECK((x.params.has_value() || !x.skip.empty()));
}
