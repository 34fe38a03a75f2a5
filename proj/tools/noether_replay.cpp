#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "noether/replay.hpp"

using namespace noether;

namespace {

struct Options {
  std::string theorem, kase, family, format = "text";
  int p = 2;
  int n = 0;
  int max_n = 5;
  int samples = kDefaultTrials;
  uint64_t min_q = kDefaultMinQ;
  bool fresh = false, no_oracle = false, verbose = false;
};

RunOptions run_options(const Options& o) {
  RunOptions r;
  r.oracle.enabled = !o.no_oracle;
  r.oracle.trials = o.samples;
  r.oracle.min_q = o.min_q;
  r.oracle.fresh_seed = o.fresh;
  return r;
}

int usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int cmd_verify(const Options& o) {
  if (o.theorem.empty() == o.kase.empty()) return usage("give exactly one of --theorem or --case");
  if (o.format != "text" && o.format != "json") return usage("--format must be text or json");
  std::string id = o.theorem.empty() ? "case" + o.kase : "thm" + o.theorem;
  Family fam;
  if (!o.family.empty()) {
    fam = parse_family(o.family);
  } else if (id == "thm3.1" || id.rfind("case2", 0) == 0) {
    fam = Family::M;
  } else if (id == "thm3.3" || id.rfind("case3", 0) == 0) {
    fam = Family::SD;
  } else {
    fam = Family::D;
  }
  const int n = o.n ? o.n : (id == "thm3.1" ? 3 : 4);
  ScriptParams params = make_params(id, fam, o.p, n);
  Report r = run_script(params, run_options(o));
  std::cout << (o.format == "json" ? format_json({r}) : format_text(r, o.verbose));
  return r.passed ? 0 : 1;
}

int cmd_group(const Options& o) {
  if (o.family.empty()) return usage("--family is required");
  GroupSpec g = GroupSpec::make(parse_family(o.family), o.p, o.n ? o.n : 4);
  Verdict rel = verify_presentation(g);
  const auto hist = order_histogram(g);
  std::cout << g.name() << "\n  order " << g.order() << "\n  exponent " << group_exponent(g) << "\n  relations "
            << (rel ? "pass" : "FAIL") << ": " << rel.detail << "\n  elements by order:";
  for (const auto& [ord, cnt] : hist) std::cout << " " << ord << ":" << cnt;
  std::cout << "\n";
  auto inv = hist.find(2);
  if (inv != hist.end() && inv->second == 1)
    for (const auto& e : enumerate_elements(g))
      if (element_order(e, g) == 2) std::cout << "  unique involution " << element_name(e) << "\n";
  return rel ? 0 : 1;
}

struct Job {
  std::string label;
  std::optional<ScriptParams> params;
  std::string skip;
  std::optional<GroupSpec> group;
};

int cmd_all(const Options& o) {
  if (o.format != "text" && o.format != "json") return usage("--format must be text or json");
  if (o.max_n < 3 || o.max_n > 8) return usage("--max-n must lie in [3, 8]");
  std::vector<Job> jobs;
  // group presentations within the range
  for (Family f : {Family::D, Family::M, Family::Q, Family::SD})
    for (int n = 3; n <= o.max_n; ++n) {
      Job j;
      j.label = "group " + family_name(f) + " p=2 n=" + std::to_string(n);
      try {
        j.group = GroupSpec::make(f, 2, n);
      } catch (const ParameterError& e) {
        j.skip = e.what();
      }
      jobs.push_back(std::move(j));
    }
  for (int p : {3, 5})
    for (int n = 3; n <= std::min(o.max_n, p == 3 ? 4 : 3); ++n) {
      Job j;
      j.label = "group M p=" + std::to_string(p) + " n=" + std::to_string(n);
      j.group = GroupSpec::make(Family::M, p, n);
      jobs.push_back(std::move(j));
    }
  for (auto& e : sweep_entries(o.max_n)) jobs.push_back(Job{e.label, e.params, e.skip, std::nullopt});
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.label < b.label; });

  const RunOptions ropts = run_options(o);
  std::vector<std::optional<Report>> reports(jobs.size());
  std::vector<std::string> group_lines(jobs.size());
  std::vector<bool> ok(jobs.size(), true);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* w = std::getenv("NOETHER_WORKERS")) workers = std::max(1, std::atoi(w));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < jobs.size();) {
      const Job& j = jobs[i];
      if (j.group) {
        Verdict v = verify_presentation(*j.group);
        const auto h = order_histogram(*j.group);
        auto inv = h.find(2);
        group_lines[i] = v.detail + ", exponent " + std::to_string(group_exponent(*j.group)) +
                         (inv != h.end() && inv->second == 1 ? ", unique involution" : "");
        ok[i] = v.ok;
      } else if (j.params) {
        reports[i] = run_script(*j.params, ropts);
        ok[i] = reports[i]->passed;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  bool all_ok = true;
  std::vector<Report> ran;
  for (size_t i = 0; i < jobs.size(); ++i) {
    all_ok = all_ok && ok[i];
    if (reports[i]) ran.push_back(*reports[i]);
  }
  if (o.format == "json") {
    std::cout << format_json(ran);
  } else {
    for (size_t i = 0; i < jobs.size(); ++i) {
      const Job& j = jobs[i];
      if (!j.skip.empty()) {
        std::cout << "SKIP  " << j.label << "  (" << j.skip << ")\n";
      } else if (j.group) {
        std::cout << (ok[i] ? "PASS  " : "FAIL  ") << j.label << "  " << group_lines[i] << "\n";
      } else {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2fs", reports[i]->seconds);
        std::cout << (ok[i] ? "PASS  " : "FAIL  ") << j.label << "  (" << secs << ")\n";
        if (!ok[i] || o.verbose) std::cout << format_text(*reports[i], o.verbose);
      }
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* q = std::getenv("NOETHER_ORACLE_MIN_Q")) o.min_q = std::strtoull(q, nullptr, 10);

  CLI::App app{"Replays the rationality proofs for p-groups with a cyclic subgroup of index p"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--oracle-samples", o.samples, "oracle trials per claim")->check(CLI::NonNegativeNumber);
    c->add_option("--oracle-min-q", o.min_q, "smallest oracle prime to try");
    c->add_flag("--fresh-seed", o.fresh, "seed the oracle from entropy");
    c->add_flag("--no-oracle", o.no_oracle, "symbolic checks only");
    c->add_option("--format", o.format, "text or json");
    c->add_flag("-v,--verbose", o.verbose, "print step details");
  };
  CLI::App* verify = app.add_subcommand("verify", "replay one theorem or subcase");
  verify->add_option("--theorem", o.theorem, "2.3, 3.1, 3.2 or 3.3");
  verify->add_option("--case", o.kase, "subcase such as 1.1");
  verify->add_option("--family", o.family, "M, D, SD or Q");
  verify->add_option("--p", o.p, "prime p");
  verify->add_option("--n", o.n, "|G| = p^n");
  common(verify);
  CLI::App* group = app.add_subcommand("group", "inspect a group");
  group->add_option("--family", o.family, "M, D, SD or Q");
  group->add_option("--p", o.p, "prime p");
  group->add_option("--n", o.n, "|G| = p^n");
  CLI::App* all = app.add_subcommand("all", "run every script over a range of n");
  all->add_option("--max-n", o.max_n, "largest n");
  common(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*verify) return cmd_verify(o);
    if (*group) return cmd_group(o);
    return cmd_all(o);
  } catch (const ParameterError& e) {
    return usage(e.what());
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  }
}
