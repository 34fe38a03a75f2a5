#ifndef NOETHER_REPLAY_HPP
#define NOETHER_REPLAY_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "noether/actions.hpp"
#include "noether/groups.hpp"
#include "noether/oracle.hpp"

namespace noether {

enum class StepKind {
  DefineVars,
  ClaimAction,
  MonomialFieldEquality,
  ExplicitInverseFieldEquality,
  FixednessClaim,
  TheoremReduction,
  Relabel,
  Delegate
};
enum class Status { Pass, Fail, Delegated, HypothesisOnly };

std::string kind_name(StepKind k);
std::string status_name(Status s);

struct Report;

struct StepReport {
  std::string step_id;
  StepKind kind = StepKind::DefineVars;
  Status status = Status::Pass;
  std::string detail;
  int oracle_agree = 0;
  int oracle_trials = 0;
  bool oracle_refuted = false;
  std::vector<Report> delegated;  // reports of delegation targets
};

/// Parameters of one replay: script id, group, Galois exponent (subcases only).
struct ScriptParams {
  std::string id;
  GroupSpec spec;
  std::optional<long> a;
  int p() const { return spec.p; }
  int n() const { return spec.n; }
  std::string describe() const;
};

struct RunOptions {
  OracleConfig oracle;
};

struct Report {
  ScriptParams params;
  std::vector<StepReport> steps;
  bool passed = true;
  double seconds = 0;
  /// Claimed action tables per stage label: word -> "var -> image" lines.
  std::map<std::string, std::map<std::string, std::vector<std::string>>> tables;
};

/// One variable space in a change-of-variables chain; defs are expressed
/// in the previous stage's variables.
struct Stage {
  std::string label;
  SpacePtr space;
  std::vector<RF> defs;
  std::map<std::string, FieldAutomorphism> actions;
  std::map<std::string, std::string> alias;  // renamed word -> word over the base stage
};

struct Claim {
  std::string word;           // automorphism word, e.g. "tau*lambda", "sigma^2", "1"
  std::string subject_label;  // printed form of the subject
  RF subject;                 // in the current stage
  RF printed;                 // claimed image, as printed
  std::optional<RF> corrected;
  bool printed_in_prev = false;  // printed image is written in the previous stage
  std::string note;
};

class Context;
using StepFn = std::function<StepReport(Context&)>;

struct Step {
  std::string id;
  StepKind kind;
  StepFn run;
};

struct ProofScript {
  ScriptParams params;
  std::vector<Step> steps;
};

/// Mutable replay state shared by the steps of one script.
class Context {
 public:
  Context(ScriptParams params, const CycField& field, RunOptions options);

  const ScriptParams& params() const { return params_; }
  const CycField& field() const { return *field_; }
  const GroupSpec& spec() const { return params_.spec; }
  const RunOptions& options() const { return opts_; }
  const PrimeField& oracle_field() const;

  // stages
  Stage& stage(size_t k) { return stages_.at(k); }
  Stage& current() { return stages_.back(); }
  size_t depth() const { return stages_.size(); }
  size_t stage_index(const std::string& label) const;
  void push_stage(const std::string& label, std::vector<std::string> names, std::vector<RF> defs);
  void set_base(const std::string& label, SpacePtr space, const GroupAction& action);
  const std::optional<GroupAction>& base_action() const { return base_; }

  // expression helpers over the current stage (or stage k)
  RF var(const std::string& name) const;
  RF var_at(size_t k, const std::string& name) const;
  RF constant(const CycElem& c) const;
  RF constant_at(size_t k, const CycElem& c) const;
  RF integer(long v) const { return constant(field_->from_int(v)); }
  RF rational(long num, long den) const { return constant(field_->from_rational(Rational(num, den))); }
  /// zeta_{field order}^k.
  RF zeta(long k) const { return constant(field_->zeta(k)); }
  /// Monomial c * prod name^exp over the current stage.
  RF mono(std::initializer_list<std::pair<const char*, long long>> factors, const CycElem* c = nullptr) const;
  std::string show(const RF& f, size_t k) const;
  std::string show(const RF& f) const { return show(f, depth() - 1); }

  /// Automorphism named by a word over stage k's installed actions.
  FieldAutomorphism word(size_t k, const std::string& w) const;
  bool has_word(size_t k, const std::string& w) const;
  /// The word over stage 0 that stage k's word w stands for.
  std::string base_word(size_t k, const std::string& w) const;
  RF pull_back(const RF& f, size_t from, size_t to) const;

  std::map<std::string, RF> named;  // named auxiliary expressions (v, T0, ...)

  // oracle
  uint64_t seed(const std::string& step_id) const;
  /// Values of stage-k variables at a base point; galois applied to every coefficient.
  std::optional<std::vector<uint64_t>> stage_values(size_t k, const std::vector<uint64_t>& base_point,
                                                    long galois = 1);
  /// Base-level value of word(subject) at P, computed by evaluation only.
  OracleResult oracle_claim(const std::string& step_id, const Claim& c, size_t k, const RF& image);
  OracleResult oracle_identity(const std::string& step_id, const RF& lhs, size_t k_lhs, const RF& rhs, size_t k_rhs);

  Report* report = nullptr;

 private:
  ScriptParams params_;
  const CycField* field_;
  RunOptions opts_;
  std::vector<Stage> stages_;
  std::optional<GroupAction> base_;
  mutable std::optional<PrimeField> pf_;
  std::map<std::pair<size_t, long>, std::vector<std::shared_ptr<CompiledRatFunc>>> compiled_;
};

// ---- step constructors (the vocabulary of the scripts)

using DefsFn = std::function<std::vector<RF>(Context&)>;
using ClaimsFn = std::function<std::vector<Claim>(Context&)>;

Step define_vars(std::string id, std::string label, std::vector<std::string> names, DefsFn defs);
/// Verifies claims against the previous stage (or the stage's own action at
/// stage 0); with install = true the claimed tables become the stage action.
Step claim_action(std::string id, ClaimsFn claims, bool install = true);
/// Group relations of the installed sigma/tau (and lambda) at the current stage.
Step claim_relations(std::string id);
Step monomial_field_equality(std::string id);
struct InverseSpec {
  std::vector<RF> back;       // each previous-stage variable, written in current variables
  std::vector<RF> relations;  // current-stage expressions that must vanish
  size_t anchor_back = 1;     // compare in the stage this many levels below the current one
  bool check_forward = true;
};
Step explicit_inverse(std::string id, std::function<InverseSpec(Context&)> spec);
/// The current stage generates the fixed field of the diagonal action of
/// `word` on the previous stage (lattice certificate).
Step fixed_field_lattice(std::string id, std::string word);
/// Lattice of monomials fixed by the diagonal action of `word` on the current
/// stage; passes when its index equals `expected_index`.
Step invariant_lattice_certificate(std::string id, std::string word, std::function<long(Context&)> expected_index);
/// Every listed expression is fixed by `word`.
Step fixed_elements(std::string id, std::string word,
                    std::function<std::vector<std::pair<std::string, RF>>(Context&)> exprs);
/// Linear reduction from the regular representation to the current stage.
Step reduce_linear(std::string id);
/// Affine elimination of one variable; pushes a stage without it.
Step reduce_affine(std::string id, std::string var, std::string label);
/// Two-variable involution theorem for `word` on (x, y) with given a, b.
Step reduce_involution(std::string id, std::string word, std::string x, std::string y,
                       std::function<std::pair<RF, RF>(Context&)> ab);
Step lemma_2_4_check(std::string id, std::string word);
Step hypothesis_only(std::string id, std::string detail);
/// Relabeling x_i -> X_i = x_{perm[i]} onto a target table.
struct RelabelSpec {
  std::vector<int> perm;
  std::vector<std::pair<std::string, std::string>> correspondence;  // (this word, target word)
  std::map<std::string, std::vector<RF>> target;                    // target word -> images of x_0..x_3
  std::map<std::string, long> target_galois;                        // target word -> a with zeta -> zeta^a
  std::string label = "X";
};
Step relabel(std::string id, std::function<RelabelSpec(Context&)> spec);
Step delegate(std::string id, std::function<std::pair<ScriptParams, Verdict>(Context&)> target);

// ---- public operations

std::vector<std::string> script_ids();
/// Validates family/parameter bounds for a script; throws ParameterError.
ScriptParams make_params(const std::string& id, Family family, int p, int n, std::optional<long> a = std::nullopt);
ProofScript build_script(const ScriptParams& params);
/// Order m of the cyclotomic coefficient field Q(zeta_m) the script works over.
int script_field_order(const ScriptParams& params);
Report run_script(const ScriptParams& params, const RunOptions& options);

struct Situation {
  Family family;
  std::string a_label;  // "-1", "-1+2^(n-2)", "1+2^(n-2)"
  std::string script_id;
  int epsilon;
  long a(int n) const;
};
std::vector<Situation> enumerate_situations();

/// The z-stage action tables of case1.1 are literally identical for every n.
Verdict check_n_independence(const std::string& id, Family family, const std::vector<int>& n_values,
                             const RunOptions& options);

/// The scripts run by a full sweep up to max_n, sorted by label; entries
/// outside the family bounds carry the reason they are skipped.
struct SweepEntry {
  std::string label;
  std::optional<ScriptParams> params;
  std::string skip;
};
std::vector<SweepEntry> sweep_entries(int max_n);

// ---- reports
std::string format_text(const Report& r, bool verbose = false);
std::string format_json(const std::vector<Report>& reports, bool pretty = true);

}  // namespace noether

#endif
