#include "noether/replay.hpp"

#include <chrono>
#include <sstream>

#include "noether/lattice.hpp"

namespace noether {

std::string kind_name(StepKind k) {
  switch (k) {
    case StepKind::DefineVars: return "DefineVars";
    case StepKind::ClaimAction: return "ClaimAction";
    case StepKind::MonomialFieldEquality: return "MonomialFieldEquality";
    case StepKind::ExplicitInverseFieldEquality: return "ExplicitInverseFieldEquality";
    case StepKind::FixednessClaim: return "FixednessClaim";
    case StepKind::TheoremReduction: return "TheoremReduction";
    case StepKind::Relabel: return "Relabel";
    case StepKind::Delegate: return "Delegate";
  }
  return "?";
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Delegated: return "delegated";
    case Status::HypothesisOnly: return "hypothesis-only";
  }
  return "?";
}

std::string ScriptParams::describe() const {
  if (id == "thm2.3") return id;
  std::string s = id + " " + spec.name() + " p=" + std::to_string(spec.p) + " n=" + std::to_string(spec.n);
  if (a) s += " a=" + std::to_string(*a);
  return s;
}

// ------------------------------------------------------------------ Context

Context::Context(ScriptParams params, const CycField& field, RunOptions options)
    : params_(std::move(params)), field_(&field), opts_(options) {}

const PrimeField& Context::oracle_field() const {
  if (!pf_) pf_ = find_prime_with_root(field_->order(), opts_.oracle.min_q);
  return *pf_;
}

size_t Context::stage_index(const std::string& label) const {
  for (size_t k = stages_.size(); k-- > 0;)
    if (stages_[k].label == label) return k;
  throw AlgebraError("no stage labelled '" + label + "'");
}

void Context::set_base(const std::string& label, SpacePtr space, const GroupAction& action) {
  stages_.clear();
  Stage s{label, std::move(space), {}, {}, {}};
  s.actions.emplace("sigma", action.sigma);
  s.actions.emplace("tau", action.tau);
  if (action.lambda) s.actions.emplace("lambda", *action.lambda);
  stages_.push_back(std::move(s));
  base_ = action;
}

void Context::push_stage(const std::string& label, std::vector<std::string> names, std::vector<RF> defs) {
  if (!stages_.empty() && names.size() != defs.size()) throw AlgebraError("stage " + label + ": names and definitions differ in length");
  const size_t prev = stages_.empty() ? 0 : stages_.back().space->size();
  for (const auto& d : defs)
    if (!stages_.empty() && d.nvars() != prev) throw AlgebraError("stage " + label + ": definition in wrong space");
  std::map<std::string, std::string> alias;
  if (!stages_.empty()) alias = stages_.back().alias;
  stages_.push_back(Stage{label, make_space(std::move(names)), std::move(defs), {}, std::move(alias)});
}

RF Context::var_at(size_t k, const std::string& name) const {
  const auto& sp = *stages_.at(k).space;
  return RF::variable(*field_, sp.size(), static_cast<uint32_t>(sp.index(name)));
}
RF Context::var(const std::string& name) const { return var_at(stages_.size() - 1, name); }

RF Context::constant_at(size_t k, const CycElem& c) const {
  return RF::constant(*field_, stages_.at(k).space->size(), c);
}
RF Context::constant(const CycElem& c) const { return constant_at(stages_.size() - 1, c); }

RF Context::mono(std::initializer_list<std::pair<const char*, long long>> factors, const CycElem* c) const {
  const auto& sp = *stages_.back().space;
  Monomial m;
  for (const auto& [name, e] : factors) m = m * Monomial::var(static_cast<uint32_t>(sp.index(name)), e);
  return RF::monomial(*field_, sp.size(), c ? *c : field_->one(), m);
}

std::string Context::show(const RF& f, size_t k) const { return to_string(f, *stages_.at(k).space); }

bool Context::has_word(size_t k, const std::string& w) const {
  try {
    word(k, w);
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

FieldAutomorphism Context::word(size_t k, const std::string& w) const {
  const Stage& st = stages_.at(k);
  auto direct = st.actions.find(w);
  if (direct != st.actions.end()) return direct->second;
  FieldAutomorphism acc = FieldAutomorphism::identity(*field_, st.space->size());
  std::stringstream ss(w);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    if (factor == "1" || factor.empty()) continue;
    long e = 1;
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) e = std::stol(factor.substr(caret + 1));
    auto it = st.actions.find(name);
    if (it == st.actions.end()) throw AlgebraError("no action '" + name + "' installed at stage " + st.label);
    acc = acc.compose(it->second.pow(e));
  }
  return acc;
}

std::string Context::base_word(size_t k, const std::string& w) const {
  const auto& alias = stages_.at(k).alias;
  if (auto it = alias.find(w); it != alias.end()) return it->second;
  std::string out;
  std::stringstream ss(w);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    std::string piece = factor;
    if (auto it = alias.find(name); it != alias.end()) {
      const long e = caret == std::string::npos ? 1 : std::stol(factor.substr(caret + 1));
      if (e < 0) throw AlgebraError("negative power of a renamed word: " + w);
      piece.clear();
      for (long i = 0; i < e; ++i) piece += (i ? "*" : "") + it->second;
      if (piece.empty()) piece = "1";
    }
    out += (out.empty() ? "" : "*") + piece;
  }
  return out;
}

RF Context::pull_back(const RF& f, size_t from, size_t to) const {
  RF g = f;
  for (size_t k = from; k > to; --k) g = substitute(g, stages_.at(k).defs);
  return g;
}

uint64_t Context::seed(const std::string& step_id) const {
  if (opts_.oracle.fresh_seed) return std::random_device{}() ^ (static_cast<uint64_t>(std::random_device{}()) << 32);
  return step_seed(params_.describe(), step_id);
}

std::optional<std::vector<uint64_t>> Context::stage_values(size_t k, const std::vector<uint64_t>& base_point,
                                                           long galois) {
  std::vector<uint64_t> vals = base_point;
  for (size_t j = 1; j <= k; ++j) {
    auto key = std::make_pair(j, galois);
    auto it = compiled_.find(key);
    if (it == compiled_.end()) {
      std::vector<std::shared_ptr<CompiledRatFunc>> cs;
      for (const auto& d : stages_[j].defs) cs.push_back(std::make_shared<CompiledRatFunc>(d, oracle_field(), galois));
      it = compiled_.emplace(key, std::move(cs)).first;
    }
    std::vector<uint64_t> next;
    next.reserve(it->second.size());
    for (const auto& c : it->second) {
      auto v = (*c)(vals);
      if (!v) return std::nullopt;
      next.push_back(*v);
    }
    vals = std::move(next);
  }
  return vals;
}

OracleResult Context::oracle_claim(const std::string& step_id, const Claim& c, size_t k, const RF& image) {
  const PrimeField& F = oracle_field();
  const FieldAutomorphism phi = word(0, base_word(k, c.word));
  const long g = phi.galois().exponent();
  std::vector<CompiledRatFunc> imgs;
  for (const auto& im : phi.images()) imgs.emplace_back(im, F);
  CompiledRatFunc subj(c.subject, F, g);
  const bool prev = c.printed_in_prev && &image == &c.printed;
  CompiledRatFunc rhs(image, F);
  PointFn L = [&](const std::vector<uint64_t>& P) -> std::optional<uint64_t> {
    std::vector<uint64_t> Q;
    Q.reserve(imgs.size());
    for (const auto& f : imgs) {
      auto v = f(P);
      if (!v) return std::nullopt;
      Q.push_back(*v);
    }
    auto s = stage_values(k, Q, g);
    if (!s) return std::nullopt;
    return subj(*s);
  };
  PointFn R = [&](const std::vector<uint64_t>& P) -> std::optional<uint64_t> {
    auto s = stage_values(prev ? k - 1 : k, P);
    if (!s) return std::nullopt;
    return rhs(*s);
  };
  std::mt19937_64 rng(seed(step_id + "/" + c.word + "/" + c.subject_label));
  return sample_points(L, R, stages_[0].space->size(), F, opts_.oracle.trials, rng, degree_bound(c.subject) + degree_bound(image));
}

OracleResult Context::oracle_identity(const std::string& step_id, const RF& lhs, size_t kl, const RF& rhs, size_t kr) {
  const PrimeField& F = oracle_field();
  CompiledRatFunc cl(lhs, F), cr(rhs, F);
  PointFn L = [&](const std::vector<uint64_t>& P) -> std::optional<uint64_t> {
    auto s = stage_values(kl, P);
    if (!s) return std::nullopt;
    return cl(*s);
  };
  PointFn R = [&](const std::vector<uint64_t>& P) -> std::optional<uint64_t> {
    auto s = stage_values(kr, P);
    if (!s) return std::nullopt;
    return cr(*s);
  };
  std::mt19937_64 rng(seed(step_id + "/" + std::to_string(kl) + "/" + std::to_string(kr)));
  return sample_points(L, R, stages_[0].space->size(), F, opts_.oracle.trials, rng, degree_bound(lhs) + degree_bound(rhs));
}

// ------------------------------------------------------------------ steps

namespace {

StepReport make_report(Status s, std::string detail) {
  StepReport r;
  r.status = s;
  r.detail = std::move(detail);
  return r;
}

void absorb(StepReport& r, const OracleResult& o, bool symbolic_ok) {
  r.oracle_agree += o.agree;
  r.oracle_trials += o.trials;
  if (!o.ok && symbolic_ok) {
    r.oracle_refuted = true;
    r.status = Status::Fail;
    r.detail += " | ORACLE: " + o.detail;
  }
}

bool oracle_on(const Context& ctx) { return ctx.options().oracle.enabled && ctx.options().oracle.trials > 0; }

std::optional<size_t> plain_variable(const Claim& c) {
  auto t = c.subject.as_term();
  if (!t || !t->first.is_one() || t->second.entries().size() != 1 || t->second.entries()[0].second != 1)
    return std::nullopt;
  return t->second.entries()[0].first;
}

// Symbolic check of one claim at stage k; image is in stage k (or k-1 when in_prev).
bool verify_claim(Context& ctx, const Claim& c, const RF& image, bool in_prev, std::string& why) {
  const size_t k = ctx.depth() - 1;
  RF lhs, rhs;
  size_t shown;
  if (k == 0) {
    lhs = ctx.word(0, c.word).apply(c.subject);
    rhs = image;
    shown = 0;
  } else {
    lhs = ctx.word(k - 1, c.word).apply(ctx.pull_back(c.subject, k, k - 1));
    rhs = in_prev ? image : ctx.pull_back(image, k, k - 1);
    shown = k - 1;
  }
  if (equals(lhs, rhs)) return true;
  why = "computed " + ctx.show(lhs, shown);
  if (why.size() > 400) why = why.substr(0, 400) + "...";
  return false;
}

StepReport run_claims(Context& ctx, const std::string& step_id, const std::vector<Claim>& claims, bool install,
                      const std::string& stage_note = {}) {
  const size_t k = ctx.depth() - 1;
  StepReport r = make_report(Status::Pass, "");
  std::vector<std::string> lines;
  std::map<std::string, std::map<size_t, RF>> table;
  bool all_ok = true;
  for (const auto& c : claims) {
    std::string why;
    const bool printed_ok = verify_claim(ctx, c, c.printed, c.printed_in_prev, why);
    const RF* accepted = printed_ok ? &c.printed : nullptr;
    std::string line = c.word + ": " + c.subject_label + " -> " +
                       (c.printed_in_prev ? ctx.show(c.printed, k - 1) : ctx.show(c.printed, k));
    if (printed_ok) {
      line += " ok";
    } else if (c.corrected) {
      std::string why2;
      const bool corr_ok = verify_claim(ctx, c, *c.corrected, false, why2);
      line += " FAILS as printed (" + why + "); corrected " + ctx.show(*c.corrected, k) +
              (corr_ok ? " holds" : " also fails (" + why2 + ")");
      if (corr_ok) accepted = &*c.corrected;
      else all_ok = false;
    } else {
      line += " FAILS (" + why + ")";
      all_ok = false;
    }
    if (!c.note.empty()) line += " [" + c.note + "]";
    lines.push_back(line);
    const RF& chosen = accepted ? *accepted : c.printed;
    if (oracle_on(ctx) && ctx.base_action()) absorb(r, ctx.oracle_claim(step_id, c, k, chosen), accepted != nullptr);
    if (auto v = plain_variable(c); v && accepted && !(accepted == &c.printed && c.printed_in_prev))
      table[c.word].insert_or_assign(*v, *accepted);
  }
  if (!all_ok) r.status = Status::Fail;
  std::string detail = stage_note;
  for (const auto& l : lines) detail += (detail.empty() ? "" : "; ") + l;
  r.detail = detail + (r.detail.empty() ? "" : r.detail);
  Stage& st = ctx.current();
  for (const auto& [w, imgs] : table) {
    std::vector<std::string> printed;
    for (const auto& [v, img] : imgs) printed.push_back(st.space->name(v) + " -> " + ctx.show(img));
    if (ctx.report) {
      auto& dst = ctx.report->tables[st.label][w];
      dst.insert(dst.end(), printed.begin(), printed.end());
    }
    if (install && k > 0 && imgs.size() == st.space->size()) {
      std::vector<RF> images;
      for (const auto& [v, img] : imgs) images.push_back(img);
      st.actions.insert_or_assign(w, FieldAutomorphism(std::move(images), ctx.word(k - 1, w).galois()));
    }
  }
  return r;
}

// zeta-log weights of a diagonal automorphism on the variables of stage k.
std::optional<std::vector<long long>> diagonal_weights(const Context& ctx, const FieldAutomorphism& phi,
                                                       const VarSpace& sp, std::string& why) {
  if (!phi.galois().is_identity()) {
    why = "automorphism moves zeta";
    return std::nullopt;
  }
  std::vector<long long> w;
  for (size_t v = 0; v < phi.nvars(); ++v) {
    auto t = phi.images()[v].as_term();
    if (!t || !(t->second == Monomial::var(static_cast<uint32_t>(v)))) {
      why = "not diagonal on " + sp.name(v);
      return std::nullopt;
    }
    auto lg = zeta_log(t->first);
    if (!lg) {
      why = "scalar on " + sp.name(v) + " is not a power of zeta";
      return std::nullopt;
    }
    w.push_back(*lg);
  }
  (void)ctx;
  return w;
}

std::string lattice_rows(const IntMatrix& B, const VarSpace& sp) {
  std::string s;
  for (size_t i = 0; i < B.rows(); ++i) {
    std::string m;
    for (size_t j = 0; j < B.cols(); ++j) {
      if (B(i, j) == 0) continue;
      if (!m.empty()) m += "*";
      m += sp.name(j);
      if (B(i, j) != 1) m += "^" + B(i, j).get_str();
    }
    s += (i ? ", " : "") + (m.empty() ? std::string("1") : m);
  }
  return s;
}

std::string join_weights(const std::vector<long long>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

}  // namespace

Step define_vars(std::string id, std::string label, std::vector<std::string> names, DefsFn defs) {
  return {std::move(id), StepKind::DefineVars,
          [label, names, defs](Context& ctx) {
            auto d = defs(ctx);
            const size_t k = ctx.depth() - 1;
            std::string detail;
            for (size_t i = 0; i < d.size() && i < names.size(); ++i) {
              if (d[i].is_zero()) return make_report(Status::Fail, names[i] + " is defined as 0");
              std::string s = ctx.show(d[i], k);
              if (s.size() > 160) s = s.substr(0, 160) + "...";
              detail += (i ? "; " : "") + names[i] + " = " + s;
            }
            ctx.push_stage(label, names, std::move(d));
            return make_report(Status::Pass, detail);
          }};
}

Step claim_action(std::string id, ClaimsFn claims, bool install) {
  return {id, StepKind::ClaimAction, [id, claims, install](Context& ctx) { return run_claims(ctx, id, claims(ctx), install); }};
}

Step claim_relations(std::string id) {
  return {std::move(id), StepKind::ClaimAction, [](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            GroupAction act{ctx.spec(), ctx.word(k, "sigma"), ctx.word(k, "tau"), std::nullopt};
            if (ctx.current().actions.count("lambda")) act.lambda = ctx.word(k, "lambda");
            Verdict v = check_relations(act);
            return make_report(v ? Status::Pass : Status::Fail, "on " + ctx.current().label + ": " + v.detail);
          }};
}

Step monomial_field_equality(std::string id) {
  return {id, StepKind::MonomialFieldEquality, [id](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            const Stage& st = ctx.current();
            const size_t r = st.defs.size(), c = ctx.stage(k - 1).space->size();
            if (r != c) return make_report(Status::Fail, "exponent matrix is not square");
            IntMatrix M(r, c);
            std::vector<CycElem> coef;
            for (size_t i = 0; i < r; ++i) {
              auto t = st.defs[i].as_term();
              if (!t) return make_report(Status::Fail, st.space->name(i) + " is not a monomial");
              coef.push_back(t->first);
              for (const auto& [v, e] : t->second.entries()) M(i, v) = Integer(static_cast<long>(e));
            }
            Integer det = determinant(M);
            if (det != 1 && det != -1)
              return make_report(Status::Fail, "exponent matrix " + M.to_string() + " has det " + det.get_str());
            IntMatrix Minv = unimodular_inverse(M);
            const CycField& K = ctx.field();
            std::vector<RF> back;
            for (size_t j = 0; j < c; ++j) {
              RF b = RF::from_int(K, r, 1);
              for (size_t i = 0; i < r; ++i) {
                if (Minv(j, i) == 0) continue;
                RF base = RF::variable(K, r, static_cast<uint32_t>(i)) / RF::constant(K, r, coef[i]);
                b = b * base.pow(Minv(j, i).get_si());
              }
              back.push_back(std::move(b));
            }
            for (size_t j = 0; j < c; ++j)
              if (!equals(substitute(back[j], st.defs), ctx.var_at(k - 1, ctx.stage(k - 1).space->name(j))))
                return make_report(Status::Fail, "round trip fails on " + ctx.stage(k - 1).space->name(j));
            for (size_t i = 0; i < r; ++i)
              if (!equals(substitute(st.defs[i], back), RF::variable(K, r, static_cast<uint32_t>(i))))
                return make_report(Status::Fail, "inverse round trip fails on " + st.space->name(i));
            StepReport rep = make_report(Status::Pass, "det " + det.get_str() + ", exponent matrix " + M.to_string() +
                                                           "; substitution and inverse compose to the identity");
            if (oracle_on(ctx) && ctx.base_action())
              for (size_t j = 0; j < c; ++j)
                absorb(rep, ctx.oracle_identity(id + "/" + std::to_string(j), back[j], k,
                                                ctx.var_at(k - 1, ctx.stage(k - 1).space->name(j)), k - 1),
                       true);
            return rep;
          }};
}

Step explicit_inverse(std::string id, std::function<InverseSpec(Context&)> spec_fn) {
  return {id, StepKind::ExplicitInverseFieldEquality, [id, spec_fn](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            InverseSpec spec = spec_fn(ctx);
            const Stage& prev = ctx.stage(k - 1);
            if (spec.back.size() != prev.space->size())
              return make_report(Status::Fail, "need one back formula per previous variable");
            if (spec.anchor_back > k) return make_report(Status::Fail, "anchor stage out of range");
            const size_t anchor = k - spec.anchor_back;
            for (size_t j = 0; j < spec.back.size(); ++j) {
              RF lhs = ctx.pull_back(spec.back[j], k, anchor);
              RF rhs = ctx.pull_back(ctx.var_at(k - 1, prev.space->name(j)), k - 1, anchor);
              if (!equals(lhs, rhs))
                return make_report(Status::Fail, "back formula for " + prev.space->name(j) + " does not recover it");
            }
            for (size_t i = 0; i < spec.relations.size(); ++i)
              if (!ctx.pull_back(spec.relations[i], k, anchor).is_zero())
                return make_report(Status::Fail, "relation " + ctx.show(spec.relations[i]) + " does not vanish");
            if (spec.check_forward) {
              const auto& st = ctx.current();
              for (size_t i = 0; i < st.defs.size(); ++i)
                if (!equals(substitute(st.defs[i], spec.back), ctx.var(st.space->name(i))))
                  return make_report(Status::Fail, "forward round trip fails on " + st.space->name(i));
            }
            std::string detail = "old generators recovered exactly";
            for (size_t j = 0; j < spec.back.size(); ++j)
              detail += "; " + prev.space->name(j) + " = " + ctx.show(spec.back[j]);
            for (const auto& rel : spec.relations) detail += "; relation " + ctx.show(rel) + " = 0";
            if (spec.check_forward) detail += "; inverse composes to the identity";
            StepReport rep = make_report(Status::Pass, detail);
            if (oracle_on(ctx) && ctx.base_action())
              for (size_t j = 0; j < spec.back.size(); ++j)
                absorb(rep, ctx.oracle_identity(id + "/" + std::to_string(j), spec.back[j], k,
                                                ctx.var_at(k - 1, prev.space->name(j)), k - 1),
                       true);
            return rep;
          }};
}

Step fixed_field_lattice(std::string id, std::string w) {
  return {id, StepKind::FixednessClaim, [id, w](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            const Stage& prev = ctx.stage(k - 1);
            const Stage& st = ctx.current();
            std::string why;
            auto weights = diagonal_weights(ctx, ctx.word(k - 1, w), *prev.space, why);
            if (!weights) return make_report(Status::Fail, w + ": " + why);
            const long long m = ctx.field().order();
            const size_t r = st.defs.size(), c = prev.space->size();
            if (r != c) return make_report(Status::Fail, "generator count differs from the previous stage");
            IntMatrix E(r, c);
            for (size_t i = 0; i < r; ++i) {
              auto t = st.defs[i].as_term();
              if (!t) return make_report(Status::Fail, st.space->name(i) + " is not a monomial");
              long long dot = 0;
              for (const auto& [v, e] : t->second.entries()) {
                E(i, v) = Integer(static_cast<long>(e));
                dot = mod_floor(dot + mod_floor(e, m) * (*weights)[v], m);
              }
              if (dot != 0) return make_report(Status::Fail, st.space->name(i) + " is not fixed by " + w);
            }
            IntMatrix L = diagonal_invariant_lattice(*weights, m);
            Integer idx = abs(determinant(L));
            Integer d = abs(determinant(E));
            if (d != idx)
              return make_report(Status::Fail, "generators span a sublattice of index " + d.get_str() + " in Z^" +
                                                   std::to_string(c) + ", fixed lattice has index " + idx.get_str());
            StepReport rep = make_report(Status::Pass, w + " acts diagonally with weights " + join_weights(*weights) +
                                                           " mod " + std::to_string(m) + "; fixed lattice index " +
                                                           idx.get_str() + " = |det| of the new exponents; basis " +
                                                           lattice_rows(L, *prev.space));
            if (oracle_on(ctx) && ctx.base_action())
              for (size_t i = 0; i < r; ++i) {
                Claim c{w, st.space->name(i), ctx.var(st.space->name(i)), ctx.var(st.space->name(i)), std::nullopt,
                        false, ""};
                absorb(rep, ctx.oracle_claim(id, c, k, c.printed), true);
              }
            return rep;
          }};
}

Step invariant_lattice_certificate(std::string id, std::string w, std::function<long(Context&)> expected) {
  return {std::move(id), StepKind::FixednessClaim, [w, expected](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            std::string why;
            auto weights = diagonal_weights(ctx, ctx.word(k, w), *ctx.current().space, why);
            if (!weights) return make_report(Status::Fail, w + ": " + why);
            const long long m = ctx.field().order();
            IntMatrix L = diagonal_invariant_lattice(*weights, m);
            Integer idx = abs(determinant(L));
            const long want = expected(ctx);
            std::string detail = w + " weights " + join_weights(*weights) + " mod " + std::to_string(m) +
                                 "; invariant monomials " + lattice_rows(L, *ctx.current().space) + "; index " +
                                 idx.get_str();
            return make_report(idx == want ? Status::Pass : Status::Fail,
                               detail + (idx == want ? "" : ", expected " + std::to_string(want)));
          }};
}

Step fixed_elements(std::string id, std::string w,
                    std::function<std::vector<std::pair<std::string, RF>>(Context&)> exprs) {
  return {id, StepKind::FixednessClaim, [id, w, exprs](Context& ctx) {
            std::vector<Claim> claims;
            for (auto& [label, e] : exprs(ctx)) claims.push_back(Claim{w, label, e, e, std::nullopt, false, ""});
            return run_claims(ctx, id, claims, false);
          }};
}

Step reduce_linear(std::string id) {
  return {std::move(id), StepKind::TheoremReduction, [](Context& ctx) {
            if (!ctx.base_action() || ctx.depth() < 2) return make_report(Status::Fail, "no regular representation below");
            const Stage& st = ctx.stage(1);
            std::vector<std::vector<RF>> wimg;
            for (const char* g : {"sigma", "tau", "lambda"}) {
              if (std::string(g) == "lambda" && !ctx.base_action()->lambda) break;
              auto it = st.actions.find(g);
              if (it == st.actions.end()) return make_report(Status::Fail, std::string("no verified table for ") + g);
              wimg.push_back(it->second.images());
            }
            Verdict v = check_linear_reduction(*ctx.base_action(), st.defs, wimg, ctx.oracle_field());
            return make_report(v ? Status::Delegated : Status::Fail,
                               "hypotheses of the linear reduction onto " + st.label + ": " + v.detail);
          }};
}

Step reduce_affine(std::string id, std::string var, std::string label) {
  return {std::move(id), StepKind::TheoremReduction, [var, label](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            Stage& st = ctx.current();
            const uint32_t d = static_cast<uint32_t>(st.space->index(var));
            std::string detail;
            for (const auto& [w, phi] : st.actions) {
              AffineForm af = check_affine_form(phi, {d}, ctx.oracle_field(), st.space.get());
              if (!af.verdict)
                return make_report(Status::Fail, w + "(" + var + ") not of the form a*" + var + " + b: " + af.verdict.detail);
              detail += (detail.empty() ? "" : "; ") + w + "(" + var + ") = (" + ctx.show(af.A[0][0]) + ")*" + var +
                        " + (" + ctx.show(af.B[0]) + ")";
            }
            // stage without the eliminated variable
            std::vector<std::string> names;
            std::vector<RF> defs;
            std::vector<long> newpos(st.space->size(), -1);
            for (size_t v = 0; v < st.space->size(); ++v) {
              if (v == d) continue;
              newpos[v] = static_cast<long>(names.size());
              names.push_back(st.space->name(v));
              defs.push_back(ctx.var_at(k, st.space->name(v)));
            }
            const size_t nn = names.size();
            std::vector<RF> to_new;
            for (size_t v = 0; v < st.space->size(); ++v)
              to_new.push_back(v == d ? RF::from_int(ctx.field(), nn, 1)
                                      : RF::variable(ctx.field(), nn, static_cast<uint32_t>(newpos[v])));
            std::map<std::string, FieldAutomorphism> restricted;
            for (const auto& [w, phi] : st.actions) {
              std::vector<RF> imgs;
              for (size_t v = 0; v < st.space->size(); ++v)
                if (v != d) imgs.push_back(substitute(phi.images()[v], to_new));
              restricted.emplace(w, FieldAutomorphism(std::move(imgs), phi.galois()));
            }
            ctx.push_stage(label, names, std::move(defs));
            ctx.current().actions = std::move(restricted);
            return make_report(Status::Delegated, "eliminate " + var + ": " + detail);
          }};
}

Step reduce_involution(std::string id, std::string w, std::string x, std::string y,
                       std::function<std::pair<RF, RF>(Context&)> ab) {
  return {std::move(id), StepKind::TheoremReduction, [w, x, y, ab](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            const auto& sp = *ctx.current().space;
            auto [a, b] = ab(ctx);
            Verdict v = verify_theorem_2_3(a, b, ctx.word(k, w), static_cast<uint32_t>(sp.index(x)),
                                           static_cast<uint32_t>(sp.index(y)), &sp);
            return make_report(v ? Status::Delegated : Status::Fail,
                               w + " on (" + x + ", " + y + ") with a = " + ctx.show(a) + ", b = " + ctx.show(b) + ": " +
                                   v.detail);
          }};
}

Step lemma_2_4_check(std::string id, std::string w) {
  return {std::move(id), StepKind::TheoremReduction, [w](Context& ctx) {
            const size_t k = ctx.depth() - 1;
            const long a = ctx.word(k, w).galois().exponent();
            Verdict v = verify_lemma_2_4(ctx.spec().n - 1, a);
            return make_report(v ? Status::Pass : Status::Fail, w + ": " + v.detail);
          }};
}

Step hypothesis_only(std::string id, std::string detail) {
  return {std::move(id), StepKind::TheoremReduction,
          [detail](Context&) { return make_report(Status::HypothesisOnly, detail); }};
}

Step relabel(std::string id, std::function<RelabelSpec(Context&)> spec_fn) {
  return {std::move(id), StepKind::Relabel, [spec_fn](Context& ctx) {
            RelabelSpec spec = spec_fn(ctx);
            const size_t k = ctx.depth() - 1;
            const auto& sp = *ctx.current().space;
            const size_t nv = sp.size();
            if (spec.perm.size() != nv) return make_report(Status::Fail, "permutation has the wrong length");
            std::vector<int> inv(nv, -1);
            for (size_t i = 0; i < nv; ++i) inv.at(spec.perm[i]) = static_cast<int>(i);
            std::vector<std::string> names;
            std::vector<RF> defs;
            std::string detail;
            for (size_t i = 0; i < nv; ++i) {
              names.push_back(spec.label + std::to_string(i));
              defs.push_back(ctx.var_at(k, sp.name(spec.perm[i])));
              detail += (i ? ", " : "") + names.back() + " = " + sp.name(spec.perm[i]);
            }
            std::vector<RF> to_new;
            for (size_t j = 0; j < nv; ++j) to_new.push_back(RF::variable(ctx.field(), nv, static_cast<uint32_t>(inv[j])));
            std::map<std::string, FieldAutomorphism> installed;
            bool ok = true;
            for (const auto& [mine, theirs] : spec.correspondence) {
              FieldAutomorphism phi = ctx.word(k, mine);
              std::vector<RF> imgs;
              for (size_t i = 0; i < nv; ++i) imgs.push_back(substitute(phi.images()[spec.perm[i]], to_new));
              auto it = spec.target.find(theirs);
              if (it == spec.target.end()) return make_report(Status::Fail, "no target table for " + theirs);
              std::string bad;
              for (size_t i = 0; i < nv; ++i)
                if (!equals(imgs[i], it->second[i])) bad += " " + names[i];
              detail += "; " + mine + " on X ~ " + theirs + ": " + (bad.empty() ? "variable images agree" : "differ on" + bad);
              const long here = phi.galois().exponent();
              auto tg = spec.target_galois.find(theirs);
              if (tg == spec.target_galois.end() || mod_floor(tg->second, ctx.field().order()) == here)
                detail += ", zeta -> zeta^" + std::to_string(here);
              else
                detail += ", zeta -> zeta^" + std::to_string(here) + " here but zeta^" +
                          std::to_string(mod_floor(tg->second, ctx.field().order())) + " in the target";
              if (!bad.empty()) ok = false;
              installed.insert_or_assign(theirs, FieldAutomorphism(std::move(imgs), phi.galois()));
            }
            std::map<std::string, std::string> alias;
            for (const auto& [mine, theirs] : spec.correspondence) alias[theirs] = ctx.base_word(k, mine);
            ctx.push_stage(spec.label, names, std::move(defs));
            ctx.current().actions = std::move(installed);
            ctx.current().alias = std::move(alias);
            return make_report(ok ? Status::Pass : Status::Fail, detail);
          }};
}

Step delegate(std::string id, std::function<std::pair<ScriptParams, Verdict>(Context&)> target) {
  return {std::move(id), StepKind::Delegate, [target](Context& ctx) {
            auto [params, hyp] = target(ctx);
            if (!hyp) return make_report(Status::Fail, "delegation hypothesis fails: " + hyp.detail);
            Report sub = run_script(params, ctx.options());
            StepReport r = make_report(sub.passed ? Status::Delegated : Status::Fail,
                                       hyp.detail + "; target " + params.describe() + (sub.passed ? " passes" : " FAILS"));
            for (const auto& s : sub.steps) {
              r.oracle_agree += s.oracle_agree;
              r.oracle_trials += s.oracle_trials;
            }
            r.delegated.push_back(std::move(sub));
            return r;
          }};
}

// ------------------------------------------------------------------ runner

Report run_script(const ScriptParams& params, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ProofScript script = build_script(params);
  Report rep;
  rep.params = params;
  Context ctx(params, CycField::get(script_field_order(params)), options);
  ctx.report = &rep;
  bool broken = false;
  for (const auto& step : script.steps) {
    StepReport sr;
    if (broken) {
      sr.status = Status::Fail;
      sr.detail = "not run: an earlier stage could not be constructed";
    } else {
      try {
        sr = step.run(ctx);
      } catch (const std::exception& e) {
        sr.status = Status::Fail;
        sr.detail = std::string("error: ") + e.what();
        if (step.kind == StepKind::DefineVars || step.kind == StepKind::Relabel) broken = true;
      }
    }
    sr.step_id = step.id;
    sr.kind = step.kind;
    if (sr.status == Status::Fail) rep.passed = false;
    rep.steps.push_back(std::move(sr));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

long Situation::a(int n) const {
  const long m = ipow(2, n - 1);
  if (a_label == "-1") return m - 1;
  if (a_label == "-1+2^(n-2)") return mod_floor(-1 + ipow(2, n - 2), m);
  return mod_floor(1 + ipow(2, n - 2), m);
}

std::vector<Situation> enumerate_situations() {
  const std::vector<std::string> labels = {"-1", "-1+2^(n-2)", "1+2^(n-2)"};
  std::vector<Situation> out;
  for (Family f : {Family::D, Family::Q, Family::M, Family::SD}) {
    const int eps = f == Family::Q ? -1 : 1;
    const std::string c = f == Family::M ? "2" : f == Family::SD ? "3" : "1";
    for (size_t i = 0; i < labels.size(); ++i)
      out.push_back(Situation{f, labels[i], "case" + c + "." + std::to_string(i + 1), eps});
  }
  return out;
}

Verdict check_n_independence(const std::string& id, Family family, const std::vector<int>& n_values,
                             const RunOptions& options) {
  if (n_values.empty()) return Verdict::pass("no parameters given");
  std::optional<std::map<std::string, std::vector<std::string>>> first;
  std::string stage;
  for (int n : n_values) {
    ScriptParams p = make_params(id, family, 2, n);
    Report r = run_script(p, options);
    auto it = r.tables.find("z");
    if (it == r.tables.end()) return Verdict::fail("z stage not reached for n = " + std::to_string(n));
    std::map<std::string, std::vector<std::string>> t;
    for (const auto& [w, lines] : it->second) t[w] = lines;
    for (const auto& s : r.steps)
      if (s.status == Status::Fail && s.step_id.rfind("z", 0) == 0)
        return Verdict::fail("z-stage claims fail for n = " + std::to_string(n));
    if (!first) {
      first = t;
    } else if (*first != t) {
      return Verdict::fail("z-stage tables differ between n = " + std::to_string(n_values.front()) + " and n = " +
                           std::to_string(n));
    }
  }
  std::string d;
  for (const auto& [w, lines] : *first) {
    d += (d.empty() ? "" : "; ") + w + ":";
    for (const auto& l : lines) d += " " + l + ",";
    d.pop_back();
  }
  return Verdict::pass("identical for n in {" + [&] {
    std::string s;
    for (int n : n_values) s += (s.empty() ? "" : ",") + std::to_string(n);
    return s;
  }() + "}: " + d);
}

}  // namespace noether
