#include "noether/actions.hpp"

#include <random>

namespace noether {

FieldAutomorphism::FieldAutomorphism(std::vector<RF> images, GaloisMap g) : images_(std::move(images)), g_(g) {
  for (const auto& img : images_)
    if (img.nvars() != images_.size()) throw AlgebraError("automorphism image lives in a different space");
}

FieldAutomorphism FieldAutomorphism::identity(const CycField& f, size_t nvars) {
  return FieldAutomorphism(identity_images<CycElem>(f, nvars), GaloisMap::identity(f.order()));
}

RF FieldAutomorphism::apply(const RF& f) const {
  if (g_.is_identity()) return substitute(f, images_);
  return substitute(f.map_coefficients([this](const CycElem& c) { return galois_apply(g_, c); }), images_);
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& inner) const {
  std::vector<RF> out;
  out.reserve(inner.images_.size());
  for (const auto& img : inner.images_) out.push_back(apply(img));
  return FieldAutomorphism(std::move(out), g_.compose(inner.g_));
}

FieldAutomorphism FieldAutomorphism::pow(long k) const {
  if (k < 0) throw AlgebraError("FieldAutomorphism::pow: negative exponent");
  if (images_.empty()) return *this;
  FieldAutomorphism acc = identity(images_.front().field(), nvars());
  FieldAutomorphism base = *this;
  while (k > 0) {
    if (k & 1) acc = base.compose(acc);
    k >>= 1;
    if (k) base = base.compose(base);
  }
  return acc;
}

bool FieldAutomorphism::operator==(const FieldAutomorphism& o) const {
  if (nvars() != o.nvars() || g_.exponent() != o.g_.exponent()) return false;
  for (size_t v = 0; v < nvars(); ++v)
    if (!equals(images_[v], o.images_[v])) return false;
  return true;
}

bool FieldAutomorphism::is_identity() const {
  if (!g_.is_identity()) return false;
  for (size_t v = 0; v < nvars(); ++v) {
    auto t = images_[v].as_term();
    if (!t || !t->first.is_one() || !(t->second == Monomial::var(static_cast<uint32_t>(v)))) return false;
  }
  return true;
}

FieldAutomorphism GroupAction::element(const GroupElement& g) const {
  return sigma.pow(g.i).compose(tau.pow(g.j));
}

std::vector<std::pair<std::string, FieldAutomorphism>> GroupAction::all_elements(long cap) const {
  const long order = spec.order() * (lambda ? 2 : 1);
  if (order > cap) throw ParameterError("group order " + std::to_string(order) + " exceeds enumeration cap");
  std::vector<FieldAutomorphism> spows{FieldAutomorphism::identity(sigma.images().front().field(), sigma.nvars())};
  for (long i = 1; i < spec.sigma_order(); ++i) spows.push_back(sigma.compose(spows.back()));
  std::vector<FieldAutomorphism> tpows{spows.front()};
  for (int j = 1; j < spec.tau_span(); ++j) tpows.push_back(tau.compose(tpows.back()));
  std::vector<std::pair<std::string, FieldAutomorphism>> out;
  for (int j = 0; j < spec.tau_span(); ++j)
    for (long i = 0; i < spec.sigma_order(); ++i) {
      GroupElement g{i, j};
      out.emplace_back(element_name(g), spows[i].compose(tpows[j]));
    }
  if (lambda) {
    const size_t n = out.size();
    for (size_t k = 0; k < n; ++k) out.emplace_back(out[k].first + "*lambda", out[k].second.compose(*lambda));
  }
  return out;
}

std::string regular_var_name(const GroupElement& g) { return "x(" + element_name(g) + ")"; }

std::pair<SpacePtr, GroupAction> regular_representation(const GroupSpec& spec, const CycField& field,
                                                        std::optional<long> lambda_exponent) {
  const auto elems = enumerate_elements(spec);
  std::vector<std::string> names;
  for (const auto& g : elems) names.push_back(regular_var_name(g));
  auto space = make_space(std::move(names));
  const size_t N = elems.size();
  auto translate = [&](const GroupElement& s) {
    std::vector<RF> img;
    img.reserve(N);
    for (const auto& h : elems)
      img.push_back(RF::variable(field, N, static_cast<uint32_t>(element_index(multiply(s, h, spec), spec))));
    return FieldAutomorphism(std::move(img), GaloisMap::identity(field.order()));
  };
  GroupAction act{spec, translate(sigma_element()), translate(tau_element()), std::nullopt};
  if (lambda_exponent)
    act.lambda = FieldAutomorphism(identity_images<CycElem>(field, N), GaloisMap(field.order(), *lambda_exponent));
  return {space, act};
}

namespace {

RF xvar(const GroupSpec& spec, const CycField& field, const GroupElement& g) {
  return RF::variable(field, spec.order(), static_cast<uint32_t>(element_index(g, spec)));
}

RF scalar(const CycField& field, size_t nvars, const CycElem& c) { return RF::constant(field, nvars, c); }

}  // namespace

RF modular_eigenvector(const GroupSpec& spec, const CycField& field) {
  const long m = ipow(spec.p, spec.n - 2);
  if (field.order() % m != 0) throw AlgebraError("coefficient field lacks a primitive p^{n-2}-th root of unity");
  const long step = field.order() / m;  // xi = zeta_field^step
  const size_t N = spec.order();
  LaurentPoly<CycElem> acc;
  for (long i = 0; i < m; ++i) {
    const CycElem c = field.zeta(-i * step);
    for (int j = 0; j < spec.tau_span(); ++j) {
      GroupElement g = multiply(power(sigma_element(), i * spec.p, spec), power(tau_element(), j, spec), spec);
      acc.add_term(Monomial::var(static_cast<uint32_t>(element_index(g, spec))), c);
    }
  }
  return RF::fraction(field, N, acc, LaurentPoly<CycElem>::term(field.one(), Monomial{}));
}

RF dihedral_eigenvector(const GroupSpec& spec, const CycField& field) {
  const long m = ipow(2, spec.n - 2);
  if (field.order() % m != 0) throw AlgebraError("coefficient field lacks a primitive 2^{n-2}-th root of unity");
  const long step = field.order() / m;
  RF acc(field, spec.order());
  for (long i = 0; i < m; ++i)
    acc += scalar(field, spec.order(), field.zeta(-i * step)) * xvar(spec, field, power(sigma_element(), 2 * i, spec));
  return acc;
}

RF galois_eigenvector(const GroupSpec& spec, const CycField& field, long a) {
  const long m = spec.sigma_order();
  if (field.order() % m != 0) throw AlgebraError("coefficient field lacks a primitive p^{n-1}-th root of unity");
  const long step = field.order() / m;
  RF acc(field, spec.order());
  for (long j = 0; j < m; ++j)
    acc += scalar(field, spec.order(), field.zeta(-a * j * step)) * xvar(spec, field, power(sigma_element(), j, spec));
  return acc;
}

Verdict check_claimed_action(const FieldAutomorphism& phi, const RF& subject, const RF& claimed,
                             const VarSpace* space) {
  RF image = phi.apply(subject);
  if (equals(image, claimed)) return Verdict::pass();
  std::string d = "image differs from claim";
  if (space) d += ": computed " + to_string(image, *space) + ", claimed " + to_string(claimed, *space);
  return Verdict::fail(d);
}

Verdict check_relations(const GroupAction& act) {
  const auto& spec = act.spec;
  const auto& s = act.sigma;
  const auto& t = act.tau;
  if (!s.pow(spec.sigma_order()).is_identity()) return Verdict::fail("sigma^{p^{n-1}} != id");
  if (spec.family == Family::Q) {
    if (!(t.pow(2) == s.pow(ipow(2, spec.n - 2)))) return Verdict::fail("tau^2 != sigma^{2^{n-2}}");
    if (!t.pow(4).is_identity()) return Verdict::fail("tau^4 != id");
  } else if (!t.pow(spec.p).is_identity()) {
    return Verdict::fail("tau^p != id");
  }
  // tau^-1 sigma tau = sigma^k  <=>  sigma tau = tau sigma^k
  if (!(s.compose(t) == t.compose(s.pow(spec.twist())))) return Verdict::fail("tau^-1 sigma tau != sigma^k");
  if (act.lambda) {
    const auto& l = *act.lambda;
    if (!l.compose(l).is_identity()) return Verdict::fail("lambda^2 != id");
    if (!(l.compose(s) == s.compose(l))) return Verdict::fail("lambda does not commute with sigma");
    if (!(l.compose(t) == t.compose(l))) return Verdict::fail("lambda does not commute with tau");
  }
  return Verdict::pass(spec.name() + " relations hold" + std::string(act.lambda ? ", lambda^2 = id and central" : ""));
}

Verdict check_faithful(const GroupAction& action, const std::vector<RF>& subjects, const VarSpace*, long cap) {
  const auto elems = action.all_elements(cap);
  for (size_t k = 1; k < elems.size(); ++k) {
    const auto& [name, phi] = elems[k];
    if (!phi.galois().is_identity()) continue;
    bool fixes_all = true;
    for (const auto& s : subjects)
      if (!equals(phi.apply(s), s)) {
        fixes_all = false;
        break;
      }
    if (fixes_all) return Verdict::fail("non-identity element " + name + " fixes every listed generator");
  }
  return Verdict::pass("faithful: " + std::to_string(elems.size() - 1) + " non-identity elements each move a generator");
}

namespace {

// Determinant modulo q by Gaussian elimination.
uint64_t det_mod(std::vector<std::vector<uint64_t>> a, uint64_t q) {
  const size_t n = a.size();
  uint64_t det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = (q - det) % q;
    }
    det = mulmod(det, a[c][c], q);
    const uint64_t inv = invmod(a[c][c], q);
    for (size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const uint64_t f = mulmod(a[r][c], inv, q);
      for (size_t k = c; k < n; ++k) a[r][k] = (a[r][k] + q - mulmod(f, a[c][k], q)) % q;
    }
  }
  return det;
}

}  // namespace

AffineForm check_affine_form(const FieldAutomorphism& phi, const std::vector<uint32_t>& subset,
                             const PrimeField& field, const VarSpace* space) {
  AffineForm out;
  const size_t nv = phi.nvars();
  if (nv == 0) {
    out.verdict = Verdict::fail("empty variable space");
    return out;
  }
  const CycField& K = phi.images().front().field();
  std::vector<int> pos(nv, -1);
  for (size_t s = 0; s < subset.size(); ++s) pos.at(subset[s]) = static_cast<int>(s);
  auto name = [&](uint32_t v) { return space ? space->name(v) : "#" + std::to_string(v); };
  const auto one = LaurentPoly<CycElem>::term(K.one(), Monomial{});

  for (uint32_t v = 0; v < nv; ++v) {
    if (pos[v] >= 0) continue;
    for (uint32_t s : subset)
      if (phi.images()[v].uses_var(s)) {
        out.verdict = Verdict::fail("image of " + name(v) + " involves " + name(s) + ": the base field is not stable");
        return out;
      }
  }
  const size_t m = subset.size();
  out.A.assign(m, std::vector<RF>(m, RF(K, nv)));
  out.B.assign(m, RF(K, nv));
  for (size_t r = 0; r < m; ++r) {
    const RF& img = phi.images()[subset[r]];
    for (uint32_t s : subset)
      if (img.den().uses_var(s)) {
        out.verdict = Verdict::fail("image of " + name(subset[r]) + " has " + name(s) + " in its denominator");
        return out;
      }
    std::vector<LaurentPoly<CycElem>> coef(m);
    LaurentPoly<CycElem> rest;
    for (const auto& [mono, c] : img.num().terms()) {
      int hit = -1;
      for (const auto& [v, e] : mono.entries()) {
        if (pos[v] < 0) continue;
        if (e != 1 || hit >= 0) {
          out.verdict = Verdict::fail("image of " + name(subset[r]) + " is not affine in the subset variables");
          return out;
        }
        hit = pos[v];
      }
      if (hit < 0) rest.add_term(mono, c);
      else coef[hit].add_term(mono * Monomial::var(subset[hit], -1), c);
    }
    for (size_t t = 0; t < m; ++t) out.A[r][t] = RF::fraction(K, nv, coef[t], img.den());
    out.B[r] = RF::fraction(K, nv, rest, img.den());
  }
  if (m == 1) {
    out.verdict = out.A[0][0].is_zero() ? Verdict::fail("a_sigma = 0") : Verdict::pass("a_sigma != 0 (exact)");
    return out;
  }
  std::mt19937_64 rng(0xa11ce);
  std::uniform_int_distribution<uint64_t> dist(1, field.q - 1);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<uint64_t> pt(nv);
    for (auto& x : pt) x = dist(rng);
    std::vector<std::vector<uint64_t>> a(m, std::vector<uint64_t>(m));
    bool defined = true;
    for (size_t r = 0; r < m && defined; ++r)
      for (size_t t = 0; t < m; ++t) {
        if (out.A[r][t].is_zero()) continue;
        auto val = evaluate(out.A[r][t], pt, field);
        if (!val) {
          defined = false;
          break;
        }
        a[r][t] = *val;
      }
    if (!defined) continue;
    if (det_mod(std::move(a), field.q) != 0) {
      out.verdict = Verdict::pass("A is " + std::to_string(m) + "x" + std::to_string(m) +
                                  ", det nonzero mod " + std::to_string(field.q));
      return out;
    }
  }
  out.verdict = Verdict::fail("det A vanished modulo q at every sampled point");
  return out;
}

Verdict check_linear_reduction(const GroupAction& base, const std::vector<RF>& W,
                               const std::vector<std::vector<RF>>& w_images, const PrimeField& field) {
  const size_t N = base.sigma.nvars();
  const size_t m = W.size();
  if (m == 0) return Verdict::fail("no forms given");
  const CycField& K = W.front().field();
  // forms must be linear in the x(g)
  std::vector<std::vector<CycElem>> F(m, std::vector<CycElem>(N + m, K.zero()));
  for (size_t r = 0; r < m; ++r) {
    if (!W[r].is_laurent()) return Verdict::fail("form W_" + std::to_string(r) + " is not linear");
    for (const auto& [mono, c] : W[r].num().terms()) {
      if (mono.entries().size() != 1 || mono.entries()[0].second != 1)
        return Verdict::fail("form W_" + std::to_string(r) + " is not linear");
      F[r][mono.entries()[0].first] = c;
    }
    F[r][N + r] = K.one();
  }
  // RREF of [F | I]
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < N && row < m; ++c) {
    size_t piv = row;
    while (piv < m && F[piv][c].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(F[piv], F[row]);
    const CycElem inv = F[row][c].inverse();
    for (auto& x : F[row]) x = x * inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == row || F[r][c].is_zero()) continue;
      const CycElem f = F[r][c];
      for (size_t k = 0; k < N + m; ++k)
        if (!F[row][k].is_zero()) F[r][k] = F[r][k] - f * F[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  if (pivots.size() != m) return Verdict::fail("forms are linearly dependent (rank " + std::to_string(pivots.size()) + ")");

  // new coordinates: W_0..W_{m-1}, then x(h) for non-pivot h
  std::vector<long> newpos(N, -1);
  std::vector<uint32_t> complement;
  {
    size_t pi = 0;
    uint32_t next = static_cast<uint32_t>(m);
    for (size_t h = 0; h < N; ++h) {
      if (pi < m && pivots[pi] == h) {
        ++pi;
        continue;
      }
      newpos[h] = next;
      complement.push_back(next++);
    }
  }
  const size_t M = N;  // m + (N - m)
  std::vector<RF> old_in_new(N, RF(K, M));
  for (size_t h = 0; h < N; ++h)
    if (newpos[h] >= 0) old_in_new[h] = RF::variable(K, M, static_cast<uint32_t>(newpos[h]));
  for (size_t r = 0; r < m; ++r) {
    LaurentPoly<CycElem> e;
    for (size_t s = 0; s < m; ++s) e.add_term(Monomial::var(static_cast<uint32_t>(s)), F[r][N + s]);
    for (size_t h = 0; h < N; ++h)
      if (newpos[h] >= 0 && !F[r][h].is_zero()) e.add_term(Monomial::var(static_cast<uint32_t>(newpos[h])), -F[r][h]);
    old_in_new[pivots[r]] = RF::fraction(K, M, e, LaurentPoly<CycElem>::term(K.one(), Monomial{}));
  }
  // sanity: substituting back reproduces each W
  for (size_t r = 0; r < m; ++r)
    if (!equals(substitute(W[r], old_in_new), RF::variable(K, M, static_cast<uint32_t>(r))))
      return Verdict::fail("coordinate change does not reproduce W_" + std::to_string(r));

  std::vector<const FieldAutomorphism*> gens{&base.sigma, &base.tau};
  if (base.lambda) gens.push_back(&*base.lambda);
  if (w_images.size() != gens.size()) return Verdict::fail("expected W images for every generator");
  std::string detail;
  const char* gname[] = {"sigma", "tau", "lambda"};
  for (size_t g = 0; g < gens.size(); ++g) {
    std::vector<RF> img(M, RF(K, M));
    for (size_t s = 0; s < m; ++s) img[s] = w_images[g].at(s).widened(M);
    for (size_t h = 0; h < N; ++h) {
      if (newpos[h] < 0) continue;
      auto t = gens[g]->images()[h].as_term();
      if (!t || !t->first.is_one() || t->second.entries().size() != 1 || t->second.entries()[0].second != 1)
        return Verdict::fail("generator does not permute the x(g)");
      img[newpos[h]] = old_in_new[t->second.entries()[0].first];
    }
    FieldAutomorphism phi(std::move(img), gens[g]->galois());
    AffineForm af = check_affine_form(phi, complement, field);
    if (!af.verdict) return Verdict::fail(std::string(gname[g]) + ": " + af.verdict.detail);
    detail += std::string(g ? "; " : "") + gname[g] + ": " + af.verdict.detail;
  }
  Verdict faithful = check_faithful(base, W);
  if (!faithful) return Verdict::fail("restriction to K(zeta)(W) not faithful: " + faithful.detail);
  return Verdict::pass(detail + "; " + faithful.detail);
}

std::pair<RF, RF> theorem_2_3_uv(const RF& x, const RF& y, const RF& a, const RF& b) {
  RF den = x * y - a * b / (x * y);
  return {(x - a / x) / den, (y - b / y) / den};
}

Verdict verify_theorem_2_3(const RF& a, const RF& b, const FieldAutomorphism& inv, uint32_t xi, uint32_t yi,
                           const VarSpace* space) {
  if (a.is_zero() || b.is_zero()) return Verdict::fail("a and b must be nonzero");
  const CycField& K = a.field();
  const size_t nv = inv.nvars();
  const RF x = RF::variable(K, nv, xi), y = RF::variable(K, nv, yi);
  const RF one = RF::from_int(K, nv, 1);
  auto show = [&](const RF& f) { return space ? to_string(f, *space) : std::string("?"); };
  if (!equals(inv.apply(a), a)) return Verdict::fail("hypothesis: a = " + show(a) + " is moved by the involution");
  if (!equals(inv.apply(b), b)) return Verdict::fail("hypothesis: b = " + show(b) + " is moved by the involution");
  if (!equals(inv.images()[xi], a / x)) return Verdict::fail("hypothesis: involution(x) != a/x");
  if (!equals(inv.images()[yi], b / y)) return Verdict::fail("hypothesis: involution(y) != b/y");
  auto [u, v] = theorem_2_3_uv(x, y, a, b);
  if (!equals(inv.apply(u), u)) return Verdict::fail("u is not fixed");
  if (!equals(inv.apply(v), v)) return Verdict::fail("v is not fixed");
  const RF u2 = u * u, v2 = v * v;
  if (!equals(x + a / x, (-b * u2 + a * v2 + one) / v)) return Verdict::fail("x + a/x != (-bu^2+av^2+1)/v");
  if (!equals(y + b / y, (b * u2 - a * v2 + one) / u)) return Verdict::fail("y + b/y != (bu^2-av^2+1)/u");
  if (!equals(x * y + a * b / (x * y), (-b * u2 - a * v2 + one) / (u * v)))
    return Verdict::fail("xy + ab/(xy) != (-bu^2-av^2+1)/(uv)");
  const RF s = (-b * u2 + a * v2 + one) / v;
  if (!(x * x - s * x + a).is_zero()) return Verdict::fail("x does not satisfy X^2 - sX + a = 0");
  return Verdict::pass("hypotheses hold; u, v fixed; three identities and the quadratic for x hold");
}

}  // namespace noether
