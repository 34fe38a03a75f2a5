#ifndef NOETHER_RATFIELD_HPP
#define NOETHER_RATFIELD_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "noether/common.hpp"

namespace noether {

/// Ordered, unique variable names. Indices are stable for the lifetime of
/// the space; spaces are shared immutably between expressions.
class VarSpace {
 public:
  explicit VarSpace(std::vector<std::string> names);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<size_t> find(const std::string& name) const;
  /// Throws AlgebraError("undefined variable ...") when absent.
  size_t index(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, size_t> lookup_;
};

using SpacePtr = std::shared_ptr<const VarSpace>;
SpacePtr make_space(std::vector<std::string> names);

/// Laurent monomial: sparse exponent vector, zero exponents not stored.
/// Ordering is lexicographic on the dense exponent vector.
class Monomial {
 public:
  using Entry = std::pair<uint32_t, long long>;

  Monomial() = default;
  static Monomial var(uint32_t v, long long e = 1);
  static Monomial from_dense(const std::vector<long long>& exps);

  bool is_one() const { return e_.empty(); }
  long long exponent(uint32_t v) const;
  const std::vector<Entry>& entries() const { return e_; }
  uint32_t max_var() const { return e_.empty() ? 0 : e_.back().first; }

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(long long k) const;
  /// Componentwise minimum (absent entries count as 0).
  static Monomial min(const Monomial& a, const Monomial& b);
  long long total_degree() const;  // sum of |exponents|

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator<(const Monomial& o) const;

 private:
  std::vector<Entry> e_;
};

/// Sparse Laurent polynomial; coefficients are never zero.
template <class C>
class LaurentPoly {
 public:
  using Map = std::map<Monomial, C>;

  LaurentPoly() = default;
  static LaurentPoly term(const C& c, const Monomial& m) {
    LaurentPoly p;
    if (!c.is_zero()) p.t_.emplace(m, c);
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Map& terms() const { return t_; }
  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }

  std::optional<std::pair<C, Monomial>> as_term() const {
    if (t_.size() != 1) return std::nullopt;
    return std::make_pair(t_.begin()->second, t_.begin()->first);
  }
  bool is_constant_one() const { return t_.size() == 1 && t_.begin()->first.is_one() && t_.begin()->second.is_one(); }
  const C& leading_coefficient() const { return t_.rbegin()->second; }

  Monomial min_monomial() const {
    if (t_.empty()) return {};
    Monomial m = t_.begin()->first;
    for (const auto& [mono, c] : t_) m = Monomial::min(m, mono);
    return m;
  }

  bool uses_var(uint32_t v) const {
    for (const auto& [mono, c] : t_)
      if (mono.exponent(v) != 0) return true;
    return false;
  }

  void add_term(const Monomial& m, const C& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [m1, c1] : t_)
      for (const auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    return r;
  }
  LaurentPoly scaled(const C& s, const Monomial& m) const {
    LaurentPoly r;
    if (s.is_zero()) return r;
    for (const auto& [mono, c] : t_) r.t_.emplace_hint(r.t_.end(), mono * m, c * s);
    // multiplication by a monomial preserves the order, so hints stay valid
    return r;
  }
  LaurentPoly pow(long long e, const C& one) const {
    if (e < 0) throw AlgebraError("LaurentPoly::pow: negative exponent");
    if (auto t = as_term()) {
      C c = one;
      for (long long i = 0; i < e; ++i) c = c * t->first;
      return term(c, t->second.pow(e));
    }
    LaurentPoly acc = term(one, Monomial{}), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }
  template <class F>
  LaurentPoly map_coefficients(F&& fn) const {
    LaurentPoly r;
    for (const auto& [m, c] : t_) {
      C d = fn(c);
      if (!d.is_zero()) r.t_.emplace_hint(r.t_.end(), m, std::move(d));
    }
    return r;
  }

 private:
  Map t_;
};

/// num/den with den != 0. Fractions are not reduced to lowest terms; after
/// every operation the denominator is shifted to have no monomial factor and
/// scaled to leading coefficient 1, and single-term denominators are folded
/// into the numerator. Equality is decided by cross-multiplication.
template <class C>
class RatFunc {
 public:
  using field_type = typename C::field_type;
  using Poly = LaurentPoly<C>;

  RatFunc() = default;
  RatFunc(const field_type& f, size_t nvars) : field_(&f), nvars_(nvars), den_(one_poly(f)) {}

  static RatFunc constant(const field_type& f, size_t nvars, const C& c) {
    RatFunc r(f, nvars);
    r.num_ = Poly::term(c, Monomial{});
    return r;
  }
  static RatFunc from_int(const field_type& f, size_t nvars, long v) {
    return constant(f, nvars, C::from_int(f, v));
  }
  static RatFunc monomial(const field_type& f, size_t nvars, const C& c, const Monomial& m) {
    check_vars(m, nvars);
    RatFunc r(f, nvars);
    r.num_ = Poly::term(c, m);
    return r;
  }
  static RatFunc variable(const field_type& f, size_t nvars, uint32_t v) {
    return monomial(f, nvars, C::one(f), Monomial::var(v));
  }
  static RatFunc fraction(const field_type& f, size_t nvars, Poly num, Poly den) {
    RatFunc r(f, nvars);
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize();
    return r;
  }

  const field_type& field() const { return *field_; }
  size_t nvars() const { return nvars_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_constant_one(); }
  bool is_constant() const {
    return is_laurent() && (num_.is_zero() || (num_.size() == 1 && num_.terms().begin()->first.is_one()));
  }
  /// c * monomial, when the function is a single Laurent term.
  std::optional<std::pair<C, Monomial>> as_term() const {
    if (!is_laurent()) return std::nullopt;
    return num_.as_term();
  }
  bool uses_var(uint32_t v) const { return num_.uses_var(v) || den_.uses_var(v); }

  RatFunc operator+(const RatFunc& o) const {
    check_compatible(o);
    if (den_ == o.den_) return fraction(*field_, nvars_, num_ + o.num_, den_);
    if (o.is_laurent()) return fraction(*field_, nvars_, num_ + o.num_ * den_, den_);
    if (is_laurent()) return fraction(*field_, nvars_, num_ * o.den_ + o.num_, o.den_);
    return fraction(*field_, nvars_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -num_;
    return r;
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    check_compatible(o);
    return fraction(*field_, nvars_, num_ * o.num_, den_ * o.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    check_compatible(o);
    if (o.is_zero()) throw AlgebraError("division by zero rational function");
    return fraction(*field_, nvars_, num_ * o.den_, den_ * o.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const {
    if (is_zero()) throw AlgebraError("inverse of zero rational function");
    return fraction(*field_, nvars_, den_, num_);
  }
  RatFunc pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    const C one = C::one(*field_);
    return fraction(*field_, nvars_, num_.pow(e, one), den_.pow(e, one));
  }

  template <class F>
  RatFunc map_coefficients(F&& fn) const {
    return fraction(*field_, nvars_, num_.map_coefficients(fn), den_.map_coefficients(fn));
  }

  /// Re-home the expression in a space with more variables (indices kept).
  RatFunc widened(size_t nvars) const {
    if (nvars < nvars_) throw AlgebraError("widened: cannot shrink variable space");
    RatFunc r = *this;
    r.nvars_ = nvars;
    return r;
  }

 private:
  const field_type* field_ = nullptr;
  size_t nvars_ = 0;
  Poly num_;
  Poly den_;

  static Poly one_poly(const field_type& f) { return Poly::term(C::one(f), Monomial{}); }

  static void check_vars(const Monomial& m, size_t nvars) {
    if (!m.is_one() && m.max_var() >= nvars) throw AlgebraError("monomial refers to a variable outside the space");
  }

  void check_compatible(const RatFunc& o) const {
    if (field_ != o.field_) throw AlgebraError("rational functions over different coefficient fields");
    if (nvars_ != o.nvars_) throw AlgebraError("rational functions over different variable spaces");
  }

  void normalize() {
    if (den_.is_zero()) throw AlgebraError("zero denominator");
    if (num_.is_zero()) {
      den_ = one_poly(*field_);
      return;
    }
    if (auto t = den_.as_term()) {
      num_ = num_.scaled(t->first.inverse(), t->second.inverse());
      den_ = one_poly(*field_);
      return;
    }
    Monomial shift = den_.min_monomial();
    if (!shift.is_one()) {
      const C one = C::one(*field_);
      Monomial inv = shift.inverse();
      num_ = num_.scaled(one, inv);
      den_ = den_.scaled(one, inv);
    }
    const C& lc = den_.leading_coefficient();
    if (!lc.is_one()) {
      C inv = lc.inverse();
      num_ = num_.scaled(inv, Monomial{});
      den_ = den_.scaled(inv, Monomial{});
    }
  }
};

/// Exact equality as rational functions: num_f*den_g - num_g*den_f == 0.
template <class C>
bool equals(const RatFunc<C>& f, const RatFunc<C>& g) {
  if (f.nvars() != g.nvars()) throw AlgebraError("equals: different variable spaces");
  if (f.den() == g.den()) return f.num() == g.num();
  return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

/// The difference f - g (for failure reports).
template <class C>
RatFunc<C> difference(const RatFunc<C>& f, const RatFunc<C>& g) {
  return f - g;
}

namespace detail {

template <class C>
struct SubstPlan {
  bool used = false;
  bool mono = false;  // image is c * monomial
  C coeff;
  Monomial mono_part;
  LaurentPoly<C> num, den;
  bool den_trivial = true;
  long long max_pos = 0, max_neg = 0;
  std::map<long long, LaurentPoly<C>> num_pows, den_pows;

  const LaurentPoly<C>& num_pow(long long e, const C& one) {
    auto it = num_pows.find(e);
    if (it != num_pows.end()) return it->second;
    return num_pows.emplace(e, num.pow(e, one)).first->second;
  }
  const LaurentPoly<C>& den_pow(long long e, const C& one) {
    auto it = den_pows.find(e);
    if (it != den_pows.end()) return it->second;
    return den_pows.emplace(e, den.pow(e, one)).first->second;
  }
};

template <class C>
C coeff_pow(const C& c, long long e, const C& one) {
  if (e < 0) return coeff_pow(c.inverse(), -e, one);
  C acc = one, base = c;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

template <class C>
RatFunc<C> substitute_poly(const LaurentPoly<C>& P, const std::vector<RatFunc<C>>& images,
                           const typename C::field_type& field, size_t target_nvars) {
  using Poly = LaurentPoly<C>;
  if (P.is_zero()) return RatFunc<C>(field, target_nvars);
  const C one = C::one(field);
  std::vector<SubstPlan<C>> plan(images.size());
  bool all_mono = true;
  for (const auto& [mono, c] : P.terms()) {
    for (const auto& [v, e] : mono.entries()) {
      if (v >= images.size()) throw AlgebraError("substitute: no image for variable index " + std::to_string(v));
      auto& pl = plan[v];
      if (!pl.used) {
        pl.used = true;
        const RatFunc<C>& img = images[v];
        if (img.nvars() != target_nvars) throw AlgebraError("substitute: image lives in a different space");
        if (auto t = img.as_term()) {
          pl.mono = true;
          pl.coeff = t->first;
          pl.mono_part = t->second;
        } else {
          all_mono = false;
          pl.num = img.num();
          pl.den = img.den();
          pl.den_trivial = img.is_laurent();
          if (auto nt = pl.num.as_term()) {
            pl.mono = false;
            pl.coeff = nt->first;
            pl.mono_part = nt->second;
          }
        }
      }
      if (e < 0 && images[v].is_zero()) throw AlgebraError("substitute: zero image raised to a negative power");
      pl.max_pos = std::max(pl.max_pos, e);
      pl.max_neg = std::max(pl.max_neg, -e);
    }
  }
  if (all_mono) {
    Poly out;
    for (const auto& [mono, c] : P.terms()) {
      C cc = c;
      Monomial mm;
      bool zero = false;
      for (const auto& [v, e] : mono.entries()) {
        auto& pl = plan[v];
        if (pl.coeff.is_zero()) {
          zero = true;
          break;
        }
        cc = cc * coeff_pow(pl.coeff, e, one);
        mm = mm * pl.mono_part.pow(e);
      }
      if (!zero) out.add_term(mm, cc);
    }
    return RatFunc<C>::fraction(field, target_nvars, std::move(out), Poly::term(one, Monomial{}));
  }
  // common denominator: prod_v den_v^{max_pos} * num_v^{max_neg} (non-monomial parts only)
  Poly common = Poly::term(one, Monomial{});
  for (auto& pl : plan) {
    if (!pl.used || pl.mono) continue;
    if (!pl.den_trivial && pl.max_pos > 0) common = common * pl.den_pow(pl.max_pos, one);
    const bool num_mono = pl.num.as_term().has_value();
    if (!num_mono && pl.max_neg > 0) common = common * pl.num_pow(pl.max_neg, one);
  }
  Poly numerator;
  for (const auto& [mono, c] : P.terms()) {
    Poly term = Poly::term(c, Monomial{});
    C scal = one;
    Monomial mm;
    for (uint32_t v = 0; v < plan.size(); ++v) {
      auto& pl = plan[v];
      if (!pl.used) continue;
      const long long e = mono.exponent(v);
      if (pl.mono) {
        if (e != 0) {
          scal = scal * coeff_pow(pl.coeff, e, one);
          mm = mm * pl.mono_part.pow(e);
        }
        continue;
      }
      const bool num_mono = pl.num.as_term().has_value();
      if (e >= 0) {
        if (num_mono) {
          if (e) {
            scal = scal * coeff_pow(pl.coeff, e, one);
            mm = mm * pl.mono_part.pow(e);
          }
        } else {
          if (e) term = term * pl.num_pow(e, one);
          if (pl.max_neg > 0) term = term * pl.num_pow(pl.max_neg, one);
        }
        if (!pl.den_trivial && pl.max_pos - e > 0) term = term * pl.den_pow(pl.max_pos - e, one);
      } else {
        const long long a = -e;
        if (!pl.den_trivial) term = term * pl.den_pow(pl.max_pos + a, one);
        else term = term * pl.den_pow(a, one);
        if (num_mono) {
          scal = scal * coeff_pow(pl.coeff, e, one);
          mm = mm * pl.mono_part.pow(e);
        } else if (pl.max_neg - a > 0) {
          term = term * pl.num_pow(pl.max_neg - a, one);
        }
      }
    }
    numerator = numerator + term.scaled(scal, mm);
  }
  return RatFunc<C>::fraction(field, target_nvars, std::move(numerator), std::move(common));
}

}  // namespace detail

/// Simultaneous substitution of images[v] for variable v.
template <class C>
RatFunc<C> substitute(const RatFunc<C>& f, const std::vector<RatFunc<C>>& images) {
  if (images.size() != f.nvars())
    throw AlgebraError("substitute: expected " + std::to_string(f.nvars()) + " images, got " +
                       std::to_string(images.size()));
  if (images.empty()) return f;
  const size_t target = images.front().nvars();
  auto num = detail::substitute_poly(f.num(), images, f.field(), target);
  auto den = detail::substitute_poly(f.den(), images, f.field(), target);
  if (den.is_zero()) throw AlgebraError("substitute: denominator vanishes after substitution");
  return num / den;
}

/// Identity images for every variable of an nvars-space.
template <class C>
std::vector<RatFunc<C>> identity_images(const typename C::field_type& f, size_t nvars) {
  std::vector<RatFunc<C>> out;
  out.reserve(nvars);
  for (size_t v = 0; v < nvars; ++v) out.push_back(RatFunc<C>::variable(f, nvars, static_cast<uint32_t>(v)));
  return out;
}

std::string format_monomial(const Monomial& m, const VarSpace& space);

template <class C>
std::string format_coefficient(const C& c) {
  std::string s = to_string(c);
  if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos ||
      (s.find('*') != std::string::npos))
    return "(" + s + ")";
  return s;
}

template <class C>
std::string to_string(const LaurentPoly<C>& p, const VarSpace& space) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = format_coefficient(c);
    std::string ms = format_monomial(m, space);
    std::string t;
    if (ms.empty()) t = cs;
    else if (cs == "1") t = ms;
    else if (cs == "-1") t = "-" + ms;
    else t = cs + "*" + ms;
    if (!first) out += (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
    else out += t;
    first = false;
  }
  return out;
}

template <class C>
std::string to_string(const RatFunc<C>& f, const VarSpace& space) {
  std::string n = to_string(f.num(), space);
  if (f.is_laurent()) return n;
  return "(" + n + ")/(" + to_string(f.den(), space) + ")";
}

}  // namespace noether

#endif
