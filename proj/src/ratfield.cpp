#include "noether/ratfield.hpp"

namespace noether {

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], i).second) throw AlgebraError("duplicate variable name '" + names_[i] + "'");
  }
}

std::optional<size_t> VarSpace::find(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

size_t VarSpace::index(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) throw AlgebraError("undefined variable '" + name + "'");
  return it->second;
}

SpacePtr make_space(std::vector<std::string> names) { return std::make_shared<const VarSpace>(std::move(names)); }

Monomial Monomial::var(uint32_t v, long long e) {
  Monomial m;
  if (e != 0) m.e_.emplace_back(v, e);
  return m;
}

Monomial Monomial::from_dense(const std::vector<long long>& exps) {
  Monomial m;
  for (size_t v = 0; v < exps.size(); ++v)
    if (exps[v] != 0) m.e_.emplace_back(static_cast<uint32_t>(v), exps[v]);
  return m;
}

long long Monomial::exponent(uint32_t v) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), v, [](const Entry& a, uint32_t b) { return a.first < b; });
  return (it != e_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.e_.empty()) return *this;
  if (e_.empty()) return o;
  Monomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
      r.e_.push_back(e_[i++]);
    } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
      r.e_.push_back(o.e_[j++]);
    } else {
      long long s = checked_add(e_[i].second, o.e_[j].second);
      if (s != 0) r.e_.emplace_back(e_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& [v, e] : r.e_) e = checked_mul(e, -1);
  return r;
}

Monomial Monomial::pow(long long k) const {
  if (k == 0) return {};
  Monomial r = *this;
  for (auto& [v, e] : r.e_) e = checked_mul(e, k);
  return r;
}

Monomial Monomial::min(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first)) {
      if (a.e_[i].second < 0) r.e_.push_back(a.e_[i]);
      ++i;
    } else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first) {
      if (b.e_[j].second < 0) r.e_.push_back(b.e_[j]);
      ++j;
    } else {
      long long m = std::min(a.e_[i].second, b.e_[j].second);
      if (m != 0) r.e_.emplace_back(a.e_[i].first, m);
      ++i;
      ++j;
    }
  }
  return r;
}

long long Monomial::total_degree() const {
  long long d = 0;
  for (const auto& [v, e] : e_) d = checked_add(d, e < 0 ? -e : e);
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    uint32_t v;
    if (i == e_.size()) v = o.e_[j].first;
    else if (j == o.e_.size()) v = e_[i].first;
    else v = std::min(e_[i].first, o.e_[j].first);
    long long a = (i < e_.size() && e_[i].first == v) ? e_[i++].second : 0;
    long long b = (j < o.e_.size() && o.e_[j].first == v) ? o.e_[j++].second : 0;
    if (a != b) return a < b;
  }
  return false;
}

std::string format_monomial(const Monomial& m, const VarSpace& space) {
  std::string out;
  for (const auto& [v, e] : m.entries()) {
    if (!out.empty()) out += "*";
    out += v < space.size() ? space.name(v) : "?" + std::to_string(v);
    if (e != 1) out += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return out;
}

}  // namespace noether
