#include "noether/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace noether {

namespace {

using IPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

void strip(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
void strip(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IPoly mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic divisor; throws if a remainder is left.
IPoly exact_div(IPoly num, const IPoly& den) {
  const size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw AlgebraError("cyclotomic: inexact division");
  IPoly q(num.size() - dn, 0);
  for (size_t k = num.size(); k-- > dn;) {
    Integer t = num[k];
    q[k - dn] = t;
    if (t == 0) continue;
    for (size_t i = 0; i <= dn; ++i) num[k - dn + i] -= t * den[i];
  }
  strip(num);
  if (!num.empty()) throw AlgebraError("cyclotomic: inexact division");
  return q;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, IPoly>& phi_cache() {
  static std::map<int, IPoly> c;
  return c;
}

IPoly phi_locked(int m) {
  auto& cache = phi_cache();
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  IPoly den{1};
  for (int d = 1; d < m; ++d)
    if (m % d == 0) den = mul(den, phi_locked(d));
  IPoly res = exact_div(num, den);
  cache.emplace(m, res);
  return res;
}

QPoly qpoly_divmod(QPoly a, const QPoly& b, QPoly* rem) {
  const size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    if (rem) *rem = a;
    return {};
  }
  QPoly q(a.size() - db, 0);
  Rational lc_inv = 1 / b.back();
  for (size_t k = a.size(); k-- > db;) {
    if (a[k] == 0) continue;
    Rational t = a[k] * lc_inv;
    q[k - db] = t;
    for (size_t i = 0; i <= db; ++i) a[k - db + i] -= t * b[i];
  }
  strip(a);
  if (rem) *rem = a;
  strip(q);
  return q;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  strip(r);
  return r;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  strip(r);
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be >= 1");
  std::lock_guard<std::mutex> lock(registry_mutex());
  return phi_locked(m);
}

// ---------------------------------------------------------------- CycField

CycField::CycField(int m) : m_(m), phi_(cyclotomic_polynomial(m)) {
  const int deg = degree();
  powers_.reserve(m);
  IPoly cur(deg, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    powers_.push_back(cur);
    // multiply by x and fold x^deg = -sum phi_i x^i
    Integer top = cur[deg - 1];
    for (int i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < deg; ++i) cur[i] -= top * phi_[i];
  }
}

const CycField& CycField::get(int m) {
  if (m < 1) throw std::invalid_argument("CycField: order must be >= 1");
  static std::map<int, std::unique_ptr<CycField>> fields;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = fields.find(m); it != fields.end()) return *it->second;
  }
  auto f = std::unique_ptr<CycField>(new CycField(m));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = fields.emplace(m, std::move(f));
  return *it->second;
}

const std::vector<Integer>& CycField::power(long k) const { return powers_[mod_floor(k, m_)]; }

CycElem CycField::zero() const { return CycElem(*this, std::vector<Rational>(degree(), 0)); }

CycElem CycField::one() const { return from_int(1); }

CycElem CycField::from_rational(const Rational& q) const {
  std::vector<Rational> c(degree(), 0);
  c[0] = q;
  return CycElem(*this, std::move(c));
}

CycElem CycField::from_int(long v) const { return from_rational(Rational(v)); }

CycElem CycField::zeta(long k) const {
  const auto& p = power(k);
  std::vector<Rational> c(p.begin(), p.end());
  return CycElem(*this, std::move(c));
}

// ---------------------------------------------------------------- CycElem

CycElem::CycElem(const CycField& f, std::vector<Rational> coeffs) : field_(&f), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) > f.degree()) {
    // reduce an over-long coefficient vector modulo Phi_m
    std::vector<Rational> r(f.degree(), 0);
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& pk = f.power(static_cast<long>(k));
      for (int i = 0; i < f.degree(); ++i)
        if (pk[i] != 0) r[i] += c_[k] * pk[i];
    }
    c_ = std::move(r);
  }
  c_.resize(f.degree(), 0);
  for (auto& q : c_) q.canonicalize();
}

bool CycElem::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

CycElem CycElem::operator+(const CycElem& o) const {
  CycElem r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycElem CycElem::operator-(const CycElem& o) const {
  CycElem r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycElem CycElem::operator-() const {
  CycElem r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycElem CycElem::operator*(const CycElem& o) const {
  if (field_ != o.field_) throw AlgebraError("CycElem: mixing different cyclotomic fields");
  const int deg = field_->degree();
  if (deg == 1) return CycElem(*field_, {c_[0] * o.c_[0]});
  if (is_rational() || o.is_rational()) {
    const Rational& s = is_rational() ? c_[0] : o.c_[0];
    const CycElem& v = is_rational() ? o : *this;
    CycElem r = v;
    for (auto& q : r.c_) q *= s;
    return r;
  }
  std::vector<Rational> prod(2 * deg - 1, 0);
  for (int i = 0; i < deg; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < deg; ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  const auto& phi = field_->phi_;
  for (int k = 2 * deg - 2; k >= deg; --k) {
    if (prod[k] == 0) continue;
    Rational t = prod[k];
    for (int i = 0; i < deg; ++i)
      if (phi[i] != 0) prod[k - deg + i] -= t * phi[i];
    prod[k] = 0;
  }
  prod.resize(deg);
  CycElem r;
  r.field_ = field_;
  r.c_ = std::move(prod);
  return r;
}

bool CycElem::operator==(const CycElem& o) const { return field_ == o.field_ && c_ == o.c_; }

CycElem CycElem::inverse() const {
  if (is_zero()) throw AlgebraError("CycElem: inverse of zero");
  if (is_rational()) return field_->from_rational(1 / c_[0]);
  // extended Euclid: track s with s*e == r (mod Phi)
  QPoly phi(field_->phi_.begin(), field_->phi_.end());
  QPoly a = c_;
  strip(a);
  QPoly r0 = phi, r1 = a;
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly rem;
    QPoly q = qpoly_divmod(r0, r1, &rem);
    QPoly s2 = qpoly_sub(s0, qpoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw AlgebraError("CycElem: element not invertible (Phi_m reducible?)");
  Rational scale = 1 / r1[0];
  for (auto& q : s1) q *= scale;
  return CycElem(*field_, std::move(s1));
}

CycElem CycElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycElem base = *this, acc = field_->one();
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

std::string CycElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "zeta";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string to_string(const CycElem& e) { return e.to_string(); }

// ---------------------------------------------------------------- Galois

GaloisMap::GaloisMap(int m, long a) : m_(m), a_(mod_floor(a, m)) {
  if (m < 1) throw std::invalid_argument("GaloisMap: modulus must be >= 1");
  if (gcd_ll(a_, m) != 1 && m > 1)
    throw AlgebraError("GaloisMap: exponent " + std::to_string(a) + " is not a unit modulo " +
                       std::to_string(m));
}

GaloisMap GaloisMap::compose(const GaloisMap& inner) const {
  if (inner.m_ != m_) throw AlgebraError("GaloisMap: modulus mismatch");
  return GaloisMap(m_, checked_mul(a_, inner.a_) % m_);
}

CycElem galois_apply(const GaloisMap& g, const CycElem& e) {
  const CycField& f = e.field();
  if (g.modulus() != f.order()) throw AlgebraError("galois_apply: modulus mismatch");
  if (g.is_identity() || e.is_rational()) return e;
  std::vector<Rational> r(f.degree(), 0);
  const auto& c = e.coeffs();
  for (int i = 0; i < f.degree(); ++i) {
    if (c[i] == 0) continue;
    const auto& pw = f.power(g.exponent() * i);
    for (int k = 0; k < f.degree(); ++k)
      if (pw[k] != 0) r[k] += c[i] * pw[k];
  }
  return CycElem(f, std::move(r));
}

std::optional<long> root_order(const CycElem& e) {
  if (e.is_zero()) return std::nullopt;
  const long m = e.field().order();
  // roots of unity in Q(zeta_m) have order dividing lcm(2, m)
  const long L = std::lcm(2L, m);
  if (!e.pow(L).is_one()) return std::nullopt;
  for (long d : divisors(L))
    if (e.pow(d).is_one()) return d;
  return L;
}

std::optional<long> zeta_log(const CycElem& e) {
  const CycField& f = e.field();
  for (long j = 0; j < f.order(); ++j) {
    const auto& pw = f.power(j);
    bool same = true;
    for (int i = 0; i < f.degree() && same; ++i) same = (e.coeffs()[i] == pw[i]);
    if (same) return j;
  }
  return std::nullopt;
}

Verdict verify_lemma_2_4(int m, long a) {
  if (m < 3) throw ParameterError("verify_lemma_2_4: requires m >= 3");
  const long order = ipow(2, m);
  const long ar = mod_floor(a, order);
  const long case1 = order - 1;
  const long case2 = mod_floor(-1 + ipow(2, m - 1), order);
  if (ar != case1 && ar != case2)
    return Verdict::fail("a = " + std::to_string(a) + " is neither -1 nor -1+2^" + std::to_string(m - 1) +
                         " modulo 2^" + std::to_string(m));
  const CycField& f = CycField::get(static_cast<int>(order));
  GaloisMap g(static_cast<int>(order), ar);
  const CycElem z = f.zeta();
  const CycElem expected_image = (ar == case1) ? f.zeta(-1) : -f.zeta(-1);
  if (galois_apply(g, z) != expected_image)
    return Verdict::fail("Galois map does not send zeta to the expected image");
  const CycElem z4 = f.zeta(ipow(2, m - 2));
  if (root_order(z4) != 4) return Verdict::fail("zeta^(2^(m-2)) is not a primitive 4th root of unity");
  const CycElem img = galois_apply(g, z4);
  if (img != z4.inverse()) return Verdict::fail("lambda(zeta_4) = " + img.to_string() + " != zeta_4^-1");
  if (img == z4) return Verdict::fail("lambda fixes zeta_4");
  std::string which = (ar == case1) ? "lambda(zeta) = zeta^-1" : "lambda(zeta) = -zeta^-1";
  return Verdict::pass("Q(zeta_" + std::to_string(order) + "), " + which + ": lambda(zeta_4) = zeta_4^-1 = " +
                       img.to_string() + " != zeta_4");
}

}  // namespace noether
