#include "noether/oracle.hpp"

#include <sstream>

namespace noether {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t q) {
  uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t q) {
  a %= q;
  if (a == 0) throw AlgebraError("invmod: zero has no inverse");
  return powmod(a, q - 2, q);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

uint64_t PrimeField::reduce(const Rational& r) const {
  Integer qq(std::to_string(q));
  Integer num = r.get_num() % qq, den = r.get_den() % qq;
  if (num < 0) num += qq;
  if (den == 0) throw AlgebraError("rational coefficient has denominator divisible by q = " + std::to_string(q));
  return mulmod(std::stoull(num.get_str()), invmod(std::stoull(den.get_str()), q), q);
}

uint64_t PrimeField::image(const CycElem& e, long a) const {
  if (m % e.field().order() != 0) throw AlgebraError("oracle field does not contain the needed roots of unity");
  const long scale = m / e.field().order();
  uint64_t acc = 0;
  const auto& c = e.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const long k = static_cast<long>(mod_floor(static_cast<long long>(i) * a * scale, m));
    acc = (acc + mulmod(reduce(c[i]), omega_pows[k], q)) % q;
  }
  return acc;
}

PrimeField find_prime_with_root(int m, uint64_t min_q) {
  if (m < 1) throw AlgebraError("find_prime_with_root: m must be positive");
  const uint64_t mm = static_cast<uint64_t>(m);
  uint64_t q = std::max<uint64_t>(min_q, 2);
  q += (mm + 1 - q % mm) % mm;  // q == 1 mod m
  if (q < min_q) q += mm;
  for (int steps = 0; steps < 10000000; ++steps, q += mm) {
    if (!is_prime_u64(q)) continue;
    std::vector<uint64_t> primes;
    for (uint64_t t = mm, d = 2; t > 1; ++d)
      if (t % d == 0) {
        primes.push_back(d);
        while (t % d == 0) t /= d;
      }
    for (uint64_t g = 1; g < q; ++g) {
      uint64_t w = powmod(g, (q - 1) / mm, q);
      if (powmod(w, mm, q) != 1) continue;
      bool exact = true;
      for (uint64_t l : primes)
        if (powmod(w, mm / l, q) == 1) exact = false;
      if (!exact) continue;
      PrimeField f;
      f.q = q;
      f.omega = w;
      f.m = m;
      f.omega_pows.resize(m);
      uint64_t cur = 1;
      for (int k = 0; k < m; ++k) {
        f.omega_pows[k] = cur;
        cur = mulmod(cur, w, q);
      }
      return f;
    }
  }
  throw AlgebraError("find_prime_with_root: search cap exceeded");
}

ModElem ModElem::from_int(const PrimeField& f, long v) {
  long long r = mod_floor(v, static_cast<long long>(f.q));
  return {f, static_cast<uint64_t>(r)};
}

std::string to_string(const ModElem& e) { return std::to_string(e.value()); }

CompiledRatFunc::CompiledRatFunc(const RatFunc<CycElem>& f, const PrimeField& field, long galois)
    : field_(&field), den_one_(f.is_laurent()) {
  auto compile = [&](const LaurentPoly<CycElem>& p, std::vector<Term>& out) {
    for (const auto& [mono, c] : p.terms()) {
      uint64_t v = field.image(c, galois);
      if (v) out.push_back({v, mono.entries()});
    }
  };
  compile(f.num(), num_);
  if (!den_one_) compile(f.den(), den_);
}

std::optional<uint64_t> CompiledRatFunc::eval(const std::vector<Term>& terms, const std::vector<uint64_t>& point,
                                              std::vector<uint64_t>& inv_cache) const {
  const uint64_t q = field_->q;
  uint64_t acc = 0;
  for (const auto& t : terms) {
    uint64_t v = t.c;
    for (const auto& [var, e] : t.e) {
      if (var >= point.size()) throw AlgebraError("evaluation point has too few coordinates");
      uint64_t base = point[var] % q;
      if (e < 0) {
        if (base == 0) return std::nullopt;
        if (inv_cache[var] == 0) inv_cache[var] = invmod(base, q);
        base = inv_cache[var];
      }
      v = mulmod(v, powmod(base, static_cast<uint64_t>(e < 0 ? -e : e), q), q);
    }
    acc += v;
    if (acc >= q) acc -= q;
  }
  return acc;
}

std::optional<uint64_t> CompiledRatFunc::operator()(const std::vector<uint64_t>& point) const {
  std::vector<uint64_t> inv(point.size(), 0);
  auto n = eval(num_, point, inv);
  if (!n) return std::nullopt;
  if (den_one_) return n;
  auto d = eval(den_, point, inv);
  if (!d || *d == 0) return std::nullopt;
  return mulmod(*n, invmod(*d, field_->q), field_->q);
}

std::optional<uint64_t> evaluate(const RatFunc<CycElem>& f, const std::vector<uint64_t>& point,
                                 const PrimeField& field, long galois) {
  return CompiledRatFunc(f, field, galois)(point);
}

uint64_t evaluate(const LaurentPoly<CycElem>& p, const std::vector<uint64_t>& point, const PrimeField& field,
                  long galois) {
  const CycField& K = p.is_zero() ? CycField::get(1) : p.terms().begin()->second.field();
  auto f = RatFunc<CycElem>::fraction(K, point.size(), p, LaurentPoly<CycElem>::term(K.one(), Monomial{}));
  auto r = evaluate(f, point, field, galois);
  if (!r) throw AlgebraError("Laurent polynomial undefined at a point with a zero coordinate");
  return *r;
}

uint64_t step_seed(const std::string& script, const std::string& step) {
  uint64_t h = 1469598103934665603ULL;
  for (char c : script + "|" + step) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

OracleResult sample_points(const PointFn& lhs, const PointFn& rhs, size_t dim, const PrimeField& field,
                           int trials, std::mt19937_64& rng, long degree) {
  OracleResult r;
  r.q = field.q;
  r.per_trial_error = static_cast<double>(degree) / static_cast<double>(field.q);
  std::uniform_int_distribution<uint64_t> dist(1, field.q - 1);
  const int max_draws = std::max(1000, trials * 20);
  int draws = 0;
  std::vector<uint64_t> pt(dim);
  while (r.trials < trials) {
    if (++draws > max_draws) {
      r.ok = false;
      r.detail = "could not find points avoiding denominators after " + std::to_string(max_draws) + " draws";
      return r;
    }
    for (auto& x : pt) x = dist(rng);
    auto a = lhs(pt);
    if (!a) continue;
    auto b = rhs(pt);
    if (!b) continue;
    ++r.trials;
    if (*a != *b) {
      r.ok = false;
      std::ostringstream os;
      os << "oracle refutation over F_" << field.q << " at trial " << r.trials << ": " << *a << " != " << *b;
      r.detail = os.str();
      return r;
    }
    ++r.agree;
  }
  std::ostringstream os;
  os << r.agree << "/" << r.trials << " agree over F_" << field.q;
  r.detail = os.str();
  return r;
}

long degree_bound(const RatFunc<CycElem>& f) {
  long d = 0;
  for (const auto* p : {&f.num(), &f.den()}) {
    long best = 0;
    for (const auto& [mono, c] : p->terms()) best = std::max<long>(best, mono.total_degree());
    d += best;
  }
  return d;
}

OracleResult sample_check(const RatFunc<CycElem>& lhs, const RatFunc<CycElem>& rhs, const PrimeField& field,
                          int trials, uint64_t seed) {
  if (lhs.nvars() != rhs.nvars()) throw AlgebraError("sample_check: different variable spaces");
  CompiledRatFunc L(lhs, field), R(rhs, field);
  std::mt19937_64 rng(seed);
  return sample_points(std::cref(L), std::cref(R), lhs.nvars(), field, trials, rng,
                       degree_bound(lhs) + degree_bound(rhs));
}

}  // namespace noether
