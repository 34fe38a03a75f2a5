#ifndef NOETHER_ORACLE_HPP
#define NOETHER_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "noether/common.hpp"
#include "noether/cyclotomic.hpp"
#include "noether/ratfield.hpp"

namespace noether {

inline constexpr uint64_t kDefaultMinQ = (1ULL << 20) + 1;
inline constexpr int kDefaultTrials = 100;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t q);
uint64_t invmod(uint64_t a, uint64_t q);  // throws AlgebraError for a == 0 mod q
/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// F_q with a distinguished element omega of exact multiplicative order m.
struct PrimeField {
  uint64_t q = 2;
  uint64_t omega = 1;
  int m = 1;
  std::vector<uint64_t> omega_pows;  // omega^k, 0 <= k < m

  uint64_t reduce(const Rational& r) const;
  /// Image of a cyclotomic element under zeta -> omega^a.
  uint64_t image(const CycElem& e, long a = 1) const;
};

/// Smallest prime q >= min_q with q == 1 mod m, with omega found by raising
/// g = 1, 2, 3, ... to (q-1)/m until the order is exactly m.
PrimeField find_prime_with_root(int m, uint64_t min_q = kDefaultMinQ);

/// Element of a prime field; usable as a RatFunc coefficient type.
class ModElem {
 public:
  using field_type = PrimeField;

  ModElem() = default;
  ModElem(const PrimeField& f, uint64_t v) : f_(&f), v_(v % f.q) {}
  static ModElem zero(const PrimeField& f) { return {f, 0}; }
  static ModElem one(const PrimeField& f) { return {f, 1}; }
  static ModElem from_int(const PrimeField& f, long v);

  uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModElem operator+(const ModElem& o) const { return {*f_, v_ + o.v_ >= f_->q ? v_ + o.v_ - f_->q : v_ + o.v_}; }
  ModElem operator-() const { return {*f_, v_ ? f_->q - v_ : 0}; }
  ModElem operator-(const ModElem& o) const { return *this + (-o); }
  ModElem operator*(const ModElem& o) const { return {*f_, mulmod(v_, o.v_, f_->q)}; }
  ModElem operator/(const ModElem& o) const { return *this * o.inverse(); }
  ModElem& operator+=(const ModElem& o) { return *this = *this + o; }
  ModElem& operator*=(const ModElem& o) { return *this = *this * o; }
  bool operator==(const ModElem& o) const { return v_ == o.v_; }
  ModElem inverse() const { return {*f_, invmod(v_, f_->q)}; }

 private:
  const PrimeField* f_ = nullptr;
  uint64_t v_ = 0;
};

std::string to_string(const ModElem& e);

/// Value of f at a point of F_q^{nvars} after applying zeta -> omega^a to
/// the coefficients; nullopt when the denominator vanishes there.
std::optional<uint64_t> evaluate(const RatFunc<CycElem>& f, const std::vector<uint64_t>& point,
                                 const PrimeField& field, long galois = 1);
/// Same for a Laurent polynomial (always defined at points with nonzero coordinates).
uint64_t evaluate(const LaurentPoly<CycElem>& p, const std::vector<uint64_t>& point, const PrimeField& field,
                  long galois = 1);

/// A RatFunc with coefficients already mapped into F_q, for repeated evaluation.
class CompiledRatFunc {
 public:
  CompiledRatFunc(const RatFunc<CycElem>& f, const PrimeField& field, long galois = 1);
  std::optional<uint64_t> operator()(const std::vector<uint64_t>& point) const;

 private:
  struct Term {
    uint64_t c;
    std::vector<Monomial::Entry> e;
  };
  const PrimeField* field_;
  std::vector<Term> num_, den_;
  bool den_one_;
  std::optional<uint64_t> eval(const std::vector<Term>& terms, const std::vector<uint64_t>& point,
                std::vector<uint64_t>& inv_cache) const;
};

/// 64-bit FNV-1a of "script|step"; the per-step deterministic seed.
uint64_t step_seed(const std::string& script, const std::string& step);

struct OracleConfig {
  bool enabled = true;
  int trials = kDefaultTrials;
  uint64_t min_q = kDefaultMinQ;
  bool fresh_seed = false;
};

struct OracleResult {
  bool ok = true;
  int agree = 0;
  int trials = 0;
  uint64_t q = 0;
  double per_trial_error = 0;  // degree bound / q
  std::string detail;
};

/// A pair of scalar-valued functions of a point; nullopt = undefined there.
using PointFn = std::function<std::optional<uint64_t>(const std::vector<uint64_t>&)>;

/// Evaluates lhs and rhs at `trials` uniformly random points of (F_q^*)^dim,
/// resampling where either side is undefined. Any disagreement is a
/// definitive refutation.
OracleResult sample_points(const PointFn& lhs, const PointFn& rhs, size_t dim, const PrimeField& field,
                           int trials, std::mt19937_64& rng, long degree_bound = 0);

OracleResult sample_check(const RatFunc<CycElem>& lhs, const RatFunc<CycElem>& rhs, const PrimeField& field,
                          int trials, uint64_t seed = 0);

/// Crude total-degree bound (sum of |exponents| over num and den).
long degree_bound(const RatFunc<CycElem>& f);

}  // namespace noether

#endif
