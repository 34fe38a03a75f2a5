#ifndef NOETHER_CYCLOTOMIC_HPP
#define NOETHER_CYCLOTOMIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "noether/common.hpp"

namespace noether {

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int m);

class CycElem;

/// Q(zeta_m) presented as Q[x]/(Phi_m). Instances are interned: get(m)
/// always returns the same object, which lives for the whole process.
class CycField {
 public:
  static const CycField& get(int m);

  int order() const { return m_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const std::vector<Integer>& minpoly() const { return phi_; }

  CycElem zero() const;
  CycElem one() const;
  CycElem from_rational(const Rational& q) const;
  CycElem from_int(long v) const;
  /// zeta^k for any integer k (negative allowed).
  CycElem zeta(long k = 1) const;

  // Reduced coordinates of x^k, 0 <= k < m.
  const std::vector<Integer>& power(long k) const;

 private:
  explicit CycField(int m);
  int m_;
  std::vector<Integer> phi_;
  std::vector<std::vector<Integer>> powers_;
  friend class CycElem;
};

/// Element of Q(zeta_m) stored as coordinates on 1, zeta, ..., zeta^{phi(m)-1}.
class CycElem {
 public:
  using field_type = CycField;

  CycElem() = default;
  CycElem(const CycField& f, std::vector<Rational> coeffs);

  static CycElem zero(const CycField& f) { return f.zero(); }
  static CycElem one(const CycField& f) { return f.one(); }
  static CycElem from_int(const CycField& f, long v) { return f.from_int(v); }

  const CycField& field() const { return *field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in Q (all non-constant coordinates vanish).
  bool is_rational() const;
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  CycElem operator+(const CycElem& o) const;
  CycElem operator-(const CycElem& o) const;
  CycElem operator-() const;
  CycElem operator*(const CycElem& o) const;
  CycElem operator/(const CycElem& o) const { return *this * o.inverse(); }
  CycElem& operator+=(const CycElem& o) { return *this = *this + o; }
  CycElem& operator*=(const CycElem& o) { return *this = *this * o; }
  bool operator==(const CycElem& o) const;
  bool operator!=(const CycElem& o) const { return !(*this == o); }

  /// Multiplicative inverse via extended Euclid against Phi_m.
  CycElem inverse() const;
  CycElem pow(long e) const;

  std::string to_string() const;

 private:
  const CycField* field_ = nullptr;
  std::vector<Rational> c_;
  void trim();
};

std::string to_string(const CycElem& e);

/// The automorphism zeta -> zeta^a of Q(zeta_m).
class GaloisMap {
 public:
  GaloisMap(int m, long a);
  static GaloisMap identity(int m) { return GaloisMap(m, 1); }

  int modulus() const { return m_; }
  long exponent() const { return a_; }
  bool is_identity() const { return a_ == 1 % m_; }
  GaloisMap compose(const GaloisMap& inner) const;  // this o inner

 private:
  int m_;
  long a_;
};

CycElem galois_apply(const GaloisMap& g, const CycElem& e);

/// Multiplicative order when e is a root of unity, nullopt otherwise.
std::optional<long> root_order(const CycElem& e);

/// Exponent j in [0, m) with zeta^j == e, when e is a power of zeta.
std::optional<long> zeta_log(const CycElem& e);

/// Cyclotomic content of the lemma: in Q(zeta_{2^m}) the Galois map a
/// (a = -1 or -1 + 2^{m-1} mod 2^m) sends zeta_4 to zeta_4^{-1} != zeta_4.
Verdict verify_lemma_2_4(int m, long a);

}  // namespace noether

#endif
