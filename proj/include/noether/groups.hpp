#ifndef NOETHER_GROUPS_HPP
#define NOETHER_GROUPS_HPP

#include <map>
#include <string>
#include <vector>

#include "noether/common.hpp"

namespace noether {

/// The four families of non-abelian p-groups with a cyclic subgroup of
/// index p: modular, dihedral, quasi-dihedral and generalized quaternion.
enum class Family { M, D, SD, Q };

std::string family_name(Family f);
Family parse_family(const std::string& s);

inline constexpr long kEnumerationCap = 1L << 14;

/// <sigma, tau> with sigma of order p^{n-1} and tau^{-1} sigma tau = sigma^k.
struct GroupSpec {
  Family family;
  int p;
  int n;

  /// Validates family bounds (M: n >= 3; D, SD: p = 2, n >= 4; Q: p = 2, n >= 3).
  static GroupSpec make(Family family, int p, int n);

  long order() const;          // p^n
  long sigma_order() const;    // p^{n-1}
  long twist() const;          // k reduced modulo p^{n-1}
  long twist_inverse() const;  // k^{-1} modulo p^{n-1}
  /// p for M, D, SD; 4 for Q (tau^2 = sigma^{2^{n-2}}).
  int tau_order() const { return family == Family::Q ? 4 : p; }
  /// Range of j in the normal form sigma^i tau^j.
  int tau_span() const { return family == Family::Q ? 2 : p; }
  /// epsilon = -1 for Q, +1 otherwise (sign of tau^2 on the sigma-eigenvector).
  int epsilon() const { return family == Family::Q ? -1 : 1; }

  std::string name() const;  // e.g. "Q(16)"
  bool operator==(const GroupSpec&) const = default;
};

/// Normal form sigma^i tau^j with 0 <= i < p^{n-1}, 0 <= j < tau_span().
struct GroupElement {
  long i = 0;
  int j = 0;
  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

GroupElement identity_element();
GroupElement sigma_element();
GroupElement tau_element();

GroupElement multiply(const GroupElement& g, const GroupElement& h, const GroupSpec& spec);
GroupElement power(const GroupElement& g, long e, const GroupSpec& spec);
GroupElement inverse(const GroupElement& g, const GroupSpec& spec);
long element_order(const GroupElement& g, const GroupSpec& spec);

/// Dense index in [0, |G|) used for the regular representation.
long element_index(const GroupElement& g, const GroupSpec& spec);
GroupElement element_at(long index, const GroupSpec& spec);
std::string element_name(const GroupElement& g);

/// All elements in index order; throws ParameterError above the cap.
std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, long cap = kEnumerationCap);

long group_exponent(const GroupSpec& spec, long cap = kEnumerationCap);
std::map<long, long> order_histogram(const GroupSpec& spec, long cap = kEnumerationCap);

/// Checks the defining relations, closure, associativity and index of <sigma>.
/// Associativity is checked on the full table up to 256 elements and on a
/// deterministic sample of triples above that.
Verdict verify_presentation(const GroupSpec& spec);

}  // namespace noether

#endif
