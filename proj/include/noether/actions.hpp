#ifndef NOETHER_ACTIONS_HPP
#define NOETHER_ACTIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noether/cyclotomic.hpp"
#include "noether/groups.hpp"
#include "noether/oracle.hpp"
#include "noether/ratfield.hpp"

namespace noether {

using RF = RatFunc<CycElem>;

/// Semilinear automorphism of K(zeta)(x_1..x_m): variable images plus a
/// Galois map on the coefficients.
class FieldAutomorphism {
 public:
  FieldAutomorphism(std::vector<RF> images, GaloisMap g);
  static FieldAutomorphism identity(const CycField& f, size_t nvars);

  size_t nvars() const { return images_.size(); }
  const std::vector<RF>& images() const { return images_; }
  const GaloisMap& galois() const { return g_; }

  RF apply(const RF& f) const;
  /// (this o inner)(f) = this(inner(f)).
  FieldAutomorphism compose(const FieldAutomorphism& inner) const;
  FieldAutomorphism pow(long k) const;

  /// Agreement on every variable and on zeta.
  bool operator==(const FieldAutomorphism& o) const;
  bool is_identity() const;

 private:
  std::vector<RF> images_;
  GaloisMap g_;
};

/// Generators of a G-action (plus the Galois generator lambda when present).
/// Element sigma^i tau^j acts as sigma^i o tau^j.
struct GroupAction {
  GroupSpec spec;
  FieldAutomorphism sigma;
  FieldAutomorphism tau;
  std::optional<FieldAutomorphism> lambda;

  FieldAutomorphism element(const GroupElement& g) const;
  /// Every element of G (and of G x <lambda> when lambda is set), named.
  std::vector<std::pair<std::string, FieldAutomorphism>> all_elements(long cap = kEnumerationCap) const;
};

/// Variables x(g), g in G, with g . x(h) = x(gh). When lambda_exponent is
/// set, lambda fixes every x(g) and sends zeta to zeta^a.
std::pair<SpacePtr, GroupAction> regular_representation(const GroupSpec& spec, const CycField& field,
                                                        std::optional<long> lambda_exponent = std::nullopt);
std::string regular_var_name(const GroupElement& g);

/// sum_{0<=i<p^{n-2}} xi^{-i} sum_j x(sigma^{ip} tau^j), xi = zeta_{p^{n-2}}.
RF modular_eigenvector(const GroupSpec& spec, const CycField& field);
/// sum_{0<=i<2^{n-2}} xi^{-i} x(sigma^{2i}), xi = zeta_{2^{n-2}}.
RF dihedral_eigenvector(const GroupSpec& spec, const CycField& field);
/// sum_{0<=j<2^{n-1}} zeta^{-aj} x(sigma^j).
RF galois_eigenvector(const GroupSpec& spec, const CycField& field, long a);

Verdict check_claimed_action(const FieldAutomorphism& phi, const RF& subject, const RF& claimed,
                             const VarSpace* space = nullptr);

Verdict check_relations(const GroupAction& action);

/// Only the identity of G (or of G x <lambda>) fixes every subject and zeta.
Verdict check_faithful(const GroupAction& action, const std::vector<RF>& subjects,
                       const VarSpace* space = nullptr, long cap = kEnumerationCap);

struct AffineForm {
  std::vector<std::vector<RF>> A;  // rows: subset images, cols: subset variables
  std::vector<RF> B;
  Verdict verdict;
};

/// phi(x_s) = sum_t A_{st} x_t + B_s over L = K(remaining variables), and
/// phi(L) inside L. Invertibility of A is certified exactly for 1x1 and by
/// a nonzero determinant modulo q otherwise (a sound certificate).
AffineForm check_affine_form(const FieldAutomorphism& phi, const std::vector<uint32_t>& subset,
                             const PrimeField& field, const VarSpace* space = nullptr);

/// Hypotheses of the linear reduction on a regular representation: the
/// forms W are independent, the action restricted to K(zeta)(W) is faithful,
/// and in coordinates W + complement every generator is affine in the
/// complement with invertible A. w_images[g][i] is the image of W_i under
/// generator g (sigma, tau, then lambda), written in the W variables.
Verdict check_linear_reduction(const GroupAction& base, const std::vector<RF>& W,
                               const std::vector<std::vector<RF>>& w_images, const PrimeField& field);

/// The fixed-field generators of the involution x -> a/x, y -> b/y.
std::pair<RF, RF> theorem_2_3_uv(const RF& x, const RF& y, const RF& a, const RF& b);

/// Hypotheses and identities of the two-variable involution theorem, with
/// x, y the variables at x_index, y_index of the space of `involution`.
Verdict verify_theorem_2_3(const RF& a, const RF& b, const FieldAutomorphism& involution, uint32_t x_index,
                           uint32_t y_index, const VarSpace* space = nullptr);

}  // namespace noether

#endif
