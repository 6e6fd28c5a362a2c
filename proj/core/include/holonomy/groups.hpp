#pragma once

#include <Eigen/Dense>
#include <vector>

#include "holonomy/errors.hpp"

namespace holonomy {

/// Concrete matrix realizations used throughout. `Real` is the additive
/// group (R,+) carried in the scalar slot, `SUnxR` the product
/// SU(n) x (R,+) with the matrix in `m` and the translation in `r`.
enum class GroupTag { U1, SU2, SO3, SUn, PSUn, Un, Real, SUnxR };

const char* tag_name(GroupTag tag);

/// Element of a matrix group. PSUn elements are stored as an SU(n)
/// representative; equality is up to the center Z(n).
struct GroupElement {
  Eigen::MatrixXcd m;  // empty for Real
  double r = 0.0;      // used by Real and SUnxR only
  GroupTag tag = GroupTag::U1;

  int dim() const { return static_cast<int>(m.rows()); }
};

/// Element of the Lie algebra matching a GroupTag. Constraints
/// (anti-Hermitian, real antisymmetric, traceless, ...) are checked by
/// `algebra_membership_distance`, not enforced on construction.
struct AlgebraElement {
  Eigen::MatrixXcd m;
  double r = 0.0;
  GroupTag tag = GroupTag::U1;

  int dim() const { return static_cast<int>(m.rows()); }
};

GroupElement group_identity(GroupTag tag, int n);
AlgebraElement algebra_zero(GroupTag tag, int n);

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(double c, const AlgebraElement& x);
/// Commutator [a, b]; the scalar slot of Real / SUnxR is central.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

double algebra_norm(const AlgebraElement& x);
double algebra_distance(const AlgebraElement& a, const AlgebraElement& b);

/// Frobenius distance on the matrix part plus the scalar slot. For PSUn
/// this is the raw representative distance; see `group_distance` for the
/// center-modded one.
double frobenius_distance(const GroupElement& a, const GroupElement& b);

/// Distance respecting group identification: for PSUn the minimum of
/// the representative distance over the center, raw Frobenius otherwise.
double group_distance(const GroupElement& a, const GroupElement& b);

bool approx_equal(const GroupElement& a, const GroupElement& b,
                  double tol = 1e-9);

/// Largest violation of the membership constraints for the tag
/// (unitarity, determinant, orthogonality, realness).
double group_membership_distance(const GroupElement& g);
double algebra_membership_distance(const AlgebraElement& x);

/// Matrix exponential into the group. Throws NumericalFailure if the
/// result drifts off the group constraint by more than 1e-8.
GroupElement exp(const AlgebraElement& x);

/// g x g^-1, componentwise on product groups (trivial on the R factor).
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

/// Principal logarithm of a group element close to the identity,
/// returned in the algebra. Only valid near the identity; used for
/// step-doubling extrapolation of ordered products.
AlgebraElement log_near_identity(const GroupElement& g);

/// A covering homomorphism tau: cover -> base together with its
/// differential, the inverse of the differential (an isomorphism for
/// coverings), a smooth local section, and a description of the
/// discrete central kernel.
class CoveringPair {
 public:
  enum class Kind { U1OverReal, SO3OverSU2, PSUnOverSUn, UnOverSUnxR, Identity };

  /// Defaults to the identity cover of U(1).
  CoveringPair() : CoveringPair(Kind::Identity, GroupTag::U1, GroupTag::U1, 1, 1) {}

  static CoveringPair u1();                  // tau: R -> U(1), t -> e^{2 pi i t}
  static CoveringPair so3();                 // tau: SU(2) -> SO(3)
  static CoveringPair sun_zn(int n);         // tau: SU(n) -> SU(n)/Z(n)
  static CoveringPair un(int n);             // tau: SU(n) x R -> U(n), (A,t) -> A e^{2 pi i t}
  static CoveringPair identity(GroupTag tag, int n);

  GroupTag cover_tag() const { return cover_tag_; }
  GroupTag base_tag() const { return base_tag_; }
  int n() const { return n_; }
  Kind kind() const { return kind_; }

  GroupElement cover_identity() const;
  GroupElement base_identity() const;

  GroupElement tau(const GroupElement& h) const;
  AlgebraElement dtau(const AlgebraElement& x) const;
  AlgebraElement dtau_inv(const AlgebraElement& x) const;

  /// A distinguished preimage of g. Any two sections differ by a kernel
  /// element, which is central, so adjoint actions through a section are
  /// section-independent.
  GroupElement section(const GroupElement& g) const;

  /// Number of kernel elements, or 0 when the kernel is infinite (Z).
  long kernel_size() const { return kernel_size_; }
  bool kernel_finite() const { return kernel_size_ != 0; }
  GroupElement kernel_element(long k) const;
  /// Index of the kernel element nearest to h, with its distance.
  long nearest_kernel_index(const GroupElement& h, double* distance = nullptr) const;
  /// Kernel elements for sampling-based checks (a window of Z if infinite).
  std::vector<GroupElement> kernel_samples(int window = 5) const;

 private:
  CoveringPair(Kind kind, GroupTag cover, GroupTag base, int n, long kernel_size)
      : kind_(kind), cover_tag_(cover), base_tag_(base), n_(n), kernel_size_(kernel_size) {}

  Kind kind_;
  GroupTag cover_tag_;
  GroupTag base_tag_;
  int n_;
  long kernel_size_;
};

/// The preimage of g under cp.tau() closest to `near` in Frobenius
/// distance. Throws AmbiguousLift when the two best candidates are
/// equidistant within `margin`.
GroupElement lift_element(const CoveringPair& cp, const GroupElement& g,
                          const GroupElement& near, double margin = 1e-6);

/// tau_bar^-1 as a standalone operation (throws TagMismatch when x is
/// not in the base algebra of cp).
AlgebraElement dtau_inverse_map(const CoveringPair& cp, const AlgebraElement& x);

/// Differential of the action alpha_g on the cover algebra: conjugation
/// by a section of g, i.e. tau_bar^-1 (Ad_g tau_bar).
AlgebraElement alpha_differential(const CoveringPair& cp, const GroupElement& g,
                                  const AlgebraElement& x);

// Standard generators.
Eigen::MatrixXcd pauli(int i);       // sigma_1, sigma_2, sigma_3
Eigen::MatrixXcd so3_generator(int i);  // J_1, J_2, J_3
/// X = (i/n) diag(1, ..., 1, 1-n), the su(n) generator of the Z(n) fluxes.
Eigen::MatrixXcd sun_flux_generator(int n);

}  // namespace holonomy
