#pragma once

#include <vector>

#include "holonomy/errors.hpp"
#include "holonomy/groups.hpp"

namespace holonomy {

/// Multiplication table of a finite group, elements indexed 0..order-1.
struct FiniteGroupTable {
  int order = 1;
  std::vector<int> product;   // row-major order x order
  std::vector<int> inverse;
  int identity = 0;

  int mul(int a, int b) const { return product[a * order + b]; }
  int inv(int a) const { return inverse[a]; }

  /// Exhaustively checks associativity, identity and inverse laws.
  void validate() const;

  static FiniteGroupTable trivial();
  static FiniteGroupTable cyclic(int p);
  /// Symmetric group on n letters via lexicographic permutation indexing.
  static FiniteGroupTable symmetric(int n);
  /// Units mod p under multiplication (Aut(Z_p) for prime p), built by
  /// enumerating the multiplication-by-k maps.
  static FiniteGroupTable units_mod(int p);
};

/// Finite crossed module (H, G, tau, alpha) with everything tabulated.
struct FiniteCrossedModule {
  FiniteGroupTable H;
  FiniteGroupTable G;
  std::vector<int> tau;                 // H -> G
  std::vector<std::vector<int>> alpha;  // alpha[g][h] in H

  int act(int g, int h) const { return alpha[g][h]; }

  /// Checks tau is a homomorphism, each alpha_g an automorphism, alpha a
  /// left action, and the Peiffer / equivariance identities. Exhaustive.
  void validate() const;

  /// (Z_p, Aut(Z_p), tau trivial, natural action).
  static FiniteCrossedModule zp_aut_zp(int p);
  /// (G, G, id, conjugation).
  static FiniteCrossedModule conjugation(const FiniteGroupTable& g);
  /// (H, trivial group, trivial tau, trivial action).
  static FiniteCrossedModule trivial_action(const FiniteGroupTable& h);
};

/// Partition of H under h ~ alpha_g(h'). Classes are sorted by smallest
/// member; together they are disjoint and cover H.
std::vector<std::vector<int>> alpha_conjugacy_classes(const FiniteCrossedModule& cm);

/// H / [G,H] where [G,H] is generated by h^-1 alpha_g(h). If coset_of is
/// given, it receives the quotient index of every H element.
FiniteGroupTable reduced_group(const FiniteCrossedModule& cm,
                               std::vector<int>* coset_of = nullptr);

/// Fixed points of the action; verified closed, containing e, central in H.
std::vector<int> inv_alpha(const FiniteCrossedModule& cm);

/// Kernel of tau; verified central in H.
std::vector<int> ker_tau(const FiniteCrossedModule& cm);

/// Matrix crossed module induced by a covering pair: H the cover group,
/// G the base, alpha_g conjugation by a section of g (section-independent
/// because the kernel is central).
struct CoveringCrossedModule {
  CoveringPair cover;

  using HElem = GroupElement;
  using GElem = GroupElement;

  GElem tau(const HElem& h) const { return cover.tau(h); }
  HElem act(const GElem& g, const HElem& h) const {
    GroupElement s = cover.section(g);
    return mul(mul(s, h), inverse(s));
  }
  HElem hmul(const HElem& a, const HElem& b) const { return mul(a, b); }
  GElem gmul(const GElem& a, const GElem& b) const { return mul(a, b); }
  bool g_equal(const GElem& a, const GElem& b, double tol) const {
    return approx_equal(a, b, tol);
  }
};

/// Finite crossed module behind the same element-level interface.
struct FiniteCrossedModuleRef {
  const FiniteCrossedModule& cm;

  using HElem = int;
  using GElem = int;

  GElem tau(HElem h) const { return cm.tau[h]; }
  HElem act(GElem g, HElem h) const { return cm.act(g, h); }
  HElem hmul(HElem a, HElem b) const { return cm.H.mul(a, b); }
  GElem gmul(GElem a, GElem b) const { return cm.G.mul(a, b); }
  bool g_equal(GElem a, GElem b, double) const { return a == b; }
};

/// 2-cell (h, g): source g, target tau(h) g. The target is always
/// recomputed, never stored.
template <class CM>
struct TwoMorphism {
  typename CM::HElem h;
  typename CM::GElem g;
};

template <class CM>
typename CM::GElem target_of(const CM& cm, const TwoMorphism<CM>& cell) {
  return cm.gmul(cm.tau(cell.h), cell.g);
}

/// Vertical composition: `top` is applied first, `bottom` starts where
/// `top` ends. Requires bottom.g = tau(top.h) top.g within tolerance.
template <class CM>
TwoMorphism<CM> vertical_compose(const CM& cm, const TwoMorphism<CM>& top,
                                 const TwoMorphism<CM>& bottom,
                                 double tol = 1e-9) {
  if (!cm.g_equal(bottom.g, target_of(cm, top), tol)) {
    throw SourceTargetMismatch(
        "vertical_compose: bottom source does not match top target");
  }
  return TwoMorphism<CM>{cm.hmul(bottom.h, top.h), top.g};
}

/// Horizontal composition: (h', g') * (h, g) = (h' alpha_{g'}(h), g' g).
template <class CM>
TwoMorphism<CM> horizontal_compose(const CM& cm, const TwoMorphism<CM>& left,
                                   const TwoMorphism<CM>& right) {
  return TwoMorphism<CM>{cm.hmul(left.h, cm.act(left.g, right.h)),
                         cm.gmul(left.g, right.g)};
}

/// Finite-only quotients are undefined for matrix realizations.
std::vector<std::vector<int>> alpha_conjugacy_classes(const CoveringCrossedModule&);
FiniteGroupTable reduced_group(const CoveringCrossedModule&);
std::vector<int> inv_alpha(const CoveringCrossedModule&);

/// Kernel description for the covering realization: a sample of kernel
/// elements, each verified central against random cover elements.
std::vector<GroupElement> ker_tau(const CoveringCrossedModule& cm,
                                  int centrality_samples = 100,
                                  double tol = 1e-10);

}  // namespace holonomy
