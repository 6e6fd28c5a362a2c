#pragma once

#include <functional>

#include "holonomy/geometry.hpp"
#include "holonomy/groups.hpp"

namespace holonomy {

/// Coefficient functions of the patchwise data in the (theta, phi) chart
/// basis: A = a_theta d theta + a_phi d phi (base algebra) and
/// B = b d theta ^ d phi (cover algebra). The functions must be smooth
/// and 2 pi periodic in phi, and evaluable slightly beyond the patch so
/// finite differences stay meaningful.
struct PatchForms {
  std::function<AlgebraElement(ChartPoint)> a_theta;
  std::function<AlgebraElement(ChartPoint)> a_phi;
  std::function<AlgebraElement(ChartPoint)> b;
};

/// Two-patch differential cocycle: (A_N, B_N), (A_S, B_S) and the
/// transition g_NS on the overlap band, over a fixed covering pair. The
/// catalog transitions depend on phi only, but gauge transforms produce
/// genuinely band-valued transitions, so the record keeps both
/// coordinates.
struct LocalConnection {
  PatchForms north;
  PatchForms south;
  std::function<GroupElement(ChartPoint)> transition;  // g_NS, base group
  CoveringPair covering;
  SphereCover cover;

  const PatchForms& patch(Patch p) const {
    return p == Patch::North ? north : south;
  }
  /// Transition at the equator slice.
  GroupElement transition_at(double phi) const {
    return transition(ChartPoint{kPi / 2.0, phi});
  }
};

/// dA + (1/2)[A, A] evaluated at a point: the d theta ^ d phi coefficient
/// d_theta A_phi - d_phi A_theta + [A_theta, A_phi], with central finite
/// differences of step `fd_step`.
AlgebraElement curvature(const LocalConnection& conn, Patch patch,
                         ChartPoint point, double fd_step = 1e-4);

/// Returns a copy of the connection with B := tau_bar^-1(curvature)
/// pointwise on both patches.
LocalConnection b_from_curvature(const LocalConnection& conn,
                                 double fd_step = 1e-4);

/// Patchwise gauge function x -> h(x) in the base group. Must be smooth
/// and 2 pi periodic in phi on each patch.
struct GaugeFunction {
  std::function<GroupElement(ChartPoint)> north;
  std::function<GroupElement(ChartPoint)> south;

  const std::function<GroupElement(ChartPoint)>& patch(Patch p) const {
    return p == Patch::North ? north : south;
  }
};

/// A' = Ad_h(A) - (dh) h^-1 componentwise, B' the adjoint of B through
/// the covering (tau_bar^-1 Ad_h tau_bar), and
/// g'_NS(phi) = h_N(eq_phi) g_NS(phi) h_S(eq_phi)^-1 on the equator.
LocalConnection gauge_transform(const LocalConnection& conn,
                                const GaugeFunction& h, double fd_step = 1e-4);

/// Pointwise composition (h' h)(x) = h'(x) h(x).
GaugeFunction compose(const GaugeFunction& h_second, const GaugeFunction& h_first);

/// || tau_bar(B) - (dA + (1/2)[A,A]) || at a point.
double structural_residual(const LocalConnection& conn, Patch patch,
                           ChartPoint point, double fd_step = 1e-4);

/// Worst structural residual over an interior grid of the given size.
double max_structural_residual(const LocalConnection& conn, Patch patch,
                               int grid = 32, double fd_step = 1e-4);

/// || A_N - Ad_g(A_S) + (dg) g^-1 || at an equator point (both chart
/// components, with d phi g by central differences).
double transition_residual(const LocalConnection& conn, double phi,
                           double fd_step = 1e-4);

/// Worst transition residual over `samples` points along the equator.
double max_transition_residual(const LocalConnection& conn, int samples = 64,
                               double fd_step = 1e-4);

}  // namespace holonomy
