#pragma once

#include <functional>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/groups.hpp"

namespace holonomy {

struct TransportConfig {
  int steps = 512;        // initial partition count (>= 8)
  double tolerance = 1e-8;
  bool richardson = false;
};

/// Ordered exponential of an algebra-valued integrand over [0,1] by the
/// midpoint product rule, solving dT/dt = T A(t): factors at earlier
/// parameter multiply on the left. This is the ordering under which the
/// cocycle conventions used here (A_N = Ad_g A_S - (dg)g^-1 and
/// tau_bar(B) = dA + (1/2)[A,A]) make holonomy conjugate by transition
/// and gauge values at the basepoint. Panels never straddle `breaks`.
/// The result is verified by step doubling against `cfg.tolerance`; with
/// `cfg.richardson` the converged pair is extrapolated one order. Throws
/// NotConverged after four doublings.
GroupElement ordered_product_exponential(
    const std::function<AlgebraElement(double)>& integrand,
    const std::vector<double>& breaks, const GroupElement& identity,
    const TransportConfig& cfg);

/// Path-ordered exponential of the patch 1-form along the path,
/// P exp { int A(gamma'(t)) dt }. Throws OutOfPatch when the path leaves
/// the patch.
GroupElement path_transport(const LocalConnection& conn, Patch patch,
                            const Path& path, const TransportConfig& cfg);

/// Holonomy of the based latitude loop gamma_theta: computed in the
/// north patch for theta <= pi/2, otherwise in the south patch and
/// conjugated by the transition at the basepoint.
GroupElement loop_holonomy(const LocalConnection& conn, const SphereCover& cover,
                           double theta, const TransportConfig& cfg);

}  // namespace holonomy
