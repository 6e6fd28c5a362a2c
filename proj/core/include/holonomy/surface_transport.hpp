#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holonomy/crossed_module.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

/// Result of a surface transport computation. `h` lives in the cover
/// group; the source-target matching condition ties tau(h) to the
/// boundary holonomies, and for full-sphere bigons h lies in ker tau.
struct SurfaceTransportResult {
  GroupElement h;
  std::string method;             // "integral" or "lift"
  GroupElement source_holonomy;   // base-group holonomy of the source path
  int resolution = 0;             // final outer resolution / loop samples
  std::optional<long> kernel_index;  // set for full-sphere results
  double snap_distance = 0.0;        // distance to the snapped kernel element
};

/// The cover-algebra 1-form coefficient (A_Sigma)_s(d/ds): minus the
/// t-integral of the B pullback conjugated back along the partial slice
/// transport, by composite midpoint quadrature with `t_samples` nodes.
AlgebraElement a_sigma(const LocalConnection& conn, Patch patch,
                       const Bigon& bigon, double s, int t_samples);

/// Fixed-resolution surface-ordered integral
/// P exp { -int_0^1 A_Sigma } with `resolution` nodes in both directions
/// (no outer source adjoint applied). Exposed for convergence studies.
GroupElement surface_product_fixed(const LocalConnection& conn, Patch patch,
                                   const Bigon& bigon, int resolution);

/// Surface transport k_{A,B}(Sigma) = P exp{-int A_Sigma}, expressed in
/// the frame at the source corner, refined by step doubling with one
/// extrapolation order until two successive extrapolated values agree
/// within cfg.tolerance.
SurfaceTransportResult surface_transport_integral(const LocalConnection& conn,
                                                  Patch patch, const Bigon& bigon,
                                                  const TransportConfig& cfg);

/// Vertical 2-group composition of the south and north monopole bigon
/// transports; h-parts multiply as k(south) k(north). The transition
/// 2-cells at the basepoint are identities for this cover.
SurfaceTransportResult glued_sphere_integral(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             const TransportConfig& cfg);

/// Monotone profile s -> theta(s) with theta(0)=0, theta(1)=pi. Null
/// means the linear profile.
using ThetaProfile = std::function<double(double)>;

/// Basepoint-normalized loop holonomies g_0 = e, ..., g_K = e sampling
/// hol(gamma_theta(s)). Throws StepTooLarge when a consecutive gap
/// exceeds 0.5 in the base group.
std::vector<GroupElement> holonomy_loop_path(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             int s_samples,
                                             const TransportConfig& cfg,
                                             const ThetaProfile& profile = nullptr);

/// Covering-space lift of the loop-of-holonomies path: starts at the
/// cover identity, lifts sample by sample with nearest-preimage
/// continuity, and returns the terminal kernel element. Sampling is
/// refined until two successive refinements give the same kernel
/// element.
SurfaceTransportResult surface_holonomy_lift(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             const CoveringPair& covering,
                                             const TransportConfig& cfg,
                                             const ThetaProfile& profile = nullptr);

struct CompareReport {
  SurfaceTransportResult lift;
  SurfaceTransportResult integral;
  long kernel_index = 0;
  bool agree = false;
};

/// Runs both methods and asserts they give the same kernel element after
/// snapping; the integral snap distance must be below 1e-4. Throws
/// MethodDisagreement otherwise.
CompareReport compare_methods(const LocalConnection& conn, const SphereCover& cover,
                              const CoveringPair& covering,
                              const TransportConfig& cfg);

}  // namespace holonomy
