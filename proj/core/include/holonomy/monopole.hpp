#pragma once

#include <optional>
#include <string>

#include "holonomy/surface_transport.hpp"

namespace holonomy {

enum class Family { U1, SO3, SUnZn, Un };

const char* family_name(Family family);
/// Parses "u1", "so3", "sunzn", "un"; throws UnsupportedFamily.
Family family_from_name(const std::string& name);

/// One of the catalog monopole configurations: the connection
/// A_N = (c/2)(1 - cos theta) d phi, A_S = -(c/2)(1 + cos theta) d phi
/// for the family generator c, B = tau_bar^-1 of the curvature, and the
/// family transition function along the equator.
struct MonopoleConfig {
  Family family = Family::U1;
  int n = 1;
  int charge = 0;
  LocalConnection connection;
  CoveringPair covering;
  SphereCover cover;
  std::optional<std::string> note;  // set when the charge was reduced mod n
};

/// Builds a catalog configuration and verifies the structural and
/// transition identities on a coarse grid. For SUnZn the charge is
/// reduced mod n (with a note); U1 charges may be negative.
MonopoleConfig make_config(Family family, int n, int charge);

/// The kernel index of the expected flux for a catalog configuration.
long expected_flux_index(const MonopoleConfig& config);

enum class FluxMethod { Lift, Integral, Both };

const char* method_name(FluxMethod method);
FluxMethod method_from_name(const std::string& name);

struct FluxReport {
  Family family = Family::U1;
  int n = 1;
  int charge = 0;
  FluxMethod method = FluxMethod::Both;
  GroupElement flux;       // snapped kernel element
  long kernel_index = 0;
  double snap_distance = 0.0;
  int lift_samples = 0;
  int integral_resolution = 0;
  int samples = 0;
  double tolerance = 0.0;
  std::optional<bool> agree;  // set when both methods ran
  double elapsed_ms = 0.0;
  std::optional<std::string> note;
};

/// Computes the magnetic flux of the configuration with the requested
/// method(s). Method `Both` also checks agreement and throws
/// MethodDisagreement on mismatch.
FluxReport magnetic_flux(const MonopoleConfig& config, FluxMethod method,
                         const TransportConfig& cfg);

}  // namespace holonomy
