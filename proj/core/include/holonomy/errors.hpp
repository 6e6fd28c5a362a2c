#pragma once

#include <stdexcept>
#include <string>

namespace holonomy {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vertical composition attempted between 2-cells whose boundary
/// 1-morphisms do not match within tolerance.
struct SourceTargetMismatch : Error {
  using Error::Error;
};

/// A finite-group-only operation was called on a matrix realization.
struct NotFinite : Error {
  using Error::Error;
};

/// Group/algebra tags (or matrix sizes) of the operands are incompatible.
struct TagMismatch : Error {
  using Error::Error;
};

/// A result drifted off its group/algebra constraint beyond tolerance.
struct NumericalFailure : Error {
  using Error::Error;
};

/// Two preimages under the covering map are equidistant from the
/// continuity anchor; the sampling step is too large to lift uniquely.
struct AmbiguousLift : Error {
  using Error::Error;
};

/// Successive quadrature refinements failed to settle within tolerance.
struct NotConverged : Error {
  using Error::Error;
};

/// A point or path left its declared chart patch.
struct OutOfPatch : Error {
  using Error::Error;
};

/// Path concatenation with mismatched endpoints.
struct EndpointMismatch : Error {
  using Error::Error;
};

/// Consecutive loop holonomies are farther apart than the lifting
/// continuity threshold; the caller must refine the sampling.
struct StepTooLarge : Error {
  using Error::Error;
};

/// Unknown monopole family requested.
struct UnsupportedFamily : Error {
  using Error::Error;
};

/// The surface-ordered integral and the covering-space lift disagree
/// as kernel elements. Carries both snapped indices and distances.
struct MethodDisagreement : Error {
  long lift_index;
  long integral_index;
  double lift_snap_distance;
  double integral_snap_distance;

  MethodDisagreement(const std::string& what, long lift_idx, long integral_idx,
                     double lift_snap, double integral_snap)
      : Error(what),
        lift_index(lift_idx),
        integral_index(integral_idx),
        lift_snap_distance(lift_snap),
        integral_snap_distance(integral_snap) {}
};

}  // namespace holonomy
