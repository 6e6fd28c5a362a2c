#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "holonomy/errors.hpp"

namespace holonomy {

inline constexpr double kPi = 3.14159265358979323846;

/// Point on the two-chart sphere in zenith/azimuth coordinates. phi is
/// kept unwrapped; all chart functions are 2 pi periodic in phi.
struct ChartPoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;
};

enum class Patch { North, South };
enum class PatchHint { North, South, Overlap };

/// Parametrized path [0,1] -> chart. `breaks` lists interior parameter
/// values where the parametrization is allowed to have corners; the
/// quadrature never straddles them. `sitting` is the constancy margin
/// near 0 and 1 (may be zero).
struct Path {
  std::function<ChartPoint(double)> eval;
  std::vector<double> breaks;
  double sitting = 0.0;
  PatchHint hint = PatchHint::Overlap;

  ChartPoint start() const { return eval(0.0); }
  ChartPoint end() const { return eval(1.0); }
  /// Chart velocity (d theta/dt, d phi/dt) via central differences.
  std::pair<double, double> velocity(double t, double h = 1e-6) const;
};

Path constant_path(ChartPoint p, PatchHint hint = PatchHint::Overlap);
/// Meridian from theta0 to theta1 at fixed phi, linear in t.
Path meridian(double theta0, double theta1, double phi, PatchHint hint);
/// Latitude arc at fixed theta from phi0 to phi1, linear in t.
Path latitude_arc(double theta, double phi0, double phi1, PatchHint hint);

/// Standard reversal t -> 1 - t.
Path reverse(const Path& p);
/// Double-speed concatenation, q first then p. Requires q.end = p.start.
Path concat(const Path& p, const Path& q, double tol = 1e-9);

/// Monotone C^inf ramp: 0 on [0, margin], 1 on [1 - margin, 1].
double smooth_ramp(double t, double margin = 0.1);
/// Reparametrization of a path by a monotone map of [0,1].
Path reparametrize(const Path& p, std::function<double(double)> map);

/// Bigon [0,1]^2 -> chart; t runs along the paths, s across them.
/// Slices share the fixed endpoints eval(0,s) and eval(1,s).
struct Bigon {
  std::function<ChartPoint(double, double)> eval;
  std::vector<double> t_breaks;
  PatchHint hint = PatchHint::Overlap;

  Path slice(double s) const;
  Path source() const { return slice(0.0); }
  Path target() const { return slice(1.0); }
};

/// Two-chart cover of the sphere: north patch theta in [0, pi/2 + delta),
/// south patch theta in (pi/2 - delta, pi], basepoint on the equator.
struct SphereCover {
  double overlap_halfwidth = 0.2;
  double basepoint_phi = 0.0;

  ChartPoint basepoint() const { return {kPi / 2.0, basepoint_phi}; }
  bool contains(Patch patch, double theta) const;
  void require_inside(Patch patch, double theta) const;  // throws OutOfPatch
};

/// The loop gamma_theta based at the cover's basepoint: meridian out to
/// latitude theta, once around in phi, meridian back.
Path based_latitude_loop(const SphereCover& cover, double theta);

struct MonopoleBigons {
  Bigon north;    // id_basepoint => gamma_{pi/2}, sweeps theta 0 .. pi/2
  Bigon south;    // gamma_{pi/2} => id_basepoint, sweeps theta pi/2 .. pi
  Path equator;   // gamma_{pi/2}
};

/// The standard decomposition of the sphere into two based bigons whose
/// vertical composite sweeps the sphere exactly once.
MonopoleBigons monopole_bigons(const SphereCover& cover);

/// Signed area integral of sin(theta) d theta ^ d phi pulled back through
/// the composite bigon, by midpoint quadrature at the given resolution.
double swept_area(const MonopoleBigons& bigons, int resolution);

}  // namespace holonomy
