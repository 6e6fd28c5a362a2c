#include "holonomy/surface_transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace holonomy {

namespace {

constexpr double kLiftGapThreshold = 0.5;
constexpr double kIntegralSnapLimit = 1e-4;

struct BigonDerivatives {
  double theta_t, phi_t;
  double theta_s, phi_s;
};

BigonDerivatives bigon_partials(const Bigon& bigon, double t, double s,
                                double h = 1e-6) {
  ChartPoint tp = bigon.eval(std::min(1.0, t + h), s);
  ChartPoint tm = bigon.eval(std::max(0.0, t - h), s);
  double wt = std::min(1.0, t + h) - std::max(0.0, t - h);
  ChartPoint sp = bigon.eval(t, std::min(1.0, s + h));
  ChartPoint sm = bigon.eval(t, std::max(0.0, s - h));
  double ws = std::min(1.0, s + h) - std::max(0.0, s - h);
  return {(tp.theta - tm.theta) / wt, (tp.phi - tm.phi) / wt,
          (sp.theta - sm.theta) / ws, (sp.phi - sm.phi) / ws};
}

std::vector<std::pair<double, double>> t_panels(const Bigon& bigon) {
  std::vector<double> cuts = {0.0};
  for (double b : bigon.t_breaks) {
    if (b > 1e-12 && b < 1.0 - 1e-12) cuts.push_back(b);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] > 0.0) panels.emplace_back(cuts[i], cuts[i + 1]);
  }
  return panels;
}

GroupElement richardson_extrapolate(const GroupElement& coarse,
                                    const GroupElement& fine) {
  AlgebraElement l = log_near_identity(mul(coarse, inverse(fine)));
  return mul(exp(scale(-1.0 / 3.0, l)), fine);
}

long snap_to_kernel(const CoveringPair& cp, const GroupElement& h,
                    double* distance) {
  return cp.nearest_kernel_index(h, distance);
}

}  // namespace

AlgebraElement a_sigma(const LocalConnection& conn, Patch patch,
                       const Bigon& bigon, double s, int t_samples) {
  const PatchForms& forms = conn.patch(patch);
  const CoveringPair& cp = conn.covering;
  GroupElement slice_transport = cp.base_identity();
  AlgebraElement acc = algebra_zero(cp.cover_tag(), cp.cover_identity().dim());

  for (const auto& [t0, t1] : t_panels(bigon)) {
    long n = std::max<long>(2, std::lround(t_samples * (t1 - t0)));
    double dt = (t1 - t0) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      double t = t0 + (static_cast<double>(i) + 0.5) * dt;
      ChartPoint x = bigon.eval(t, s);
      conn.cover.require_inside(patch, x.theta);
      BigonDerivatives d = bigon_partials(bigon, t, s);

      AlgebraElement a_pullback = add(scale(d.theta_t, forms.a_theta(x)),
                                      scale(d.phi_t, forms.a_phi(x)));
      GroupElement half_step = exp(scale(0.5 * dt, a_pullback));
      GroupElement at_mid = mul(slice_transport, half_step);

      // (Sigma^* B)(d/ds, d/dt) carried to the source-corner frame along
      // the partial slice transport.
      double jac = d.theta_s * d.phi_t - d.phi_s * d.theta_t;
      AlgebraElement b_val = scale(jac, forms.b(x));
      acc = add(acc, scale(dt, adjoint(cp.section(at_mid), b_val)));

      slice_transport = mul(at_mid, half_step);
    }
  }
  return scale(-1.0, acc);
}

GroupElement surface_product_fixed(const LocalConnection& conn, Patch patch,
                                   const Bigon& bigon, int resolution) {
  const CoveringPair& cp = conn.covering;
  GroupElement acc = cp.cover_identity();
  double ds = 1.0 / resolution;
  for (int j = 0; j < resolution; ++j) {
    double s = (j + 0.5) * ds;
    AlgebraElement a = a_sigma(conn, patch, bigon, s, resolution);
    acc = mul(exp(scale(-ds, a)), acc);
  }
  return acc;
}

SurfaceTransportResult surface_transport_integral(const LocalConnection& conn,
                                                  Patch patch, const Bigon& bigon,
                                                  const TransportConfig& cfg) {
  int resolution = std::max(16, cfg.steps / 16);

  GroupElement prev = surface_product_fixed(conn, patch, bigon, resolution);
  GroupElement cur = surface_product_fixed(conn, patch, bigon, 2 * resolution);
  GroupElement prev_extrap = richardson_extrapolate(prev, cur);
  int final_resolution = 2 * resolution;

  GroupElement value;
  bool converged = false;
  for (int doubling = 0; doubling < 4; ++doubling) {
    final_resolution *= 2;
    GroupElement next = surface_product_fixed(conn, patch, bigon, final_resolution);
    GroupElement extrap = richardson_extrapolate(cur, next);
    if (frobenius_distance(prev_extrap, extrap) <= cfg.tolerance) {
      value = extrap;
      converged = true;
      break;
    }
    cur = next;
    prev_extrap = extrap;
  }
  if (!converged) {
    throw NotConverged(
        "surface_transport_integral: refinements still differ after 4 doublings");
  }

  SurfaceTransportResult out;
  out.h = value;  // already expressed in the source-corner frame
  out.method = "integral";
  out.source_holonomy = path_transport(conn, patch, bigon.source(), cfg);
  out.resolution = final_resolution;
  return out;
}

SurfaceTransportResult glued_sphere_integral(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             const TransportConfig& cfg) {
  MonopoleBigons bigons = monopole_bigons(cover);
  SurfaceTransportResult north =
      surface_transport_integral(conn, Patch::North, bigons.north, cfg);
  SurfaceTransportResult south =
      surface_transport_integral(conn, Patch::South, bigons.south, cfg);

  // The south 2-cell lives in the south-patch frame at the basepoint;
  // whisker it into the north frame by the transition jump there. The
  // jump is the identity for the standard cover basepoint.
  CoveringCrossedModule cm{conn.covering};
  GroupElement jump = conn.transition(cover.basepoint());
  GroupElement south_h = cm.act(jump, south.h);
  GroupElement south_g =
      mul(mul(jump, south.source_holonomy), inverse(jump));

  TwoMorphism<CoveringCrossedModule> top{north.h, north.source_holonomy};
  TwoMorphism<CoveringCrossedModule> bottom{south_h, south_g};
  TwoMorphism<CoveringCrossedModule> composite =
      vertical_compose(cm, top, bottom, kIntegralSnapLimit);

  SurfaceTransportResult out;
  out.h = composite.h;
  out.method = "integral";
  out.source_holonomy = north.source_holonomy;
  out.resolution = std::max(north.resolution, south.resolution);
  double snap = 0.0;
  out.kernel_index = snap_to_kernel(conn.covering, out.h, &snap);
  out.snap_distance = snap;
  return out;
}

namespace {

/// Loop samples with holonomies memoized across refinement levels
/// (doubling the sample count reuses every even node).
std::vector<GroupElement> loop_path_cached(
    const LocalConnection& conn, const SphereCover& cover, int s_samples,
    const TransportConfig& cfg, const ThetaProfile& profile,
    std::map<double, GroupElement>& cache) {
  if (s_samples < 16) {
    throw Error("holonomy_loop_path: need at least 16 samples");
  }
  std::vector<GroupElement> samples;
  samples.reserve(s_samples + 1);
  for (int j = 0; j <= s_samples; ++j) {
    double s = static_cast<double>(j) / s_samples;
    double theta = profile ? profile(s) : kPi * s;
    auto it = cache.find(theta);
    if (it == cache.end()) {
      it = cache.emplace(theta, loop_holonomy(conn, cover, theta, cfg)).first;
    }
    samples.push_back(it->second);
  }
  GroupElement base_inv = inverse(samples.front());
  for (GroupElement& g : samples) g = mul(g, base_inv);
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    double gap = group_distance(samples[j], samples[j + 1]);
    if (gap >= kLiftGapThreshold) {
      throw StepTooLarge("holonomy_loop_path: gap " + std::to_string(gap) +
                         " at sample " + std::to_string(j) +
                         "; refine the sampling");
    }
  }
  return samples;
}

}  // namespace

std::vector<GroupElement> holonomy_loop_path(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             int s_samples,
                                             const TransportConfig& cfg,
                                             const ThetaProfile& profile) {
  std::map<double, GroupElement> cache;
  return loop_path_cached(conn, cover, s_samples, cfg, profile, cache);
}

SurfaceTransportResult surface_holonomy_lift(const LocalConnection& conn,
                                             const SphereCover& cover,
                                             const CoveringPair& covering,
                                             const TransportConfig& cfg,
                                             const ThetaProfile& profile) {
  int samples = std::max(16, cfg.steps / 8);
  // The lift only consumes holonomies through nearest-preimage selection
  // against a kernel separation of order one, so the per-loop transports
  // may run far looser than the requested snap tolerance.
  TransportConfig loop_cfg = cfg;
  loop_cfg.steps = std::clamp(cfg.steps / 8, 16, 64);
  loop_cfg.tolerance = std::max(cfg.tolerance, 1e-6);
  std::map<double, GroupElement> cache;
  std::optional<long> previous_index;
  double snap = 0.0;

  for (int level = 0; level < 10; ++level, samples *= 2) {
    std::vector<GroupElement> path;
    try {
      path = loop_path_cached(conn, cover, samples, loop_cfg, profile, cache);
    } catch (const StepTooLarge&) {
      previous_index.reset();
      continue;
    }
    GroupElement lifted = covering.cover_identity();
    bool ambiguous = false;
    for (const GroupElement& g : path) {
      try {
        lifted = lift_element(covering, g, lifted);
      } catch (const AmbiguousLift&) {
        ambiguous = true;
        break;
      }
    }
    if (ambiguous) {
      previous_index.reset();
      continue;
    }
    long index = snap_to_kernel(covering, lifted, &snap);
    if (previous_index && *previous_index == index) {
      SurfaceTransportResult out;
      out.h = covering.kernel_element(index);
      out.method = "lift";
      out.source_holonomy = covering.base_identity();
      out.resolution = samples;
      out.kernel_index = index;
      out.snap_distance = snap;
      return out;
    }
    previous_index = index;
  }
  throw NotConverged(
      "surface_holonomy_lift: kernel element did not stabilize under refinement");
}

CompareReport compare_methods(const LocalConnection& conn, const SphereCover& cover,
                              const CoveringPair& covering,
                              const TransportConfig& cfg) {
  CompareReport report;
  report.lift = surface_holonomy_lift(conn, cover, covering, cfg);
  report.integral = glued_sphere_integral(conn, cover, cfg);

  long lift_index = report.lift.kernel_index.value();
  long integral_index = report.integral.kernel_index.value();
  if (report.integral.snap_distance >= kIntegralSnapLimit ||
      lift_index != integral_index) {
    throw MethodDisagreement(
        "compare_methods: lift kernel index " + std::to_string(lift_index) +
            " vs integral index " + std::to_string(integral_index) +
            " (integral snap distance " +
            std::to_string(report.integral.snap_distance) + ")",
        lift_index, integral_index, report.lift.snap_distance,
        report.integral.snap_distance);
  }
  report.kernel_index = lift_index;
  report.agree = true;
  return report;
}

}  // namespace holonomy
