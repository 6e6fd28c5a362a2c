#include "holonomy/transport.hpp"

#include <algorithm>
#include <cmath>

namespace holonomy {

namespace {

struct Panel {
  double t0;
  double t1;
  long base_nodes;
};

std::vector<Panel> make_panels(const std::vector<double>& breaks, int steps) {
  std::vector<double> cuts = {0.0};
  for (double b : breaks) {
    if (b > 1e-12 && b < 1.0 - 1e-12) cuts.push_back(b);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    long nodes = std::max<long>(2, std::lround(steps * len));
    panels.push_back({cuts[i], cuts[i + 1], nodes});
  }
  return panels;
}

GroupElement product_at_level(
    const std::function<AlgebraElement(double)>& integrand,
    const std::vector<Panel>& panels, long multiplier,
    const GroupElement& identity) {
  GroupElement acc = identity;
  for (const Panel& panel : panels) {
    long n = panel.base_nodes * multiplier;
    double dt = (panel.t1 - panel.t0) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      double t = panel.t0 + (static_cast<double>(i) + 0.5) * dt;
      acc = mul(acc, exp(scale(dt, integrand(t))));
    }
  }
  return acc;
}

GroupElement richardson_extrapolate(const GroupElement& coarse,
                                    const GroupElement& fine) {
  // coarse = P exp(C h^2), fine = P exp(C h^2 / 4)  =>  P ~ fine exp(-L/3)
  // with L = log(fine^-1 coarse).
  AlgebraElement l = log_near_identity(mul(inverse(fine), coarse));
  return mul(fine, exp(scale(-1.0 / 3.0, l)));
}

}  // namespace

GroupElement ordered_product_exponential(
    const std::function<AlgebraElement(double)>& integrand,
    const std::vector<double>& breaks, const GroupElement& identity,
    const TransportConfig& cfg) {
  int steps = std::max(8, cfg.steps);
  std::vector<Panel> panels = make_panels(breaks, steps);

  GroupElement prev = product_at_level(integrand, panels, 1, identity);
  GroupElement prev_extrap = prev;
  bool have_extrap = false;
  long multiplier = 2;
  for (int doubling = 0; doubling < 5; ++doubling) {
    GroupElement cur = product_at_level(integrand, panels, multiplier, identity);
    if (cfg.richardson) {
      GroupElement extrap = richardson_extrapolate(prev, cur);
      if (have_extrap &&
          frobenius_distance(prev_extrap, extrap) <= cfg.tolerance) {
        return extrap;
      }
      prev_extrap = extrap;
      have_extrap = true;
    } else if (frobenius_distance(prev, cur) <= cfg.tolerance) {
      return cur;
    }
    prev = cur;
    multiplier *= 2;
  }
  throw NotConverged(
      "ordered_product_exponential: refinements still differ after 4 doublings");
}

GroupElement path_transport(const LocalConnection& conn, Patch patch,
                            const Path& path, const TransportConfig& cfg) {
  const PatchForms& forms = conn.patch(patch);
  const SphereCover& cover = conn.cover;
  auto integrand = [&](double t) {
    ChartPoint x = path.eval(t);
    cover.require_inside(patch, x.theta);
    auto [theta_dot, phi_dot] = path.velocity(t);
    return add(scale(theta_dot, forms.a_theta(x)),
               scale(phi_dot, forms.a_phi(x)));
  };
  return ordered_product_exponential(integrand, path.breaks,
                                     conn.covering.base_identity(), cfg);
}

GroupElement loop_holonomy(const LocalConnection& conn, const SphereCover& cover,
                           double theta, const TransportConfig& cfg) {
  if (theta < 0.0 || theta > kPi) {
    throw OutOfPatch("loop_holonomy: theta outside [0, pi]");
  }
  Path loop = based_latitude_loop(cover, theta);
  if (theta <= kPi / 2.0) {
    return path_transport(conn, Patch::North, loop, cfg);
  }
  GroupElement hol = path_transport(conn, Patch::South, loop, cfg);
  GroupElement jump = conn.transition(cover.basepoint());
  return mul(mul(jump, hol), inverse(jump));
}

}  // namespace holonomy
