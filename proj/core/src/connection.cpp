#include "holonomy/connection.hpp"

#include <cmath>

namespace holonomy {

namespace {

AlgebraElement maurer_cartan_term(const std::function<GroupElement(ChartPoint)>& h,
                                  ChartPoint x, bool theta_direction,
                                  double fd_step) {
  ChartPoint plus = x, minus = x;
  if (theta_direction) {
    plus.theta += fd_step;
    minus.theta -= fd_step;
  } else {
    plus.phi += fd_step;
    minus.phi -= fd_step;
  }
  GroupElement hp = h(plus);
  GroupElement hm = h(minus);
  GroupElement hc = h(x);
  AlgebraElement out;
  out.tag = hc.tag;
  out.m = ((hp.m - hm.m) / (2.0 * fd_step)) * inverse(hc).m;
  return out;
}

}  // namespace

AlgebraElement curvature(const LocalConnection& conn, Patch patch,
                         ChartPoint point, double fd_step) {
  conn.cover.require_inside(patch, point.theta);
  const PatchForms& forms = conn.patch(patch);
  ChartPoint tp = point, tm = point, pp = point, pm = point;
  tp.theta += fd_step;
  tm.theta -= fd_step;
  pp.phi += fd_step;
  pm.phi -= fd_step;
  AlgebraElement d_theta_a_phi =
      scale(1.0 / (2.0 * fd_step), add(forms.a_phi(tp), scale(-1.0, forms.a_phi(tm))));
  AlgebraElement d_phi_a_theta =
      scale(1.0 / (2.0 * fd_step), add(forms.a_theta(pp), scale(-1.0, forms.a_theta(pm))));
  AlgebraElement comm = bracket(forms.a_theta(point), forms.a_phi(point));
  return add(add(d_theta_a_phi, scale(-1.0, d_phi_a_theta)), comm);
}

LocalConnection b_from_curvature(const LocalConnection& conn, double fd_step) {
  LocalConnection out = conn;
  LocalConnection base = conn;  // captured by value below
  out.north.b = [base, fd_step](ChartPoint x) {
    return base.covering.dtau_inv(curvature(base, Patch::North, x, fd_step));
  };
  out.south.b = [base, fd_step](ChartPoint x) {
    return base.covering.dtau_inv(curvature(base, Patch::South, x, fd_step));
  };
  return out;
}

LocalConnection gauge_transform(const LocalConnection& conn,
                                const GaugeFunction& h, double fd_step) {
  LocalConnection out = conn;
  CoveringPair covering = conn.covering;
  for (Patch patch : {Patch::North, Patch::South}) {
    const PatchForms& forms = conn.patch(patch);
    auto hfun = h.patch(patch);
    PatchForms transformed;
    auto a_theta = forms.a_theta;
    auto a_phi = forms.a_phi;
    auto b = forms.b;
    transformed.a_theta = [hfun, a_theta, fd_step](ChartPoint x) {
      GroupElement hx = hfun(x);
      return add(adjoint(hx, a_theta(x)),
                 scale(-1.0, maurer_cartan_term(hfun, x, true, fd_step)));
    };
    transformed.a_phi = [hfun, a_phi, fd_step](ChartPoint x) {
      GroupElement hx = hfun(x);
      return add(adjoint(hx, a_phi(x)),
                 scale(-1.0, maurer_cartan_term(hfun, x, false, fd_step)));
    };
    transformed.b = [hfun, b, covering](ChartPoint x) {
      // Adjoint of B through the covering: tau_bar^-1 Ad_h tau_bar.
      return covering.dtau_inv(adjoint(hfun(x), covering.dtau(b(x))));
    };
    (patch == Patch::North ? out.north : out.south) = transformed;
  }
  auto transition = conn.transition;
  auto hn = h.north;
  auto hs = h.south;
  out.transition = [transition, hn, hs](ChartPoint x) {
    return mul(mul(hn(x), transition(x)), inverse(hs(x)));
  };
  return out;
}

GaugeFunction compose(const GaugeFunction& h_second, const GaugeFunction& h_first) {
  GaugeFunction out;
  auto n2 = h_second.north;
  auto n1 = h_first.north;
  auto s2 = h_second.south;
  auto s1 = h_first.south;
  out.north = [n2, n1](ChartPoint x) { return mul(n2(x), n1(x)); };
  out.south = [s2, s1](ChartPoint x) { return mul(s2(x), s1(x)); };
  return out;
}

double structural_residual(const LocalConnection& conn, Patch patch,
                           ChartPoint point, double fd_step) {
  AlgebraElement lhs = conn.covering.dtau(conn.patch(patch).b(point));
  AlgebraElement rhs = curvature(conn, patch, point, fd_step);
  return algebra_distance(lhs, rhs);
}

double max_structural_residual(const LocalConnection& conn, Patch patch,
                               int grid, double fd_step) {
  double theta_lo = patch == Patch::North
                        ? 0.02
                        : kPi / 2.0 - conn.cover.overlap_halfwidth + 0.02;
  double theta_hi = patch == Patch::North
                        ? kPi / 2.0 + conn.cover.overlap_halfwidth - 0.02
                        : kPi - 0.02;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    double theta = theta_lo + (theta_hi - theta_lo) * (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      double phi = 2.0 * kPi * (j + 0.5) / grid;
      worst = std::max(worst,
                       structural_residual(conn, patch, {theta, phi}, fd_step));
    }
  }
  return worst;
}

double transition_residual(const LocalConnection& conn, double phi,
                           double fd_step) {
  ChartPoint x{kPi / 2.0, phi};
  GroupElement g = conn.transition(x);
  GroupElement g_inv = inverse(g);

  auto mc_component = [&](bool theta_direction) {
    ChartPoint plus = x, minus = x;
    (theta_direction ? plus.theta : plus.phi) += fd_step;
    (theta_direction ? minus.theta : minus.phi) -= fd_step;
    AlgebraElement out;
    out.tag = g.tag;
    out.m = ((conn.transition(plus).m - conn.transition(minus).m) /
             (2.0 * fd_step)) *
            g_inv.m;
    return out;
  };

  AlgebraElement res_theta =
      add(add(conn.north.a_theta(x),
              scale(-1.0, adjoint(g, conn.south.a_theta(x)))),
          mc_component(true));
  AlgebraElement res_phi =
      add(add(conn.north.a_phi(x), scale(-1.0, adjoint(g, conn.south.a_phi(x)))),
          mc_component(false));

  return std::max(algebra_norm(res_theta), algebra_norm(res_phi));
}

double max_transition_residual(const LocalConnection& conn, int samples,
                               double fd_step) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double phi = 2.0 * kPi * (i + 0.5) / samples;
    worst = std::max(worst, transition_residual(conn, phi, fd_step));
  }
  return worst;
}

}  // namespace holonomy
