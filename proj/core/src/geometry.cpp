#include "holonomy/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace holonomy {

namespace {

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

std::pair<double, double> Path::velocity(double t, double h) const {
  double a = std::max(0.0, t - h);
  double b = std::min(1.0, t + h);
  ChartPoint pa = eval(a);
  ChartPoint pb = eval(b);
  double w = b - a;
  return {(pb.theta - pa.theta) / w, (pb.phi - pa.phi) / w};
}

Path constant_path(ChartPoint p, PatchHint hint) {
  Path path;
  path.eval = [p](double) { return p; };
  path.sitting = 0.5;
  path.hint = hint;
  return path;
}

Path meridian(double theta0, double theta1, double phi, PatchHint hint) {
  Path path;
  path.eval = [=](double t) { return ChartPoint{theta0 + (theta1 - theta0) * t, phi}; };
  path.hint = hint;
  return path;
}

Path latitude_arc(double theta, double phi0, double phi1, PatchHint hint) {
  Path path;
  path.eval = [=](double t) { return ChartPoint{theta, phi0 + (phi1 - phi0) * t}; };
  path.hint = hint;
  return path;
}

Path reverse(const Path& p) {
  Path out;
  auto eval = p.eval;
  out.eval = [eval](double t) { return eval(1.0 - t); };
  out.breaks.reserve(p.breaks.size());
  for (auto it = p.breaks.rbegin(); it != p.breaks.rend(); ++it) {
    out.breaks.push_back(1.0 - *it);
  }
  out.sitting = p.sitting;
  out.hint = p.hint;
  return out;
}

Path concat(const Path& p, const Path& q, double tol) {
  ChartPoint qe = q.end();
  ChartPoint ps = p.start();
  if (std::abs(qe.theta - ps.theta) > tol || std::abs(qe.phi - ps.phi) > tol) {
    throw EndpointMismatch("concat: q must end where p starts");
  }
  Path out;
  auto pe = p.eval;
  auto qev = q.eval;
  out.eval = [pe, qev](double t) {
    return t <= 0.5 ? qev(2.0 * t) : pe(2.0 * t - 1.0);
  };
  for (double b : q.breaks) out.breaks.push_back(b / 2.0);
  out.breaks.push_back(0.5);
  for (double b : p.breaks) out.breaks.push_back(0.5 + b / 2.0);
  out.hint = p.hint == q.hint ? p.hint : PatchHint::Overlap;
  return out;
}

double smooth_ramp(double t, double margin) {
  double u = clamp01((t - margin) / (1.0 - 2.0 * margin));
  double a = bump(u);
  double b = bump(1.0 - u);
  return a / (a + b);
}

Path reparametrize(const Path& p, std::function<double(double)> map) {
  Path out;
  auto eval = p.eval;
  out.eval = [eval, map](double t) { return eval(map(clamp01(t))); };
  // Pull interior corners back through the monotone map by bisection.
  for (double b : p.breaks) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
      double mid = 0.5 * (lo + hi);
      (map(mid) < b ? lo : hi) = mid;
    }
    out.breaks.push_back(0.5 * (lo + hi));
  }
  out.hint = p.hint;
  return out;
}

Path Bigon::slice(double s) const {
  Path out;
  auto ev = eval;
  out.eval = [ev, s](double t) { return ev(t, s); };
  out.breaks = t_breaks;
  out.hint = hint;
  return out;
}

bool SphereCover::contains(Patch patch, double theta) const {
  constexpr double kSlack = 1e-12;
  if (patch == Patch::North) {
    return theta <= kPi / 2.0 + overlap_halfwidth + kSlack;
  }
  return theta >= kPi / 2.0 - overlap_halfwidth - kSlack;
}

void SphereCover::require_inside(Patch patch, double theta) const {
  if (!contains(patch, theta)) {
    throw OutOfPatch("point at theta=" + std::to_string(theta) +
                     " outside patch " +
                     (patch == Patch::North ? "North" : "South"));
  }
}

namespace {

ChartPoint lasso_point(double theta, double phi0, double t) {
  if (t <= 0.25) {
    return {kPi / 2.0 + (theta - kPi / 2.0) * (4.0 * t), phi0};
  }
  if (t <= 0.75) {
    return {theta, phi0 + 2.0 * kPi * (2.0 * t - 0.5)};
  }
  return {kPi / 2.0 + (theta - kPi / 2.0) * (4.0 - 4.0 * t), phi0 + 2.0 * kPi};
}

}  // namespace

Path based_latitude_loop(const SphereCover& cover, double theta) {
  Path out;
  double phi0 = cover.basepoint_phi;
  out.eval = [theta, phi0](double t) { return lasso_point(theta, phi0, t); };
  out.breaks = {0.25, 0.75};
  out.hint = theta <= kPi / 2.0 ? PatchHint::North : PatchHint::South;
  return out;
}

MonopoleBigons monopole_bigons(const SphereCover& cover) {
  double phi0 = cover.basepoint_phi;
  MonopoleBigons out;
  out.north.eval = [phi0](double t, double s) {
    return lasso_point(s * kPi / 2.0, phi0, t);
  };
  out.north.t_breaks = {0.25, 0.75};
  out.north.hint = PatchHint::North;
  out.south.eval = [phi0](double t, double s) {
    return lasso_point(kPi / 2.0 + s * kPi / 2.0, phi0, t);
  };
  out.south.t_breaks = {0.25, 0.75};
  out.south.hint = PatchHint::South;
  out.equator = based_latitude_loop(cover, kPi / 2.0);
  return out;
}

double swept_area(const MonopoleBigons& bigons, int resolution) {
  auto composite = [&](double t, double s) {
    return s <= 0.5 ? bigons.north.eval(t, 2.0 * s)
                    : bigons.south.eval(t, 2.0 * s - 1.0);
  };
  // Midpoint panels aligned with the t corner points and the s junction.
  std::vector<double> tcuts = {0.0};
  for (double b : bigons.north.t_breaks) tcuts.push_back(b);
  tcuts.push_back(1.0);
  std::sort(tcuts.begin(), tcuts.end());

  const double h = 1e-6;
  double total = 0.0;
  for (std::size_t seg = 0; seg + 1 < tcuts.size(); ++seg) {
    double t0 = tcuts[seg], t1 = tcuts[seg + 1];
    int nt = std::max(1, static_cast<int>(std::lround(resolution * (t1 - t0))));
    double dt = (t1 - t0) / nt;
    for (int i = 0; i < nt; ++i) {
      double t = t0 + (i + 0.5) * dt;
      for (int half = 0; half < 2; ++half) {
        double s0 = half * 0.5;
        int ns = std::max(1, resolution / 2);
        double ds = 0.5 / ns;
        for (int j = 0; j < ns; ++j) {
          double s = s0 + (j + 0.5) * ds;
          ChartPoint pt = composite(t + h, s);
          ChartPoint mt = composite(t - h, s);
          ChartPoint ps = composite(t, s + h);
          ChartPoint ms = composite(t, s - h);
          double theta_t = (pt.theta - mt.theta) / (2.0 * h);
          double phi_t = (pt.phi - mt.phi) / (2.0 * h);
          double theta_s = (ps.theta - ms.theta) / (2.0 * h);
          double phi_s = (ps.phi - ms.phi) / (2.0 * h);
          double sin_theta = std::sin(composite(t, s).theta);
          total += sin_theta * (theta_t * phi_s - theta_s * phi_t) * dt * ds;
        }
      }
    }
  }
  return total;
}

}  // namespace holonomy
