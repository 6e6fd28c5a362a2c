#include "holonomy/report_json.hpp"

#include <chrono>
#include <cmath>
#include <complex>

namespace holonomy {

namespace {

const std::complex<double> kI(0.0, 1.0);

CoveringPair family_covering(Family family, int n) {
  switch (family) {
    case Family::U1: return CoveringPair::u1();
    case Family::SO3: return CoveringPair::so3();
    case Family::SUnZn: return CoveringPair::sun_zn(n);
    case Family::Un: return CoveringPair::un(n);
  }
  throw UnsupportedFamily("unknown family");
}

/// The family generator c with A_N = (c/2)(1 - cos theta) d phi.
AlgebraElement family_generator(Family family, int n, int charge) {
  AlgebraElement c;
  switch (family) {
    case Family::U1:
      c.tag = GroupTag::U1;
      c.m = Eigen::MatrixXcd(1, 1);
      c.m(0, 0) = -kI * static_cast<double>(charge);
      return c;
    case Family::SO3:
      c.tag = GroupTag::SO3;
      c.m = static_cast<double>(charge) * so3_generator(3);
      return c;
    case Family::SUnZn:
      c.tag = GroupTag::PSUn;
      c.m = static_cast<double>(charge) * sun_flux_generator(n);
      return c;
    case Family::Un:
      c.tag = GroupTag::Un;
      c.m = -kI * static_cast<double>(charge) * Eigen::MatrixXcd::Identity(n, n);
      return c;
  }
  throw UnsupportedFamily("unknown family");
}

std::function<GroupElement(ChartPoint)> family_transition(Family family, int n,
                                                          int charge) {
  switch (family) {
    case Family::U1:
      return [charge](ChartPoint x) {
        double phi = x.phi;
        GroupElement g;
        g.tag = GroupTag::U1;
        g.m = Eigen::MatrixXcd(1, 1);
        g.m(0, 0) = std::exp(kI * static_cast<double>(charge) * phi);
        return g;
      };
    case Family::SO3:
      return [charge](ChartPoint x) {
        // exp(-charge * phi * J3): rotation about z by -charge * phi.
        double a = charge * x.phi;
        GroupElement g;
        g.tag = GroupTag::SO3;
        g.m = Eigen::MatrixXcd::Zero(3, 3);
        g.m(0, 0) = std::cos(a);
        g.m(0, 1) = std::sin(a);
        g.m(1, 0) = -std::sin(a);
        g.m(1, 1) = std::cos(a);
        g.m(2, 2) = 1.0;
        return g;
      };
    case Family::SUnZn:
      return [n, charge](ChartPoint x) {
        double phi = x.phi;
        GroupElement g;
        g.tag = GroupTag::PSUn;
        g.m = Eigen::MatrixXcd::Identity(n, n);
        std::complex<double> shared = std::exp(-kI * (charge * phi / n));
        for (int i = 0; i < n - 1; ++i) g.m(i, i) = shared;
        g.m(n - 1, n - 1) = std::exp(kI * (charge * phi * (n - 1) / n));
        return g;
      };
    case Family::Un:
      return [n, charge](ChartPoint x) {
        double phi = x.phi;
        GroupElement g;
        g.tag = GroupTag::Un;
        g.m = std::exp(kI * static_cast<double>(charge) * phi) *
              Eigen::MatrixXcd::Identity(n, n);
        return g;
      };
  }
  throw UnsupportedFamily("unknown family");
}

void validate_family_size(Family family, int n) {
  bool ok = true;
  switch (family) {
    case Family::U1: ok = n == 1; break;
    case Family::SO3: ok = n == 2 || n == 3; break;
    case Family::SUnZn:
    case Family::Un: ok = n >= 1 && n <= 8; break;
  }
  if (!ok) {
    throw UnsupportedFamily(std::string("unsupported size n=") +
                            std::to_string(n) + " for family " +
                            family_name(family));
  }
}

}  // namespace

const char* family_name(Family family) {
  switch (family) {
    case Family::U1: return "u1";
    case Family::SO3: return "so3";
    case Family::SUnZn: return "sunzn";
    case Family::Un: return "un";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "u1") return Family::U1;
  if (name == "so3") return Family::SO3;
  if (name == "sunzn") return Family::SUnZn;
  if (name == "un") return Family::Un;
  throw UnsupportedFamily("unknown family '" + name + "'");
}

const char* method_name(FluxMethod method) {
  switch (method) {
    case FluxMethod::Lift: return "lift";
    case FluxMethod::Integral: return "integral";
    case FluxMethod::Both: return "both";
  }
  return "?";
}

FluxMethod method_from_name(const std::string& name) {
  if (name == "lift") return FluxMethod::Lift;
  if (name == "integral") return FluxMethod::Integral;
  if (name == "both") return FluxMethod::Both;
  throw UnsupportedFamily("unknown method '" + name + "'");
}

MonopoleConfig make_config(Family family, int n, int charge) {
  if (family == Family::U1) n = 1;
  if (family == Family::SO3) n = 3;
  validate_family_size(family, n);

  MonopoleConfig config;
  config.family = family;
  config.n = n;
  config.charge = charge;
  if (family == Family::SUnZn) {
    int reduced = ((charge % n) + n) % n;
    if (reduced != charge) {
      config.note = "charge reduced mod " + std::to_string(n) + " from " +
                    std::to_string(charge);
      config.charge = reduced;
    }
  }

  config.covering = family_covering(family, n);
  config.cover = SphereCover{};

  AlgebraElement c = family_generator(family, n, config.charge);
  CoveringPair covering = config.covering;

  LocalConnection conn{
      PatchForms{}, PatchForms{}, family_transition(family, n, config.charge),
      covering, config.cover};
  AlgebraElement zero = algebra_zero(c.tag, c.dim());
  conn.north.a_theta = [zero](ChartPoint) { return zero; };
  conn.south.a_theta = [zero](ChartPoint) { return zero; };
  conn.north.a_phi = [c, zero](ChartPoint x) {
    return add(scale(0.5 * (1.0 - std::cos(x.theta)), c), zero);
  };
  conn.south.a_phi = [c, zero](ChartPoint x) {
    return add(scale(-0.5 * (1.0 + std::cos(x.theta)), c), zero);
  };
  // B = tau_bar^-1 of the curvature (c/2) sin(theta), exact closed form.
  auto b = [c, covering](ChartPoint x) {
    return covering.dtau_inv(scale(0.5 * std::sin(x.theta), c));
  };
  conn.north.b = b;
  conn.south.b = b;
  config.connection = conn;

  double structural = std::max(
      max_structural_residual(config.connection, Patch::North, 8),
      max_structural_residual(config.connection, Patch::South, 8));
  double transition = max_transition_residual(config.connection, 16);
  if (structural > 1e-4 || transition > 1e-4) {
    throw NumericalFailure("make_config: cocycle data fails validation");
  }
  return config;
}

long expected_flux_index(const MonopoleConfig& config) {
  switch (config.family) {
    case Family::U1:
      return -config.charge;
    case Family::SO3:
      return ((config.charge % 2) + 2) % 2;
    case Family::SUnZn:
      return ((config.charge % config.n) + config.n) % config.n;
    case Family::Un:
      return -static_cast<long>(config.charge) * config.n;
  }
  throw UnsupportedFamily("unknown family");
}

FluxReport magnetic_flux(const MonopoleConfig& config, FluxMethod method,
                         const TransportConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  FluxReport report;
  report.family = config.family;
  report.n = config.n;
  report.charge = config.charge;
  report.method = method;
  report.samples = cfg.steps;
  report.tolerance = cfg.tolerance;
  report.note = config.note;

  if (method == FluxMethod::Both) {
    CompareReport compared =
        compare_methods(config.connection, config.cover, config.covering, cfg);
    report.flux = config.covering.kernel_element(compared.kernel_index);
    report.kernel_index = compared.kernel_index;
    report.snap_distance =
        std::max(compared.lift.snap_distance, compared.integral.snap_distance);
    report.lift_samples = compared.lift.resolution;
    report.integral_resolution = compared.integral.resolution;
    report.agree = compared.agree;
  } else if (method == FluxMethod::Lift) {
    SurfaceTransportResult result = surface_holonomy_lift(
        config.connection, config.cover, config.covering, cfg);
    report.flux = config.covering.kernel_element(*result.kernel_index);
    report.kernel_index = *result.kernel_index;
    report.snap_distance = result.snap_distance;
    report.lift_samples = result.resolution;
  } else {
    SurfaceTransportResult result =
        glued_sphere_integral(config.connection, config.cover, cfg);
    report.flux = config.covering.kernel_element(*result.kernel_index);
    report.kernel_index = *result.kernel_index;
    report.snap_distance = result.snap_distance;
    report.integral_resolution = result.resolution;
  }

  auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 -
                                                                            t0)
          .count();
  return report;
}

namespace {

nlohmann::ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      out.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return out;
}

}  // namespace

nlohmann::ordered_json flux_report_json(const FluxReport& report) {
  nlohmann::ordered_json flux;
  switch (report.family) {
    case Family::U1:
      flux = {{"kind", "integer"}, {"value", report.kernel_index}};
      break;
    case Family::SO3:
    case Family::SUnZn:
      flux = {{"kind", "matrix"}, {"value", matrix_json(report.flux.m)}};
      break;
    case Family::Un:
      flux = {{"kind", "pair"},
              {"value",
               {{"matrix", matrix_json(report.flux.m)},
                {"real", std::lround(report.flux.r)}}}};
      break;
  }
  nlohmann::ordered_json out{
      {"family", family_name(report.family)},
      {"n", report.n},
      {"charge", report.charge},
      {"method", method_name(report.method)},
      {"flux", flux},
      {"snap_distance", report.snap_distance},
      {"samples", report.samples},
      {"tolerance", report.tolerance},
      {"agree", report.agree ? nlohmann::ordered_json(*report.agree)
                             : nlohmann::ordered_json(nullptr)},
      {"elapsed_ms", report.elapsed_ms},
      {"resolutions",
       {{"lift_samples", report.lift_samples},
        {"integral_resolution", report.integral_resolution}}},
  };
  if (report.note) out["note"] = *report.note;
  return out;
}

}  // namespace holonomy
