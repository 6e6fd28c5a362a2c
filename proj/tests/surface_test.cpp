#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>

#include "holonomy/checks.hpp"
#include "holonomy/monopole.hpp"

using namespace holonomy;

namespace {

const std::complex<double> kI(0.0, 1.0);

}  // namespace

TEST_CASE("the slice 1-form of the abelian monopole") {
  // In the theta parametrization (A_Sigma)_theta = (n/2) sin(theta);
  // the bigon runs theta = s pi/2, so divide out the Jacobian pi/2.
  const int n = 2;
  MonopoleConfig config = make_config(Family::U1, 1, n);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  for (double s : {0.25, 0.5, 0.8}) {
    AlgebraElement a = a_sigma(config.connection, Patch::North, bigons.north, s, 256);
    double theta = s * kPi / 2.0;
    double expected = (n / 2.0) * std::sin(theta);
    CHECK(a.r * (2.0 / kPi) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("the slice 1-form vanishes for zero curvature") {
  MonopoleConfig config = make_config(Family::U1, 1, 0);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  AlgebraElement a = a_sigma(config.connection, Patch::North, bigons.north, 0.5, 64);
  CHECK(algebra_norm(a) < 1e-12);
}

TEST_CASE("the slice 1-form of the SO(3) monopole") {
  // (A_Sigma)_theta = -(pi sigma3 / 2i) sin(theta).
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  for (double s : {0.3, 0.6}) {
    AlgebraElement a = a_sigma(config.connection, Patch::North, bigons.north, s, 256);
    double theta = s * kPi / 2.0;
    Eigen::MatrixXcd expected =
        -(kPi / (2.0 * kI)) * std::sin(theta) * pauli(3);
    CHECK((a.m * (2.0 / kPi) - expected).norm() < 1e-6);
  }
}

TEST_CASE("surface transport of the northern bigon, abelian case") {
  // k(Sigma_N) = -n/2 in R.
  for (int n : {1, 3, -2}) {
    MonopoleConfig config = make_config(Family::U1, 1, n);
    MonopoleBigons bigons = monopole_bigons(config.cover);
    TransportConfig cfg;
    SurfaceTransportResult result =
        surface_transport_integral(config.connection, Patch::North,
                                   bigons.north, cfg);
    CHECK(result.h.r == doctest::Approx(-n / 2.0).epsilon(1e-7));
    CHECK(frobenius_distance(result.source_holonomy,
                             config.covering.base_identity()) < 1e-9);
  }
}

TEST_CASE("a bigon constant in s transports to the cover identity") {
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  Bigon degenerate;
  auto eq = bigons.equator.eval;
  degenerate.eval = [eq](double t, double) { return eq(t); };
  degenerate.t_breaks = bigons.equator.breaks;
  TransportConfig cfg;
  SurfaceTransportResult result = surface_transport_integral(
      config.connection, Patch::North, degenerate, cfg);
  CHECK(frobenius_distance(result.h, config.covering.cover_identity()) < 1e-9);
}

TEST_CASE("source-target matching holds for the surface integral") {
  std::mt19937 rng(314);
  TransportConfig cfg;
  cfg.richardson = true;
  cfg.tolerance = 1e-7;
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  MonopoleBigons bigons = monopole_bigons(config.cover);

  auto check_matching = [&](const LocalConnection& conn, double tol) {
    for (Patch patch : {Patch::North, Patch::South}) {
      const Bigon& bigon = patch == Patch::North ? bigons.north : bigons.south;
      SurfaceTransportResult k =
          surface_transport_integral(conn, patch, bigon, cfg);
      GroupElement target = path_transport(conn, patch, bigon.target(), cfg);
      GroupElement matched = mul(config.covering.tau(k.h), k.source_holonomy);
      CHECK(group_distance(matched, target) < tol);
    }
  };
  check_matching(config.connection, 1e-6);

  GaugeFunction gauge = random_gauge(config.covering, rng);
  check_matching(gauge_transform(config.connection, gauge), 1e-4);
}

TEST_CASE("glued sphere transport, abelian case") {
  TransportConfig cfg;
  for (int n : {-2, 0, 3}) {
    MonopoleConfig config = make_config(Family::U1, 1, n);
    SurfaceTransportResult glued =
        glued_sphere_integral(config.connection, config.cover, cfg);
    CHECK(glued.h.r == doctest::Approx(static_cast<double>(-n)).epsilon(1e-6));
    CHECK(glued.kernel_index.value() == -n);
    CHECK(glued.snap_distance < 1e-8);
  }
}

TEST_CASE("glued sphere transport of the SO(3) monopole is -I2") {
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  TransportConfig cfg;
  SurfaceTransportResult glued =
      glued_sphere_integral(config.connection, config.cover, cfg);
  CHECK((glued.h.m + Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-6);
  CHECK(glued.kernel_index.value() == 1);
}

TEST_CASE("glued sphere transport of the U(n) monopole is (I_n, -k)") {
  TransportConfig cfg;
  for (auto [n, k] : {std::pair{1, 1}, {2, 1}, {3, -2}}) {
    MonopoleConfig config = make_config(Family::Un, n, k);
    SurfaceTransportResult glued =
        glued_sphere_integral(config.connection, config.cover, cfg);
    CHECK(glued.h.r == doctest::Approx(static_cast<double>(-k)).epsilon(1e-6));
    CHECK((glued.h.m - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-6);
  }
}

TEST_CASE("every full-sphere integral lands in the kernel of tau") {
  TransportConfig cfg;
  for (auto [family, n, charge] :
       {std::tuple{Family::U1, 1, 2}, {Family::SO3, 3, 1},
        {Family::SUnZn, 3, 1}, {Family::Un, 2, 1}}) {
    MonopoleConfig config = make_config(family, n, charge);
    SurfaceTransportResult glued =
        glued_sphere_integral(config.connection, config.cover, cfg);
    GroupElement image = config.covering.tau(glued.h);
    CHECK(group_distance(image, config.covering.base_identity()) < 1e-8);
  }
}

TEST_CASE("the loop-of-holonomies path traces the two branch formulas") {
  const int n = 2;
  MonopoleConfig config = make_config(Family::U1, 1, n);
  TransportConfig cfg;
  int samples = 64;
  std::vector<GroupElement> path =
      holonomy_loop_path(config.connection, config.cover, samples, cfg);
  REQUIRE(static_cast<int>(path.size()) == samples + 1);
  CHECK(std::abs(path.front().m(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(path.back().m(0, 0) - 1.0) < 1e-9);
  for (int j = 0; j <= samples; ++j) {
    double theta = kPi * j / samples;
    std::complex<double> expected =
        theta <= kPi / 2.0
            ? std::exp(-kI * (n * kPi * (1.0 - std::cos(theta))))
            : std::exp(kI * (n * kPi * (1.0 + std::cos(theta))));
    CHECK(std::abs(path[j].m(0, 0) - expected) < 1e-9);
  }
}

TEST_CASE("the loop-of-holonomies path of SU(3)/Z(3) traces the class formulas") {
  const int n = 3, k = 1;
  MonopoleConfig config = make_config(Family::SUnZn, n, k);
  TransportConfig cfg;
  int samples = 32;
  std::vector<GroupElement> path =
      holonomy_loop_path(config.connection, config.cover, samples, cfg);
  Eigen::MatrixXcd x = sun_flux_generator(n);
  for (int j = 0; j <= samples; ++j) {
    double theta = kPi * j / samples;
    Eigen::MatrixXcd arg = theta <= kPi / 2.0
                               ? Eigen::MatrixXcd(k * kPi * (1.0 - std::cos(theta)) * x)
                               : Eigen::MatrixXcd(-k * kPi * (1.0 + std::cos(theta)) * x);
    Eigen::MatrixXcd rep = arg.exp();
    GroupElement expected;
    expected.tag = GroupTag::PSUn;
    expected.m = rep;
    CHECK(group_distance(path[j], expected) < 1e-9);
  }
}

TEST_CASE("the zero connection gives the constant loop path") {
  MonopoleConfig config = make_config(Family::U1, 1, 0);
  TransportConfig cfg;
  for (const GroupElement& g :
       holonomy_loop_path(config.connection, config.cover, 16, cfg)) {
    CHECK(std::abs(g.m(0, 0) - 1.0) < 1e-12);
  }
}

TEST_CASE("coarse sampling of a fast-winding family is rejected") {
  MonopoleConfig config = make_config(Family::U1, 1, 5);
  TransportConfig cfg;
  CHECK_THROWS_AS(
      holonomy_loop_path(config.connection, config.cover, 16, cfg),
      StepTooLarge);
}

TEST_CASE("covering-space lift of the monopole loop paths") {
  TransportConfig cfg;

  MonopoleConfig u1 = make_config(Family::U1, 1, 2);
  SurfaceTransportResult lift_u1 =
      surface_holonomy_lift(u1.connection, u1.cover, u1.covering, cfg);
  CHECK(lift_u1.kernel_index.value() == -2);
  CHECK(lift_u1.h.r == doctest::Approx(-2.0));
  CHECK(lift_u1.snap_distance < 1e-9);

  MonopoleConfig so3 = make_config(Family::SO3, 3, 1);
  SurfaceTransportResult lift_so3 =
      surface_holonomy_lift(so3.connection, so3.cover, so3.covering, cfg);
  CHECK((lift_so3.h.m + Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

  MonopoleConfig flat = make_config(Family::SUnZn, 3, 0);
  SurfaceTransportResult lift_flat =
      surface_holonomy_lift(flat.connection, flat.cover, flat.covering, cfg);
  CHECK(frobenius_distance(lift_flat.h, flat.covering.cover_identity()) <
        1e-12);
}

TEST_CASE("the two methods agree on the catalog") {
  TransportConfig cfg;
  for (int n : {-3, -1, 0, 2, 3}) {
    MonopoleConfig config = make_config(Family::U1, 1, n);
    CompareReport report =
        compare_methods(config.connection, config.cover, config.covering, cfg);
    CHECK(report.agree);
    CHECK(report.kernel_index == -n);
  }
  for (int k : {0, 1, 2}) {
    MonopoleConfig config = make_config(Family::SUnZn, 3, k);
    CompareReport report =
        compare_methods(config.connection, config.cover, config.covering, cfg);
    CHECK(report.agree);
    CHECK(report.kernel_index == k);
    Eigen::MatrixXcd expected = std::exp(kI * (2.0 * kPi * k / 3.0)) *
                                Eigen::MatrixXcd::Identity(3, 3);
    CHECK((report.lift.h.m - expected).norm() < 1e-9);
  }
}

TEST_CASE("the flux does not depend on the marking basepoint") {
  TransportConfig cfg;
  for (auto [family, n, charge] :
       {std::tuple{Family::U1, 1, 2}, {Family::SO3, 3, 1},
        {Family::SUnZn, 3, 2}, {Family::Un, 2, 1}}) {
    MonopoleConfig config = make_config(family, n, charge);
    long reference = 0;
    bool first = true;
    for (double phi0 : {0.0, kPi / 4.0, kPi}) {
      SphereCover cover;
      cover.basepoint_phi = phi0;
      LocalConnection conn = config.connection;
      conn.cover = cover;
      CompareReport report =
          compare_methods(conn, cover, config.covering, cfg);
      if (first) {
        reference = report.kernel_index;
        first = false;
      }
      CHECK(report.kernel_index == reference);
    }
  }
}

TEST_CASE("the lift only depends on the homotopy class of the sweep") {
  TransportConfig cfg;
  MonopoleConfig config = make_config(Family::SUnZn, 3, 1);
  SurfaceTransportResult straight =
      surface_holonomy_lift(config.connection, config.cover, config.covering, cfg);
  ThetaProfile wavy = [](double s) {
    return kPi * s + 0.35 * std::sin(2.0 * kPi * s) * s * (1.0 - s) * 4.0;
  };
  SurfaceTransportResult perturbed = surface_holonomy_lift(
      config.connection, config.cover, config.covering, cfg, wavy);
  CHECK(perturbed.kernel_index.value() == straight.kernel_index.value());
  CHECK(frobenius_distance(perturbed.h, straight.h) == 0.0);
}

TEST_CASE("the snapped flux is stable under resolution doubling") {
  MonopoleConfig config = make_config(Family::Un, 2, 1);
  TransportConfig coarse;
  coarse.steps = 256;
  TransportConfig fine;
  fine.steps = 512;
  CompareReport a =
      compare_methods(config.connection, config.cover, config.covering, coarse);
  CompareReport b =
      compare_methods(config.connection, config.cover, config.covering, fine);
  CHECK(a.kernel_index == b.kernel_index);
}

TEST_CASE("methods that measure different data disagree loudly") {
  // Doubling B breaks tau_bar(B) = dA + [A,A]/2, so the surface integral
  // sees twice the flux the lift sees.
  MonopoleConfig config = make_config(Family::U1, 1, 2);
  LocalConnection broken = config.connection;
  auto b = config.connection.north.b;
  broken.north.b = [b](ChartPoint x) { return scale(2.0, b(x)); };
  broken.south.b = broken.north.b;
  TransportConfig cfg;
  try {
    compare_methods(broken, config.cover, config.covering, cfg);
    FAIL("expected MethodDisagreement");
  } catch (const MethodDisagreement& e) {
    CHECK(e.lift_index == -2);
    CHECK(e.integral_index == -4);
  }
}

TEST_CASE("the flux is unchanged under a random gauge transform") {
  std::mt19937 rng(2718);
  TransportConfig cfg;
  TransportConfig gauge_cfg;
  gauge_cfg.richardson = true;
  gauge_cfg.tolerance = 1e-7;
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  CompareReport before =
      compare_methods(config.connection, config.cover, config.covering, cfg);
  GaugeFunction gauge = random_gauge(config.covering, rng);
  LocalConnection transformed = gauge_transform(config.connection, gauge);
  CompareReport after =
      compare_methods(transformed, config.cover, config.covering, gauge_cfg);
  CHECK(after.kernel_index == before.kernel_index);
  CHECK(frobenius_distance(after.lift.h, before.lift.h) == 0.0);
}
