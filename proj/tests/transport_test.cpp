#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "holonomy/checks.hpp"
#include "holonomy/monopole.hpp"

using namespace holonomy;

namespace {

const std::complex<double> kI(0.0, 1.0);

/// Flat test chart over the identity SU(2) cover: constant noncommuting
/// coefficients A = i s1 d theta + i s2 d phi, B unused.
LocalConnection flat_su2_connection() {
  LocalConnection conn;
  conn.covering = CoveringPair::identity(GroupTag::SU2, 2);
  conn.cover = SphereCover{};
  AlgebraElement a1 = algebra_zero(GroupTag::SU2, 2);
  a1.m = kI * pauli(1);
  AlgebraElement a2 = algebra_zero(GroupTag::SU2, 2);
  a2.m = kI * pauli(2);
  AlgebraElement zero = algebra_zero(GroupTag::SU2, 2);
  conn.north.a_theta = [a1](ChartPoint) { return a1; };
  conn.north.a_phi = [a2](ChartPoint) { return a2; };
  conn.north.b = [zero](ChartPoint) { return zero; };
  conn.south = conn.north;
  conn.transition = [](ChartPoint) { return group_identity(GroupTag::SU2, 2); };
  return conn;
}

/// Independent su(2) exponential for the brute-force oracle.
Eigen::Matrix2cd su2_exp(double x, double y, double z) {
  double r = std::sqrt(x * x + y * y + z * z);
  Eigen::Matrix2cd v = x * pauli(1) + y * pauli(2) + z * pauli(3);
  if (r < 1e-300) return Eigen::Matrix2cd::Identity();
  return std::cos(r) * Eigen::Matrix2cd::Identity() +
         kI * (std::sin(r) / r) * v;
}

Path l_path() {
  Path first = meridian(0.0, 1.0, 0.0, PatchHint::North);
  Path second = latitude_arc(1.0, 0.0, 1.0, PatchHint::North);
  return concat(second, first);
}

}  // namespace

TEST_CASE("transport of the zero connection is the identity") {
  MonopoleConfig config = make_config(Family::U1, 1, 0);
  TransportConfig cfg;
  GroupElement hol =
      loop_holonomy(config.connection, config.cover, 1.2, cfg);
  CHECK(frobenius_distance(hol, config.covering.base_identity()) < 1e-12);
}

TEST_CASE("abelian monopole loop holonomies match the closed form") {
  TransportConfig cfg;
  for (int n : {1, 2, -3}) {
    MonopoleConfig config = make_config(Family::U1, 1, n);
    for (double theta : {0.0, 0.3, 1.0, 1.5}) {
      GroupElement hol =
          loop_holonomy(config.connection, config.cover, theta, cfg);
      std::complex<double> expected =
          std::exp(-kI * (n * kPi * (1.0 - std::cos(theta))));
      CHECK(std::abs(hol.m(0, 0) - expected) < 1e-9);
    }
  }
}

TEST_CASE("both equator branches give the matching value (-1)^n") {
  TransportConfig cfg;
  for (int n : {1, 2, 3}) {
    MonopoleConfig config = make_config(Family::U1, 1, n);
    Path equator = based_latitude_loop(config.cover, kPi / 2.0);
    GroupElement from_north =
        path_transport(config.connection, Patch::North, equator, cfg);
    GroupElement south =
        path_transport(config.connection, Patch::South, equator, cfg);
    GroupElement jump =
        config.connection.transition(config.cover.basepoint());
    GroupElement from_south = mul(mul(jump, south), inverse(jump));
    std::complex<double> expected = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(from_north.m(0, 0) - expected) < 1e-9);
    CHECK(std::abs(from_south.m(0, 0) - expected) < 1e-9);
    CHECK(frobenius_distance(from_north, from_south) < 1e-9);
  }
}

TEST_CASE("SO(3) loop holonomy is the rotation exp(pi J3 (1 - cos theta))") {
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  TransportConfig cfg;
  for (double theta : {0.4, 1.1, kPi / 2.0, 2.3}) {
    GroupElement hol =
        loop_holonomy(config.connection, config.cover, theta, cfg);
    double angle = kPi * (1.0 - std::cos(theta));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(0, 0) = std::cos(angle);
    expected(0, 1) = -std::sin(angle);
    expected(1, 0) = std::sin(angle);
    expected(1, 1) = std::cos(angle);
    expected(2, 2) = 1.0;
    CHECK((hol.m - expected).norm() < 1e-9);
  }
  // At the equator this is the half-turn about z.
  GroupElement eq = loop_holonomy(config.connection, config.cover, kPi / 2.0, cfg);
  Eigen::MatrixXcd half_turn = Eigen::MatrixXcd::Identity(3, 3);
  half_turn(0, 0) = -1.0;
  half_turn(1, 1) = -1.0;
  CHECK((eq.m - half_turn).norm() < 1e-9);
}

TEST_CASE("noncommuting transport along the L-path matches the product oracle") {
  LocalConnection conn = flat_su2_connection();
  Path path = l_path();
  TransportConfig cfg;
  cfg.tolerance = 1e-10;

  GroupElement got = path_transport(conn, Patch::North, path, cfg);

  // Frozen value exp(i s1) exp(i s2), entries from the closed form.
  const double c2 = 0.2919265817264289;   // cos(1)^2
  const double s2 = 0.7080734182735712;   // sin(1)^2
  const double cs = 0.4546487134128409;   // cos(1) sin(1)
  Eigen::Matrix2cd frozen;
  frozen << std::complex<double>(c2, -s2), std::complex<double>(cs, cs),
      std::complex<double>(-cs, cs), std::complex<double>(c2, s2);
  CHECK((got.m - frozen).norm() < 1e-8);

  // Brute-force midpoint product at one million steps, with an
  // independent exponential, ordered with earlier factors on the left.
  const long steps = 1000000;
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Identity();
  for (long i = 0; i < steps; ++i) {
    double t = (i + 0.5) / steps;
    // d theta = 2 dt on the first half, d phi = 2 dt on the second.
    Eigen::Matrix2cd step = t < 0.5 ? su2_exp(2.0 / steps, 0.0, 0.0)
                                    : su2_exp(0.0, 2.0 / steps, 0.0);
    acc = acc * step;
  }
  CHECK((acc - frozen).norm() < 1e-9);
  CHECK((got.m - acc).norm() < 1e-8);
}

TEST_CASE("transport is functorial under concatenation") {
  LocalConnection conn = flat_su2_connection();
  TransportConfig cfg;
  Path first = meridian(0.0, 0.8, 0.3, PatchHint::North);
  Path second = latitude_arc(0.8, 0.3, 1.5, PatchHint::North);
  GroupElement whole =
      path_transport(conn, Patch::North, concat(second, first), cfg);
  GroupElement split = mul(path_transport(conn, Patch::North, first, cfg),
                           path_transport(conn, Patch::North, second, cfg));
  CHECK(frobenius_distance(whole, split) < 5.0 * cfg.tolerance);
}

TEST_CASE("transport only depends on the parametrization class") {
  MonopoleConfig config = make_config(Family::U1, 1, 2);
  TransportConfig cfg;
  cfg.richardson = true;
  Path loop = based_latitude_loop(config.cover, 1.0);
  GroupElement base = path_transport(config.connection, Patch::North, loop, cfg);

  Path squared = reparametrize(loop, [](double t) { return t * t; });
  GroupElement warped =
      path_transport(config.connection, Patch::North, squared, cfg);
  CHECK(frobenius_distance(base, warped) < 5.0 * cfg.tolerance);

  Path eased = reparametrize(loop, [](double t) { return smooth_ramp(t, 0.1); });
  GroupElement smooth =
      path_transport(config.connection, Patch::North, eased, cfg);
  CHECK(frobenius_distance(base, smooth) < 5.0 * cfg.tolerance);
}

TEST_CASE("reversal inverts transport") {
  LocalConnection conn = flat_su2_connection();
  TransportConfig cfg;
  Path path = l_path();
  GroupElement forward = path_transport(conn, Patch::North, path, cfg);
  GroupElement backward = path_transport(conn, Patch::North, reverse(path), cfg);
  CHECK(frobenius_distance(backward, inverse(forward)) < 5.0 * cfg.tolerance);
}

TEST_CASE("the midpoint scheme converges at second order") {
  MonopoleConfig config = make_config(Family::U1, 1, 1);
  Path loop = based_latitude_loop(config.cover, 1.2);
  Path eased = reparametrize(loop, [](double t) { return smooth_ramp(t, 0.15); });
  std::complex<double> exact =
      std::exp(-kI * (kPi * (1.0 - std::cos(1.2))));

  auto error_at = [&](int steps) {
    TransportConfig cfg;
    cfg.steps = steps;
    cfg.tolerance = 1e9;  // accept the first refinement: fixed resolution
    GroupElement hol =
        path_transport(config.connection, Patch::North, eased, cfg);
    return std::abs(hol.m(0, 0) - exact);
  };

  double e1 = error_at(64);
  double e2 = error_at(128);
  double e3 = error_at(256);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e2 / e3 >= 3.5);
}

TEST_CASE("loop holonomy is gauge covariant") {
  std::mt19937 rng(1234);
  TransportConfig cfg;
  cfg.tolerance = 1e-7;
  cfg.richardson = true;
  for (auto [family, n, charge] :
       {std::tuple{Family::U1, 1, 2}, {Family::SO3, 3, 1}}) {
    MonopoleConfig config = make_config(family, n, charge);
    GaugeFunction gauge = random_gauge(config.covering, rng);
    LocalConnection transformed = gauge_transform(config.connection, gauge);
    GroupElement at_basepoint = gauge.north(config.cover.basepoint());
    for (double theta : {0.8, 2.2}) {  // one loop per patch branch
      GroupElement hol =
          loop_holonomy(config.connection, config.cover, theta, cfg);
      GroupElement hol_after =
          loop_holonomy(transformed, config.cover, theta, cfg);
      GroupElement expected =
          mul(mul(at_basepoint, hol), inverse(at_basepoint));
      CHECK(group_distance(hol_after, expected) < 1e-6);
    }
  }
}

TEST_CASE("transport reports non-convergence on under-resolved data") {
  LocalConnection conn = flat_su2_connection();
  conn.north.a_phi = [](ChartPoint p) {
    AlgebraElement x = algebra_zero(GroupTag::SU2, 2);
    x.m = kI * std::sin(40.0 * p.phi) * pauli(2);
    return x;
  };
  Path wiggle = latitude_arc(0.9, 0.0, 2.0 * kPi, PatchHint::North);
  TransportConfig cfg;
  cfg.steps = 8;
  cfg.tolerance = 1e-12;
  CHECK_THROWS_AS(path_transport(conn, Patch::North, wiggle, cfg), NotConverged);
}

TEST_CASE("paths that leave the patch are rejected") {
  MonopoleConfig config = make_config(Family::U1, 1, 1);
  Path wander = meridian(0.2, 2.5, 0.0, PatchHint::North);
  TransportConfig cfg;
  CHECK_THROWS_AS(path_transport(config.connection, Patch::North, wander, cfg),
                  OutOfPatch);
  CHECK_THROWS_AS(
      loop_holonomy(config.connection, config.cover, 3.5, cfg), OutOfPatch);
}
