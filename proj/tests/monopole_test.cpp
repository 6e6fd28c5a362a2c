#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "holonomy/checks.hpp"
#include "holonomy/cli.hpp"
#include "holonomy/report_json.hpp"

using namespace holonomy;

namespace {

const std::complex<double> kI(0.0, 1.0);

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return nlohmann::ordered_json::parse(in);
}

}  // namespace

TEST_CASE("catalog transition functions") {
  MonopoleConfig u1 = make_config(Family::U1, 1, 3);
  for (double phi : {0.3, 2.0}) {
    CHECK(std::abs(u1.connection.transition_at(phi).m(0, 0) -
                   std::exp(kI * (3.0 * phi))) < 1e-14);
  }

  MonopoleConfig so3 = make_config(Family::SO3, 3, 1);
  for (double phi : {0.0, 1.1}) {
    AlgebraElement x = algebra_zero(GroupTag::SO3, 3);
    x.m = -phi * so3_generator(3);
    CHECK(frobenius_distance(so3.connection.transition_at(phi), exp(x)) < 1e-12);
  }
  CHECK(group_distance(so3.connection.transition_at(0.0),
                       group_identity(GroupTag::SO3, 3)) < 1e-14);

  MonopoleConfig sun = make_config(Family::SUnZn, 3, 1);
  Eigen::MatrixXcd arg = -1.3 * sun_flux_generator(3);
  Eigen::MatrixXcd rep = arg.exp();
  GroupElement expected;
  expected.tag = GroupTag::PSUn;
  expected.m = rep;
  CHECK(group_distance(sun.connection.transition_at(1.3), expected) < 1e-12);

  MonopoleConfig un = make_config(Family::Un, 2, 2);
  CHECK((un.connection.transition_at(0.7).m -
         std::exp(kI * 1.4) * Eigen::MatrixXcd::Identity(2, 2))
            .norm() < 1e-14);
}

TEST_CASE("flat SU(n)/Z(n) configuration has trivial flux") {
  MonopoleConfig config = make_config(Family::SUnZn, 3, 0);
  TransportConfig cfg;
  FluxReport report = magnetic_flux(config, FluxMethod::Both, cfg);
  CHECK(report.kernel_index == 0);
  CHECK((report.flux.m - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);
  CHECK(report.agree.value());
}

TEST_CASE("magnetic flux values of the catalog families") {
  TransportConfig cfg;

  FluxReport u1 = magnetic_flux(make_config(Family::U1, 1, 4), FluxMethod::Both, cfg);
  CHECK(u1.kernel_index == -4);
  CHECK(u1.flux.r == doctest::Approx(-4.0));
  CHECK(u1.snap_distance < 1e-4);

  FluxReport sun =
      magnetic_flux(make_config(Family::SUnZn, 3, 2), FluxMethod::Both, cfg);
  Eigen::MatrixXcd expected = std::exp(kI * (4.0 * kPi / 3.0)) *
                              Eigen::MatrixXcd::Identity(3, 3);
  CHECK((sun.flux.m - expected).norm() < 1e-12);

  FluxReport un = magnetic_flux(make_config(Family::Un, 2, 1), FluxMethod::Both, cfg);
  CHECK((un.flux.m - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  CHECK(un.flux.r == doctest::Approx(-1.0));
}

TEST_CASE("single-method reports carry no agreement claim") {
  TransportConfig cfg;
  MonopoleConfig config = make_config(Family::U1, 1, 1);
  FluxReport lift = magnetic_flux(config, FluxMethod::Lift, cfg);
  CHECK_FALSE(lift.agree.has_value());
  CHECK(lift.kernel_index == -1);
  FluxReport integral = magnetic_flux(config, FluxMethod::Integral, cfg);
  CHECK_FALSE(integral.agree.has_value());
  CHECK(integral.kernel_index == -1);
}

TEST_CASE("fluxes are fixed points of the action") {
  std::mt19937 rng(99);
  TransportConfig cfg;
  for (auto [family, n, charge] :
       {std::tuple{Family::U1, 1, 2}, {Family::SO3, 3, 1},
        {Family::SUnZn, 3, 1}, {Family::Un, 2, 1}}) {
    MonopoleConfig config = make_config(family, n, charge);
    FluxReport report = magnetic_flux(config, FluxMethod::Lift, cfg);
    CoveringCrossedModule cm{config.covering};
    for (int i = 0; i < 20; ++i) {
      GroupElement g = random_base_element(config.covering, rng);
      GroupElement acted = cm.act(g, report.flux);
      CHECK(frobenius_distance(acted, report.flux) < 1e-12);
    }
  }
}

TEST_CASE("SU(n)/Z(n) charges are reduced mod n with a note") {
  MonopoleConfig config = make_config(Family::SUnZn, 3, 5);
  CHECK(config.charge == 2);
  REQUIRE(config.note.has_value());
  CHECK(config.note->find("reduced mod 3") != std::string::npos);

  MonopoleConfig negative = make_config(Family::SUnZn, 3, -1);
  CHECK(negative.charge == 2);
}

TEST_CASE("unknown families and sizes are rejected") {
  CHECK_THROWS_AS(family_from_name("su5"), UnsupportedFamily);
  CHECK_THROWS_AS(make_config(Family::Un, 11, 1), UnsupportedFamily);
  CHECK_THROWS_AS(method_from_name("quadrature"), UnsupportedFamily);
}

TEST_CASE("flux reports serialize to the stable schema") {
  TransportConfig cfg;
  FluxReport report =
      magnetic_flux(make_config(Family::SUnZn, 3, 1), FluxMethod::Both, cfg);
  nlohmann::ordered_json payload = flux_report_json(report);

  for (const char* key : {"family", "n", "charge", "method", "flux",
                          "snap_distance", "samples", "tolerance", "agree",
                          "elapsed_ms", "resolutions"}) {
    INFO("missing key ", key);
    CHECK(payload.contains(key));
  }
  CHECK(payload["family"] == "sunzn");
  CHECK(payload["method"] == "both");
  CHECK(payload["flux"]["kind"] == "matrix");
  // Row-major [re, im] pairs.
  auto value = payload["flux"]["value"];
  REQUIRE(value.size() == 9);
  CHECK(value[0][0].get<double>() ==
        doctest::Approx(std::cos(2.0 * kPi / 3.0)));
  CHECK(value[0][1].get<double>() ==
        doctest::Approx(std::sin(2.0 * kPi / 3.0)));
  CHECK(value[1][0].get<double>() == doctest::Approx(0.0));

  FluxReport pair =
      magnetic_flux(make_config(Family::Un, 2, 1), FluxMethod::Lift, cfg);
  nlohmann::ordered_json pair_json = flux_report_json(pair);
  CHECK(pair_json["flux"]["kind"] == "pair");
  CHECK(pair_json["flux"]["value"]["real"] == -1);
  CHECK(pair_json["agree"].is_null());
}

TEST_CASE("reports are deterministic apart from the wall time") {
  TransportConfig cfg;
  MonopoleConfig config = make_config(Family::U1, 1, 2);
  nlohmann::ordered_json a =
      flux_report_json(magnetic_flux(config, FluxMethod::Both, cfg));
  nlohmann::ordered_json b =
      flux_report_json(magnetic_flux(config, FluxMethod::Both, cfg));
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("the flux subcommand writes a valid report") {
  std::string path = "cli_flux_report.json";
  int code = run_cli({"monopole", "flux", "--family", "u1", "--charge", "0",
                      "--method", "both", "--json", path});
  CHECK(code == 0);
  nlohmann::ordered_json payload = read_json(path);
  CHECK(payload["flux"]["kind"] == "integer");
  CHECK(payload["flux"]["value"] == 0);
  CHECK(payload["agree"] == true);
  std::remove(path.c_str());
}

TEST_CASE("the flux subcommand honors sampling flags") {
  std::string path = "cli_flux_so3.json";
  int code = run_cli({"monopole", "flux", "--family", "so3", "--method", "lift",
                      "--samples", "256", "--tol", "1e-7", "--json", path});
  CHECK(code == 0);
  nlohmann::ordered_json payload = read_json(path);
  CHECK(payload["samples"] == 256);
  CHECK(payload["tolerance"] == doctest::Approx(1e-7));
  CHECK(payload["flux"]["kind"] == "matrix");
  std::remove(path.c_str());
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run_cli({"monopole", "flux", "--family", "nope"}) == 2);
  CHECK(run_cli({"monopole", "bogus"}) == 2);
  CHECK(run_cli({"monopole", "flux", "--family", "un", "--n", "11"}) == 2);
}
