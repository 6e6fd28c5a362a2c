#include "holonomy/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#ifdef _WIN32
#define HOLONOMY_ISATTY() false
#else
#include <unistd.h>
#define HOLONOMY_ISATTY() (isatty(fileno(stdout)) != 0)
#endif

#include "holonomy/checks.hpp"
#include "holonomy/report_json.hpp"

namespace holonomy {

namespace {

struct Palette {
  const char* green = "";
  const char* red = "";
  const char* reset = "";
};

Palette make_palette() {
  if (HOLONOMY_ISATTY() && std::getenv("NO_COLOR") == nullptr) {
    return {"\033[32m", "\033[31m", "\033[0m"};
  }
  return {};
}

int default_size(Family family) {
  switch (family) {
    case Family::U1: return 1;
    case Family::SO3: return 3;
    case Family::SUnZn: return 3;
    case Family::Un: return 2;
  }
  return 1;
}

void emit_json(const nlohmann::ordered_json& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    out << payload.dump(2) << "\n";
  }
}

struct TableRow {
  Family family;
  int n;
  int charge;
};

std::vector<TableRow> catalog_rows() {
  std::vector<TableRow> rows;
  for (int charge = -3; charge <= 3; ++charge) rows.push_back({Family::U1, 1, charge});
  rows.push_back({Family::SO3, 3, 1});
  for (int n = 2; n <= 4; ++n) {
    for (int k = 0; k < n; ++k) rows.push_back({Family::SUnZn, n, k});
  }
  for (int n = 1; n <= 3; ++n) {
    for (int k = -2; k <= 2; ++k) rows.push_back({Family::Un, n, k});
  }
  return rows;
}

int cmd_flux(Family family, int n, int charge, FluxMethod method,
             const TransportConfig& cfg, const std::string& json_path) {
  MonopoleConfig config = make_config(family, n, charge);
  try {
    FluxReport report = magnetic_flux(config, method, cfg);
    emit_json(flux_report_json(report), json_path);
  } catch (const MethodDisagreement& e) {
    std::cerr << "method disagreement: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_table(const TransportConfig& cfg, const std::string& json_path) {
  Palette palette = make_palette();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool all_pass = true;
  for (const TableRow& row : catalog_rows()) {
    MonopoleConfig config = make_config(row.family, row.n, row.charge);
    long expected = expected_flux_index(config);
    bool pass = false;
    std::string status;
    nlohmann::ordered_json entry;
    try {
      FluxReport report = magnetic_flux(config, FluxMethod::Both, cfg);
      pass = report.kernel_index == expected && report.agree.value_or(false);
      entry = flux_report_json(report);
    } catch (const Error& e) {
      status = e.what();
      entry = {{"family", family_name(row.family)},
               {"n", row.n},
               {"charge", row.charge},
               {"error", status}};
    }
    entry["expected_index"] = expected;
    entry["pass"] = pass;
    rows.push_back(entry);
    all_pass = all_pass && pass;
    std::printf("%s%-4s%s  family=%-6s n=%d charge=%+d  expected=%ld%s%s\n",
                pass ? palette.green : palette.red, pass ? "PASS" : "FAIL",
                palette.reset, family_name(row.family), row.n, row.charge,
                expected, status.empty() ? "" : "  ", status.c_str());
  }
  if (!json_path.empty()) emit_json(rows, json_path);
  std::printf("%s\n", all_pass ? "all rows pass" : "some rows FAILED");
  return all_pass ? 0 : 1;
}

int cmd_check(const TransportConfig& cfg) {
  Palette palette = make_palette();
  bool all_pass = true;
  for (const CheckResult& result : run_all_checks(cfg)) {
    std::printf("%s%-4s%s  %s%s%s\n",
                result.pass ? palette.green : palette.red,
                result.pass ? "PASS" : "FAIL", palette.reset,
                result.name.c_str(), result.detail.empty() ? "" : ": ",
                result.detail.c_str());
    all_pass = all_pass && result.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_convergence(Family family, int n, int charge, const TransportConfig& cfg) {
  (void)cfg;
  MonopoleConfig config = make_config(family, n, charge);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  GroupElement expected =
      config.covering.kernel_element(expected_flux_index(config));
  CoveringCrossedModule cm{config.covering};
  GroupElement jump = config.connection.transition(config.cover.basepoint());

  std::printf("samples,abs_error\n");
  for (int samples : {16, 32, 64, 128, 256, 512}) {
    GroupElement north = surface_product_fixed(config.connection, Patch::North,
                                               bigons.north, samples);
    GroupElement south = surface_product_fixed(config.connection, Patch::South,
                                               bigons.south, samples);
    GroupElement glued = mul(cm.act(jump, south), north);
    std::printf("%d,%.12e\n", samples, frobenius_distance(glued, expected));
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"surface holonomy and monopole flux for covering 2-groups"};
  app.require_subcommand(1);

  std::string family_name_arg = "u1";
  int n = 0;
  int charge = 1;
  std::string method_arg = "both";
  TransportConfig cfg;
  std::string json_path;

  auto add_common = [&](CLI::App* cmd, bool with_family_options) {
    if (with_family_options) {
      cmd->add_option("--family", family_name_arg, "monopole family")
          ->check(CLI::IsMember({"u1", "so3", "sunzn", "un"}))
          ->required();
      cmd->add_option("--n", n, "matrix size (family default when omitted)");
      cmd->add_option("--charge", charge, "integer charge");
    }
    cmd->add_option("--samples", cfg.steps, "base partition count");
    cmd->add_option("--tol", cfg.tolerance, "refinement tolerance");
  };

  CLI::App* flux = app.add_subcommand("flux", "compute the flux of one configuration");
  add_common(flux, true);
  flux->add_option("--method", method_arg, "lift | integral | both")
      ->check(CLI::IsMember({"lift", "integral", "both"}));
  flux->add_option("--json", json_path, "write the JSON report to this path");

  CLI::App* table = app.add_subcommand("table", "run every catalog example");
  add_common(table, false);
  table->add_option("--json", json_path, "write all JSON reports to this path");

  CLI::App* check = app.add_subcommand("check", "run the invariant suites");
  add_common(check, false);

  CLI::App* convergence =
      app.add_subcommand("convergence", "error vs resolution CSV");
  add_common(convergence, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Family family = family_from_name(family_name_arg);
    if (n == 0) n = default_size(family);
    if (flux->parsed()) {
      return cmd_flux(family, n, charge, method_from_name(method_arg), cfg,
                      json_path);
    }
    if (table->parsed()) return cmd_table(cfg, json_path);
    if (check->parsed()) return cmd_check(cfg);
    if (convergence->parsed()) return cmd_convergence(family, n, charge, cfg);
  } catch (const MethodDisagreement& e) {
    std::cerr << "method disagreement: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedFamily& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace holonomy
