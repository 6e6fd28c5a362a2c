#pragma once

#include <random>
#include <string>
#include <vector>

#include "holonomy/monopole.hpp"

namespace holonomy {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Random algebra element of the base group of the covering, with
/// coefficients in [-scale, scale].
AlgebraElement random_base_algebra(const CoveringPair& cp, std::mt19937& rng,
                                   double scale = 1.0);
/// Random element of the base group (exp of a random algebra element).
GroupElement random_base_element(const CoveringPair& cp, std::mt19937& rng,
                                 double scale = 1.0);

/// Random smooth gauge function: independent per-patch maps
/// h(x) = exp(f(x) xi) with f a low-order polynomial in the ambient
/// coordinates (sin t cos p, sin t sin p, cos t), smooth across the poles.
GaugeFunction random_gauge(const CoveringPair& cp, std::mt19937& rng,
                           double magnitude = 0.4);

// Invariant suites behind the `check` subcommand. Each returns one
// result per named property.
std::vector<CheckResult> check_crossed_module_identities();
std::vector<CheckResult> check_interchange_law();
std::vector<CheckResult> check_kernel_centrality();
std::vector<CheckResult> check_zp_class_counts();
std::vector<CheckResult> check_gauge_invariance(const TransportConfig& cfg);

std::vector<CheckResult> run_all_checks(const TransportConfig& cfg);

}  // namespace holonomy
