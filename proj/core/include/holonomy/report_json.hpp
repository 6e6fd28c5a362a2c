#pragma once

#include <json.hpp>

#include "holonomy/monopole.hpp"

namespace holonomy {

/// Stable machine-readable rendering. Matrices are serialized row-major
/// as [re, im] pairs; the flux kind is "integer" (U1), "matrix" (SO3,
/// SUnZn) or "pair" (Un). Requires nlohmann/json on the include path.
nlohmann::ordered_json flux_report_json(const FluxReport& report);

}  // namespace holonomy
