#pragma once

#include <string>

#include "json.hpp"

namespace logdecay {

// Renders JSON with two-space indentation, object keys in insertion order,
// and floating-point numbers printed with 17 significant digits, so repeated
// runs of the same computation produce byte-identical artifacts. Short arrays
// of scalars stay on one line; non-finite numbers become null.
std::string deterministic_json(const nlohmann::ordered_json& j);

}  // namespace logdecay
