#pragma once

#include <string>

#include "json.hpp"

namespace udense {

/// Serializes with insertion-order keys and every float printed as fixed
/// six decimals, so parse -> dump round-trips are byte-identical.
std::string dump_fixed(const nlohmann::ordered_json& j);

}  // namespace udense
