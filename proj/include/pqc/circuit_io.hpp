#pragma once

#include "pqc/circuit.hpp"

#include <json.hpp>
#include <string>
#include <string_view>

namespace pqc {

nlohmann::json to_json(const Circuit& c);
std::string serialize(const Circuit& c);

/// Gate names are resolved against `registry` to recover signatures.
Circuit from_json(const nlohmann::json& j, const GateRegistry& registry);
Circuit deserialize(std::string_view text, const GateRegistry& registry);

/// One text row per wire position, one column per step.
std::string draw(const Circuit& c);

} // namespace pqc
