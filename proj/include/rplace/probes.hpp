#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rplace/serialize.hpp"

namespace rplace {

/// Named witness experiments on places of rational function fields. Each run
/// is determined by its seed and reports counts, failures and a few worked
/// examples with exact values.
const std::vector<std::string>& probe_names();
/// Throws std::invalid_argument for an unknown name.
Json run_probe(const std::string& name, std::uint64_t seed);

}  // namespace rplace
