#pragma once

#include <string>

#include <json.hpp>

#include "rplace/embed.hpp"

namespace rplace {

using Json = nlohmann::ordered_json;

/// "inf" for zero, otherwise the valuation in F's own coordinates.
std::string valuation_text(const Field& F, const FieldElement& x);

Json to_json(const Classification& cl);
Json to_json(const Fiber& f);
Json to_json(const PlaceValue& v);
Json to_json(const RPlace& p);
Json to_json(const ThreeCase& c);
Json to_json(const EmbeddingContext& ctx);
Json to_json(const NonConvexWitness& w, const EmbeddingContext& ctx);
Json to_json(const PrincipalPreservation& p);

}  // namespace rplace
