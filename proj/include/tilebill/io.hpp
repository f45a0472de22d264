#pragma once
// JSON encodings shared by the CLI, the session endpoint and the reports.

#include "tilebill/classifier.hpp"
#include "tilebill/constructions.hpp"

#include <json.hpp>

namespace tilebill {

using Json = nlohmann::ordered_json;

Json to_json(const TilingSpec& spec);
/// Throws InvalidSpec on unknown variants, missing fields or wrong types.
TilingSpec tiling_spec_from_json(const Json& j);

Json to_json(const EdgeRef& e);
Json to_json(const TileRef& t);
Json to_json(const TrajectoryState& s);
Json to_json(const Trajectory& tr);
Json to_json(const SpiralWitness& w);
Json to_json(const Classification& c);
Json to_json(const Expected& e);
Json to_json(const ConstructionResult& r);

/// Edge as {"i":..,"j":..,"slot":..} or [i, j, slot]; slot may be a slot name.
EdgeRef edge_from_json(const Json& j, const Tiling& tiling);
TileRef tile_from_json(const Json& j);

/// A start is either {"edge":..,"t":..,"dir":..} or {"point":[x,y],"dir":..}.
/// The entered tile follows from dir.
TrajectoryState start_from_json(const Json& j, const Tiling& tiling);

/// Records carrying their tile replay exactly; x and y are informational.
Trajectory trajectory_from_json(const Json& j);
Classification classification_from_json(const Json& j);

}  // namespace tilebill
