#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "torusrot/chains.hpp"
#include "torusrot/classify.hpp"
#include "torusrot/recurrence.hpp"
#include "torusrot/regions.hpp"
#include "torusrot/rotation.hpp"

namespace torusrot {

using Json = nlohmann::json;

Json vec_json(Vec2 v);
Json lattice_json(LatticeVec v);
Json window_json(const Box& b);

Json rotation_json(const RotationSetEstimate& est, const PseudoRotationCheck& check);
Json measure_json(const MeasureEstimate& est);
Json essentiality_json(const EssentialityClass& c);
// Cell counts and component count; essentiality when the region is periodic
// over at least 3x3 fundamental domains, otherwise null.
Json region_summary_json(const GridRegion& region);
Json chain_verdict_json(const ChainVerdict& verdict);
Json chain_manifest_json(const ChainSample& chain, const std::vector<std::string>& level_files,
                         const ChainVerdict& verdict);
Json recurrence_json(const RecurrenceReport& report);
Json atkinson_json(const std::vector<AtkinsonHit>& hits);
Json verdict_json(const std::string& map_spec, const TrichotomyVerdict& verdict, const ClassifyParams& params);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace torusrot
