#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "nclt/experiments.hpp"

namespace nclt {

using json = nlohmann::json;

// {"type":"circleAtomic","atoms":[[theta,w],...]}, {"type":"haar"},
// {"type":"lineAtomic","atoms":[[x,w],...]}
json to_json(const CircleMeasure& mu);
json to_json(const LineMeasure& nu);
CircleMeasure circle_measure_from_json(const json& j);
LineMeasure line_measure_from_json(const json& j);

// {"gamma": angle or [re,im], "sigma":[[theta,s],...]}; written with [re,im].
json to_json(const CircleGeneratingPair& p);
CircleGeneratingPair circle_pair_from_json(const json& j);
// {"gamma": x, "sigma":[[x,s],...]}
json to_json(const LineGeneratingPair& p);
LineGeneratingPair line_pair_from_json(const json& j);

struct RunConfig {
    Experiment experiment;
    Mode mode = Mode::boolean;
    std::size_t order = default_order;
    Tolerances tolerances;
};

// {"array": {...}, "mode": "...", "ladder": [...], "order": 16, "tolerances": {...}}
//
// The array is either a preset, {"preset": name, "t": .., "lambda_angle": ..,
// "lambda": ..}, with the ladder passed on, or explicit:
//   {"domain": "circle", "name": .., "tau": 1, "limit": pair,
//    "rows": [{"n": 100, "lambda": angle or [re,im],
//              "entries": [{"measure": {...}, "count": k}, ...]}, ...]}
//   {"domain": "line", "name": .., "limit": pair,
//    "rows": [{"n": 10, "shift": c, "entries": [...]}, ...]}
// where a ladder keeps only the listed rows and "limit" may also be "haar".
// Malformed input is bad_params; bad atoms are invalid_measure.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::filesystem::path& path);

} // namespace nclt
