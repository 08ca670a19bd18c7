#pragma once

#include <string>

#include "json.hpp"

#include "cstack/stacking.hpp"

namespace cstack {

/// Versioned JSON documents for fitted models; numbers round-trip exactly.
nlohmann::json scorer_to_json(const TrainedScorer& scorer);
TrainedScorer scorer_from_json(const nlohmann::json& doc);

nlohmann::json calibrated_to_json(const CalibratedScorer& scorer);
CalibratedScorer calibrated_from_json(const nlohmann::json& doc);

nlohmann::json stacked_to_json(const StackedModel& model);
StackedModel stacked_from_json(const nlohmann::json& doc);

void save_model_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json load_model_json(const std::string& path);

}  // namespace cstack
