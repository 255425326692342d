#pragma once
// JSON serialization of duration models, used for presets and CLI model files.
// Documents are tagged by a "model" field: msmd, acd, lmsd, exponential.

#include <string>

#include "msmd/jump.hpp"

namespace msmd {

std::string duration_model_to_json(const DurationModel& m);
DurationModel duration_model_from_json(const std::string& text);

DurationModel load_duration_model(const std::string& path);
void save_duration_model(const std::string& path, const DurationModel& m);

}  // namespace msmd
