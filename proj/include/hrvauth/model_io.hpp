#pragma once

#include <string>

#include "hrvauth/classifiers.hpp"

namespace hrvauth::modeling {

inline constexpr int kModelFormatVersion = 1;

/// Self-describing JSON container; doubles are written with exact
/// round-trip precision so save/load reproduces the model bit-for-bit.
std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::string& text);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace hrvauth::modeling
