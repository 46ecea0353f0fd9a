#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hrvauth/features.hpp"

namespace hrvauth::modeling {

using FeatureVec = std::array<double, features::kFeatureCount>;

struct RowMeta {
  std::string subject_id;
  DeviceKind device = DeviceKind::Generic;
  double window_start = 0.0;
  double quality = 1.0;
};

/// Feature matrix with per-row provenance; rows stay aligned with meta.
struct FeatureDataset {
  std::vector<FeatureVec> x;
  std::vector<RowMeta> meta;

  size_t size() const { return x.size(); }
  void push(const FeatureVec& row, RowMeta m);

  std::vector<std::string> subjects() const;       // sorted unique ids
  size_t count_for(const std::string& subject) const;
};

/// Removes rows with any non-finite feature (undefined LF/HF ratio);
/// dropped rows are reported so runs can log them.
FeatureDataset drop_undefined(const FeatureDataset& ds,
                              std::vector<std::string>* dropped = nullptr);

FeatureDataset filter_quality(const FeatureDataset& ds, double min_quality);

/// Caps every subject at `cap` rows by seeded sampling without
/// replacement; subjects below the cap keep all rows. Selection is
/// keyed per subject so it does not depend on subject order.
FeatureDataset subsample_per_subject(const FeatureDataset& ds, int cap,
                                     std::uint64_t seed);

/// CSV export: subject_id, device, window_start, quality, then the 11
/// features in their canonical order.
std::string to_csv(const FeatureDataset& ds);

}  // namespace hrvauth::modeling
