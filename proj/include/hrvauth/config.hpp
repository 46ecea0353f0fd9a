#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hrvauth/classifiers.hpp"
#include "hrvauth/features.hpp"

namespace hrvauth {

/// One resolved run: every module parameter plus all seeds. Loaded from
/// a key=value file, overridden by CLI flags (flags win), validated as
/// a whole. The resolved key list is embedded in every report header.
struct RunConfig {
  // preprocessing
  double window_s = 120.0;
  double stride_s = 120.0;
  double rel_threshold = 0.20;
  int local_window = 5;
  bool use_constraints = false;  // constraint path instead of interpolation
  int min_consecutive_samples = 5;
  double min_consecutive_seconds = 10.0;

  features::SpectralConfig spectral;

  // modeling + evaluation
  double pca_variance = 0.9;
  int subsample_cap = 35;
  int folds = 10;
  std::uint64_t seed = 7;
  std::vector<modeling::ClassifierKind> classifiers = {
      modeling::ClassifierKind::Knn, modeling::ClassifierKind::Rf,
      modeling::ClassifierKind::Mlp, modeling::ClassifierKind::Lda};
  modeling::Hyperparams hp;
  double min_quality = 0.0;
  std::vector<double> quality_thresholds = {0.0, 0.5, 0.8, 0.9, 0.95};
  modeling::ClassifierKind sweep_classifier = modeling::ClassifierKind::Rf;
  int sweep_min_windows = 10;

  // synthetic corpus
  int synth_subjects = 28;
  double synth_separation = 1.0;
  bool synth_uniform_artifacts = false;
  double artifact_rate_e4 = 3.0;
  double artifact_rate_gears = 7.0;
  double artifact_rate_gears2 = 16.0;
  int artifact_burst_e4 = 1;
  int artifact_burst_gears = 2;
  int artifact_burst_gears2 = 3;

  // online engine
  double auth_stride_s = 5.0;
  int smoothing_m = 3;
  double auth_quality_floor = 0.5;

  // io
  bool synthetic = false;
  std::string input_dir;
  std::string out_dir = "out";

  void validate() const;

  /// Canonical (key, value) listing used for report headers; fixed key
  /// order and formatting so identical configs print identically.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

RunConfig load_config_file(const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace hrvauth
