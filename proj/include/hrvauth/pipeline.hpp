#pragma once

#include <string>
#include <vector>

#include "hrvauth/config.hpp"
#include "hrvauth/eval.hpp"
#include "hrvauth/rr.hpp"

namespace hrvauth::pipeline {

/// Module errors surfaced by the CLI carry the stage name and the input
/// they were processing.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string input, const std::string& what, bool io)
      : std::runtime_error("stage=" + stage + (input.empty() ? "" : " input=" + input) +
                           ": " + what),
        stage_(std::move(stage)),
        input_(std::move(input)),
        io_(io) {}
  const std::string& stage() const { return stage_; }
  const std::string& input() const { return input_; }
  bool is_io() const { return io_; }

 private:
  std::string stage_;
  std::string input_;
  bool io_;
};

struct Outcome {
  modeling::FeatureDataset features;  // all windows, pre-balancing
  modeling::FeatureDataset balanced;  // after quality filter + subsampling
  std::vector<eval::SubjectResult> per_subject;
  std::vector<eval::DeviceResult> per_device;
  std::vector<eval::SweepRow> sweep;
  std::vector<std::string> dropped_rows;
  std::vector<std::string> skipped_series;
  std::vector<std::string> report_paths;
};

/// Input series: generated corpus written to CSV and re-ingested when
/// cfg.synthetic, otherwise every *.csv under cfg.input_dir (sorted).
std::vector<RRSeries> load_series(const RunConfig& cfg);

/// Artifact detection, reconstruction (or the constraint path),
/// windowing and feature extraction for a batch of series.
modeling::FeatureDataset extract_features(const RunConfig& cfg,
                                          const std::vector<RRSeries>& series,
                                          std::vector<std::string>* skipped = nullptr);

modeling::FeatureDataset prepare_balanced(const RunConfig& cfg,
                                          const modeling::FeatureDataset& all,
                                          std::vector<std::string>* dropped = nullptr);

eval::EvalConfig eval_config(const RunConfig& cfg);

/// The full offline run: ingest, preprocess, features, evaluation,
/// sweep, reports. Writes feature matrix plus per-subject, per-device
/// and sweep reports (CSV and JSON) under cfg.out_dir.
Outcome run(const RunConfig& cfg);

/// One-line-per-device summary for the terminal.
std::string summary_table(const Outcome& outcome, const RunConfig& cfg);

}  // namespace hrvauth::pipeline
