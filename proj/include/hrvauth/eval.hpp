#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrvauth/classifiers.hpp"
#include "hrvauth/dataset.hpp"

namespace hrvauth::eval {

using modeling::ClassifierKind;
using modeling::FeatureDataset;
using modeling::Hyperparams;
using modeling::TrainedModel;

// Project-wide decision convention: a sample is ACCEPTED iff its score
// is >= the threshold. FAR(t) is the imposter fraction >= t, FRR(t) the
// genuine fraction < t. All metric code goes through these two helpers.
double far_at(const std::vector<double>& scores, const std::vector<int>& labels, double t);
double frr_at(const std::vector<double>& scores, const std::vector<int>& labels, double t);

struct FoldSpec {
  int k = 10;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // fold id per row
};

/// Seeded shuffle within each class, then round-robin across folds, so
/// per-fold class counts never deviate from perfect stratification by
/// more than one row.
FoldSpec stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

struct RocPoint {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// Evaluated at every distinct score plus a sentinel above the maximum;
/// FAR non-increasing and FRR non-decreasing in threshold, with the
/// (1,0) and (0,1) endpoints always present.
struct RocCurve {
  std::vector<RocPoint> points;
  void validate() const;
};

RocCurve far_frr_curve(const std::vector<double>& scores, const std::vector<int>& labels);

struct EerResult {
  double eer = 0.0;  // fraction, not percent
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// Exact crossing when FAR == FRR at a listed threshold, otherwise a
/// linear interpolation between the two points bracketing the sign
/// change of FAR - FRR.
EerResult eer(const RocCurve& curve);

struct EvalConfig {
  int folds = 10;
  std::uint64_t seed = 7;
  double pca_variance = 0.9;
  Hyperparams hp;
};

struct SubjectResult {
  std::string subject;
  ClassifierKind kind = ClassifierKind::Knn;
  double eer_pct = 0.0;
  double threshold = 0.0;
  double far_at_eer = 0.0;
  double frr_at_eer = 0.0;
  DeviceKind device = DeviceKind::Generic;
  double avg_quality_pct = 0.0;
  long genuine_rows = 0;
  long imposter_rows = 0;
};

/// One-vs-all cross-validated evaluation for one subject: PCA and the
/// classifier are fitted on the train folds only, out-of-fold scores
/// are pooled, and the EER is computed once on the pooled scores.
SubjectResult one_vs_all(const FeatureDataset& balanced, const std::string& subject,
                         ClassifierKind kind, const EvalConfig& cfg);

/// All subjects x classifier kinds, subjects in sorted order.
std::vector<SubjectResult> evaluate_all(const FeatureDataset& balanced,
                                        const std::vector<ClassifierKind>& kinds,
                                        const EvalConfig& cfg);

struct DeviceResult {
  std::string device;  // device name or "all"
  ClassifierKind kind = ClassifierKind::Knn;
  double mean_eer_pct = 0.0;
  int subjects = 0;
  // the per-device average quality is reported under both weightings
  double avg_quality_subject_pct = 0.0;
  double avg_quality_window_pct = 0.0;
};

std::vector<DeviceResult> aggregate_by_device(const std::vector<SubjectResult>& results,
                                              const FeatureDataset& balanced);

struct SweepRow {
  double threshold = 0.0;
  std::string group;  // device name or "all"
  double mean_eer_pct = 0.0;
  int subjects = 0;
  long windows_retained = 0;
  bool available = true;
  std::string note;
};

/// Re-filters, re-balances and re-evaluates the corpus at each quality
/// threshold. Subjects left with fewer than `min_windows` rows are
/// dropped from that threshold's mean (named in the note); a threshold
/// leaving fewer than two subjects yields an unavailable row.
std::vector<SweepRow> quality_sweep(const FeatureDataset& full,
                                    const std::vector<double>& thresholds,
                                    ClassifierKind kind, const EvalConfig& cfg,
                                    int subsample_cap = 35, int min_windows = 10);

/// Single full fit on the balanced corpus for deployment: evaluates the
/// subject one-vs-all to fix the enrollment threshold at the EER point,
/// then refits PCA + classifier on all rows.
TrainedModel train_final(const FeatureDataset& balanced, const std::string& subject,
                         ClassifierKind kind, const EvalConfig& cfg);

}  // namespace hrvauth::eval
