#include "hrvauth/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hrvauth/rng.hpp"

namespace hrvauth::eval {

using modeling::BinaryLabeledSet;
using modeling::PCAModel;

double far_at(const std::vector<double>& scores, const std::vector<int>& labels, double t) {
  long imp = 0, accepted = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 0) {
      ++imp;
      if (scores[i] >= t) ++accepted;
    }
  }
  if (imp == 0) throw InsufficientDataError("FAR needs imposter scores");
  return static_cast<double>(accepted) / static_cast<double>(imp);
}

double frr_at(const std::vector<double>& scores, const std::vector<int>& labels, double t) {
  long gen = 0, rejected = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) {
      ++gen;
      if (scores[i] < t) ++rejected;
    }
  }
  if (gen == 0) throw InsufficientDataError("FRR needs genuine scores");
  return static_cast<double>(rejected) / static_cast<double>(gen);
}

FoldSpec stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");

  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [cls, rows] : by_class) {
    if (rows.size() < static_cast<size_t>(k))
      throw InsufficientDataError("class " + std::to_string(cls) + " has only " +
                                  std::to_string(rows.size()) + " rows, needs >= " +
                                  std::to_string(k) + " for " + std::to_string(k) +
                                  "-fold CV");
  }

  FoldSpec spec;
  spec.k = k;
  spec.seed = seed;
  spec.assignment.assign(labels.size(), -1);
  for (auto& [cls, rows] : by_class) {
    Rng rng(sub_seed(seed, "fold-class", static_cast<std::uint64_t>(cls)));
    rng.shuffle(rows);
    for (size_t i = 0; i < rows.size(); ++i)
      spec.assignment[rows[i]] = static_cast<int>(i % static_cast<size_t>(k));
  }
  return spec;
}

void RocCurve::validate() const {
  if (points.size() < 2) throw ValidationError("ROC curve needs >= 2 points");
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].threshold <= points[i - 1].threshold)
      throw ValidationError("ROC thresholds must increase");
    if (points[i].far > points[i - 1].far + 1e-12)
      throw ValidationError("FAR must be non-increasing in threshold");
    if (points[i].frr < points[i - 1].frr - 1e-12)
      throw ValidationError("FRR must be non-decreasing in threshold");
  }
  if (points.front().far != 1.0 || points.front().frr != 0.0)
    throw ValidationError("ROC curve must start at (FAR=1, FRR=0)");
  if (points.back().far != 0.0 || points.back().frr != 1.0)
    throw ValidationError("ROC curve must end at (FAR=0, FRR=1)");
}

RocCurve far_frr_curve(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ValidationError("scores/labels size mismatch");
  bool has_gen = false, has_imp = false;
  for (int l : labels) (l == 1 ? has_gen : has_imp) = true;
  if (!has_gen || !has_imp)
    throw InsufficientDataError("ROC needs both genuine and imposter scores");

  std::vector<double> thresholds(scores);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(thresholds.back() + 1.0);  // sentinel: rejects everything

  RocCurve curve;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds)
    curve.points.push_back({t, far_at(scores, labels, t), frr_at(scores, labels, t)});
  curve.validate();
  return curve;
}

EerResult eer(const RocCurve& curve) {
  const auto& pts = curve.points;
  for (const RocPoint& p : pts) {
    if (p.far == p.frr) return {p.far, p.threshold, p.far, p.frr};
  }
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d0 = pts[i].far - pts[i].frr;
    const double d1 = pts[i + 1].far - pts[i + 1].frr;
    if (d0 > 0.0 && d1 < 0.0) {
      const double alpha = d0 / (d0 - d1);
      EerResult r;
      r.far = pts[i].far + alpha * (pts[i + 1].far - pts[i].far);
      r.frr = pts[i].frr + alpha * (pts[i + 1].frr - pts[i].frr);
      r.eer = r.far;
      r.threshold = pts[i].threshold + alpha * (pts[i + 1].threshold - pts[i].threshold);
      return r;
    }
  }
  throw ValidationError("ROC curve has no FAR/FRR crossing");
}

namespace {

std::vector<double> to_vec(const modeling::FeatureVec& row) {
  return std::vector<double>(row.begin(), row.end());
}

struct PooledScores {
  std::vector<double> scores;
  std::vector<int> labels;
};

// Shared by one_vs_all and train_final: per-fold PCA + classifier fit
// on train rows only, scores pooled over the out-of-fold rows.
PooledScores pooled_cv_scores(const FeatureDataset& balanced, const std::string& subject,
                              ClassifierKind kind, const EvalConfig& cfg,
                              std::uint64_t cell_seed) {
  std::vector<int> labels(balanced.size());
  for (size_t i = 0; i < balanced.size(); ++i)
    labels[i] = balanced.meta[i].subject_id == subject ? 1 : 0;

  const FoldSpec folds =
      stratified_folds(labels, cfg.folds, sub_seed(cell_seed, "folds"));

  PooledScores pooled;
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<std::vector<double>> train_rows;
    std::vector<int> train_labels;
    std::vector<size_t> test_idx;
    for (size_t i = 0; i < balanced.size(); ++i) {
      if (folds.assignment[i] == f) {
        test_idx.push_back(i);
      } else {
        train_rows.push_back(to_vec(balanced.x[i]));
        train_labels.push_back(labels[i]);
      }
    }

    PCAModel pca = modeling::fit_pca(train_rows, cfg.pca_variance);
    BinaryLabeledSet set;
    set.genuine_subject = subject;
    set.x.reserve(train_rows.size());
    for (const auto& row : train_rows) set.x.push_back(pca.transform(row));
    set.y = train_labels;

    const TrainedModel model = modeling::train_classifier(
        kind, set, cfg.hp, sub_seed(cell_seed, "fit", static_cast<std::uint64_t>(f)),
        std::move(pca));
    for (size_t i : test_idx) {
      pooled.scores.push_back(model.score(to_vec(balanced.x[i])));
      pooled.labels.push_back(labels[i]);
    }
  }
  return pooled;
}

std::uint64_t cell_seed_for(const EvalConfig& cfg, const std::string& subject,
                            ClassifierKind kind) {
  return sub_seed(cfg.seed, "cell/" + subject + "/" + modeling::classifier_name(kind));
}

}  // namespace

SubjectResult one_vs_all(const FeatureDataset& balanced, const std::string& subject,
                         ClassifierKind kind, const EvalConfig& cfg) {
  const PooledScores pooled =
      pooled_cv_scores(balanced, subject, kind, cfg, cell_seed_for(cfg, subject, kind));
  const EerResult e = eer(far_frr_curve(pooled.scores, pooled.labels));

  SubjectResult r;
  r.subject = subject;
  r.kind = kind;
  r.eer_pct = 100.0 * e.eer;
  r.threshold = e.threshold;
  r.far_at_eer = e.far;
  r.frr_at_eer = e.frr;

  double quality_sum = 0.0;
  long genuine = 0, imposter = 0;
  for (size_t i = 0; i < balanced.size(); ++i) {
    if (balanced.meta[i].subject_id == subject) {
      r.device = balanced.meta[i].device;
      quality_sum += balanced.meta[i].quality;
      ++genuine;
    } else {
      ++imposter;
    }
  }
  r.genuine_rows = genuine;
  r.imposter_rows = imposter;
  r.avg_quality_pct = genuine > 0 ? 100.0 * quality_sum / static_cast<double>(genuine) : 0.0;
  return r;
}

std::vector<SubjectResult> evaluate_all(const FeatureDataset& balanced,
                                        const std::vector<ClassifierKind>& kinds,
                                        const EvalConfig& cfg) {
  std::vector<SubjectResult> results;
  for (const std::string& subject : balanced.subjects())
    for (ClassifierKind kind : kinds)
      results.push_back(one_vs_all(balanced, subject, kind, cfg));
  return results;
}

std::vector<DeviceResult> aggregate_by_device(const std::vector<SubjectResult>& results,
                                              const FeatureDataset& balanced) {
  // window-weighted quality per device, from the balanced corpus
  std::map<std::string, std::pair<double, long>> window_quality;
  for (size_t i = 0; i < balanced.size(); ++i) {
    auto& [sum, count] = window_quality[device_name(balanced.meta[i].device)];
    sum += balanced.meta[i].quality;
    ++count;
  }
  std::pair<double, long> all_quality{0.0, 0};
  for (const auto& [dev, sc] : window_quality) {
    all_quality.first += sc.first;
    all_quality.second += sc.second;
  }

  std::map<std::pair<std::string, ClassifierKind>, std::vector<const SubjectResult*>> groups;
  for (const SubjectResult& r : results) {
    groups[{device_name(r.device), r.kind}].push_back(&r);
    groups[{"all", r.kind}].push_back(&r);
  }

  std::vector<DeviceResult> out;
  for (const auto& [key, members] : groups) {
    DeviceResult d;
    d.device = key.first;
    d.kind = key.second;
    d.subjects = static_cast<int>(members.size());
    double eer_sum = 0.0, q_sum = 0.0;
    for (const SubjectResult* r : members) {
      eer_sum += r->eer_pct;
      q_sum += r->avg_quality_pct;
    }
    d.mean_eer_pct = eer_sum / static_cast<double>(members.size());
    d.avg_quality_subject_pct = q_sum / static_cast<double>(members.size());
    const auto& wq = key.first == "all" ? all_quality : window_quality[key.first];
    d.avg_quality_window_pct =
        wq.second > 0 ? 100.0 * wq.first / static_cast<double>(wq.second) : 0.0;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<SweepRow> quality_sweep(const FeatureDataset& full,
                                    const std::vector<double>& thresholds,
                                    ClassifierKind kind, const EvalConfig& cfg,
                                    int subsample_cap, int min_windows) {
  for (size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] <= thresholds[i - 1])
      throw ConfigError("quality thresholds must be sorted ascending");

  std::vector<SweepRow> rows;
  for (double threshold : thresholds) {
    const FeatureDataset filtered = modeling::filter_quality(full, threshold);

    // drop subjects with too few windows to fold
    std::set<std::string> dropped;
    FeatureDataset usable;
    const int floor = std::max(min_windows, cfg.folds);
    for (const std::string& s : filtered.subjects())
      if (filtered.count_for(s) < static_cast<size_t>(floor)) dropped.insert(s);
    for (size_t i = 0; i < filtered.size(); ++i)
      if (!dropped.count(filtered.meta[i].subject_id))
        usable.push(filtered.x[i], filtered.meta[i]);

    std::string note;
    if (!dropped.empty()) {
      note = "dropped:";
      for (const std::string& s : dropped) note += " " + s;
    }

    const std::vector<std::string> subjects = usable.subjects();
    if (subjects.size() < 2) {
      SweepRow row;
      row.threshold = threshold;
      row.group = "all";
      row.subjects = static_cast<int>(subjects.size());
      row.windows_retained = static_cast<long>(filtered.size());
      row.available = false;
      row.note = note.empty() ? "fewer than 2 subjects remain" : note;
      rows.push_back(std::move(row));
      continue;
    }

    // same subsample key as the headline evaluation, so threshold 0
    // reproduces it exactly
    const FeatureDataset balanced =
        modeling::subsample_per_subject(usable, subsample_cap, cfg.seed);

    std::map<std::string, std::pair<double, int>> group_eer;  // sum, count
    std::map<std::string, long> group_windows;
    for (size_t i = 0; i < filtered.size(); ++i)
      ++group_windows[device_name(filtered.meta[i].device)];
    for (const std::string& subject : subjects) {
      const SubjectResult r = one_vs_all(balanced, subject, kind, cfg);
      auto& [sum, count] = group_eer[device_name(r.device)];
      sum += r.eer_pct;
      ++count;
      auto& [all_sum, all_count] = group_eer["all"];
      all_sum += r.eer_pct;
      ++all_count;
    }
    group_windows["all"] = static_cast<long>(filtered.size());

    for (const auto& [group, sc] : group_eer) {
      SweepRow row;
      row.threshold = threshold;
      row.group = group;
      row.mean_eer_pct = sc.first / static_cast<double>(sc.second);
      row.subjects = sc.second;
      row.windows_retained = group_windows[group];
      row.note = group == "all" ? note : "";
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

TrainedModel train_final(const FeatureDataset& balanced, const std::string& subject,
                         ClassifierKind kind, const EvalConfig& cfg) {
  const std::uint64_t cell_seed = cell_seed_for(cfg, subject, kind);
  const PooledScores pooled = pooled_cv_scores(balanced, subject, kind, cfg, cell_seed);
  const EerResult e = eer(far_frr_curve(pooled.scores, pooled.labels));

  std::vector<std::vector<double>> all_rows;
  std::vector<int> all_labels;
  for (size_t i = 0; i < balanced.size(); ++i) {
    all_rows.push_back(to_vec(balanced.x[i]));
    all_labels.push_back(balanced.meta[i].subject_id == subject ? 1 : 0);
  }
  PCAModel pca = modeling::fit_pca(all_rows, cfg.pca_variance);
  BinaryLabeledSet set;
  set.genuine_subject = subject;
  for (const auto& row : all_rows) set.x.push_back(pca.transform(row));
  set.y = all_labels;

  TrainedModel model = modeling::train_classifier(kind, set, cfg.hp,
                                                  sub_seed(cell_seed, "final"),
                                                  std::move(pca));
  model.enroll_threshold = e.threshold;
  return model;
}

}  // namespace hrvauth::eval
