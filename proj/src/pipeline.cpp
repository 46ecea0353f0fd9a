#include "hrvauth/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "hrvauth/ingest.hpp"
#include "hrvauth/report.hpp"
#include "hrvauth/synth.hpp"

namespace hrvauth::pipeline {

namespace fs = std::filesystem;
using modeling::FeatureDataset;
using preprocess::ArtifactMask;
using preprocess::CleanWindow;

namespace {

template <typename Fn>
auto stage(const char* name, const std::string& input, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const IoError& e) {
    throw StageError(name, input, e.what(), true);
  } catch (const std::exception& e) {
    throw StageError(name, input, e.what(), false);
  }
}

std::string subject_hint_from_path(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  const size_t underscore = stem.find('_');
  return underscore == std::string::npos ? stem : stem.substr(0, underscore);
}

}  // namespace

std::vector<RRSeries> load_series(const RunConfig& cfg) {
  std::vector<std::string> paths;
  if (cfg.synthetic) {
    stage("synth", "", [&] {
      synth::CorpusConfig sc;
      sc.n_subjects = cfg.synth_subjects;
      sc.separation = cfg.synth_separation;
      sc.seed = sub_seed(cfg.seed, "corpus");
      sc.artifacts.uniform = cfg.synth_uniform_artifacts;
      sc.artifacts.e4 = {cfg.artifact_rate_e4, 0.5, cfg.artifact_burst_e4};
      sc.artifacts.gear_s = {cfg.artifact_rate_gears, 0.5, cfg.artifact_burst_gears};
      sc.artifacts.gear_s2 = {cfg.artifact_rate_gears2, 0.5, cfg.artifact_burst_gears2};
      const synth::Corpus corpus = synth::generate_corpus(sc);
      const fs::path dir = fs::path(cfg.out_dir) / "corpus";
      fs::create_directories(dir);
      paths = synth::write_corpus_csv(corpus, dir.string());
      return 0;
    });
  } else {
    stage("ingest", cfg.input_dir, [&] {
      if (!fs::is_directory(cfg.input_dir))
        throw IoError("input directory '" + cfg.input_dir + "' does not exist");
      for (const auto& entry : fs::directory_iterator(cfg.input_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
          paths.push_back(entry.path().string());
      if (paths.empty())
        throw IoError("no .csv files under '" + cfg.input_dir + "'");
      return 0;
    });
  }
  std::sort(paths.begin(), paths.end());

  std::vector<RRSeries> series;
  for (const std::string& path : paths) {
    series.push_back(stage("ingest", path, [&] {
      return ingest::load_file(path, subject_hint_from_path(path));
    }));
  }
  return series;
}

FeatureDataset extract_features(const RunConfig& cfg, const std::vector<RRSeries>& series,
                                std::vector<std::string>* skipped) {
  cfg.validate();
  FeatureDataset dataset;
  for (const RRSeries& s : series) {
    const std::string input = s.subject_id + "@" + std::to_string(s.session_start);
    try {
      const ArtifactMask mask =
          preprocess::detect_artifacts(s, cfg.rel_threshold, cfg.local_window);

      std::vector<std::pair<RRSeries, ArtifactMask>> sources;
      if (cfg.use_constraints) {
        preprocess::ConstraintConfig cc{cfg.min_consecutive_samples,
                                        cfg.min_consecutive_seconds};
        for (RRSeries& frag : preprocess::apply_constraints(s, mask, cc)) {
          ArtifactMask clean;
          clean.flags.assign(frag.samples.size(), 0);
          sources.emplace_back(std::move(frag), std::move(clean));
        }
      } else {
        sources.emplace_back(preprocess::remove_and_interpolate(s, mask), mask);
      }

      for (const auto& [clean_series, source_mask] : sources) {
        for (const CleanWindow& w : preprocess::segment_windows(
                 clean_series, source_mask, cfg.window_s, cfg.stride_s)) {
          try {
            const auto f = features::extract(w, cfg.spectral);
            dataset.push(f.to_vector(),
                         {w.subject_id, w.device, w.window_start, w.quality});
          } catch (const InsufficientDataError&) {
            if (skipped)
              skipped->push_back(input + " window@" + std::to_string(w.window_start));
          }
        }
      }
    } catch (const InsufficientDataError& e) {
      if (skipped) skipped->push_back(input + ": " + e.what());
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError("features", input, e.what(), false);
    }
  }
  return dataset;
}

FeatureDataset prepare_balanced(const RunConfig& cfg, const FeatureDataset& all,
                                std::vector<std::string>* dropped) {
  const FeatureDataset defined = modeling::drop_undefined(all, dropped);
  const FeatureDataset filtered = modeling::filter_quality(defined, cfg.min_quality);
  return modeling::subsample_per_subject(filtered, cfg.subsample_cap, cfg.seed);
}

eval::EvalConfig eval_config(const RunConfig& cfg) {
  eval::EvalConfig ec;
  ec.folds = cfg.folds;
  ec.seed = cfg.seed;
  ec.pca_variance = cfg.pca_variance;
  ec.hp = cfg.hp;
  return ec;
}

Outcome run(const RunConfig& cfg) {
  cfg.validate();
  Outcome outcome;

  const std::vector<RRSeries> series = load_series(cfg);

  outcome.features = stage("features", "", [&] {
    return extract_features(cfg, series, &outcome.skipped_series);
  });

  outcome.balanced = stage("evaluate", "", [&] {
    FeatureDataset balanced =
        prepare_balanced(cfg, outcome.features, &outcome.dropped_rows);
    if (balanced.subjects().size() < 2)
      throw InsufficientDataError("evaluation needs at least 2 subjects, got " +
                                  std::to_string(balanced.subjects().size()));
    return balanced;
  });

  const eval::EvalConfig ec = eval_config(cfg);
  outcome.per_subject = stage("evaluate", "", [&] {
    return eval::evaluate_all(outcome.balanced, cfg.classifiers, ec);
  });
  outcome.per_device = stage("evaluate", "", [&] {
    return eval::aggregate_by_device(outcome.per_subject, outcome.balanced);
  });

  outcome.sweep = stage("sweep", "", [&] {
    const FeatureDataset defined = modeling::drop_undefined(outcome.features);
    return eval::quality_sweep(defined, cfg.quality_thresholds, cfg.sweep_classifier, ec,
                               cfg.subsample_cap, cfg.sweep_min_windows);
  });

  stage("report", cfg.out_dir, [&] {
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    auto emit = [&](const std::string& name, const std::string& content) {
      const std::string path = (dir / name).string();
      report::write_text(path, content);
      outcome.report_paths.push_back(path);
    };
    emit("features.csv", report::config_header(cfg) + modeling::to_csv(outcome.features));
    emit("per_subject.csv", report::subject_csv(outcome.per_subject, cfg));
    emit("per_subject.json", report::subject_json(outcome.per_subject, cfg));
    emit("per_device.csv", report::device_csv(outcome.per_device, cfg));
    emit("per_device.json", report::device_json(outcome.per_device, cfg));
    emit("sweep.csv", report::sweep_csv(outcome.sweep, cfg));
    emit("sweep.json", report::sweep_json(outcome.sweep, cfg));
    return 0;
  });

  return outcome;
}

std::string summary_table(const Outcome& outcome, const RunConfig& cfg) {
  std::ostringstream out;
  out << "windows: " << outcome.features.size() << " extracted, "
      << outcome.balanced.size() << " after balancing";
  if (!outcome.dropped_rows.empty())
    out << ", " << outcome.dropped_rows.size() << " dropped (undefined features)";
  if (!outcome.skipped_series.empty())
    out << ", " << outcome.skipped_series.size() << " skipped inputs";
  out << "\n\nmean EER% by device:\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-12s", "device");
  out << buf;
  for (auto kind : cfg.classifiers) {
    std::snprintf(buf, sizeof(buf), "%8s", modeling::classifier_name(kind).c_str());
    out << buf;
  }
  out << "   subjects\n";
  std::map<std::string, std::map<modeling::ClassifierKind, const eval::DeviceResult*>> rows;
  for (const auto& r : outcome.per_device) rows[r.device][r.kind] = &r;
  for (const auto& [device, by_kind] : rows) {
    std::snprintf(buf, sizeof(buf), "%-12s", device.c_str());
    out << buf;
    int subjects = 0;
    for (auto kind : cfg.classifiers) {
      auto it = by_kind.find(kind);
      if (it != by_kind.end()) {
        std::snprintf(buf, sizeof(buf), "%8.2f", it->second->mean_eer_pct);
        subjects = it->second->subjects;
      } else {
        std::snprintf(buf, sizeof(buf), "%8s", "-");
      }
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%8d\n", subjects);
    out << buf;
  }
  return out.str();
}

}  // namespace hrvauth::pipeline
