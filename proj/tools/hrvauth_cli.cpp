// hrvauth command-line front end: pipeline | features | train | evaluate |
// sweep | synth | replay. A key=value config file supplies defaults and
// individual --set overrides win over the file.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hrvauth/authd.hpp"
#include "hrvauth/ingest.hpp"
#include "hrvauth/model_io.hpp"
#include "hrvauth/pipeline.hpp"
#include "hrvauth/report.hpp"
#include "hrvauth/synth.hpp"

namespace fs = std::filesystem;
using namespace hrvauth;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInputError = 2;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key=value config file");
  cmd->add_option("--set", opts.overrides, "config override key=value (repeatable)")
      ->take_all();
}

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config_file(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

int fail(const std::string& stage, const std::string& message, int code) {
  std::cerr << "error: stage=" << stage << ": " << message << "\n";
  return code;
}

int run_guarded(const char* fallback_stage, const std::function<int()>& body) {
  try {
    return body();
  } catch (const pipeline::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_io() ? kExitInputError : kExitError;
  } catch (const IoError& e) {
    return fail(fallback_stage, e.what(), kExitInputError);
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kExitError);
  } catch (const std::exception& e) {
    return fail(fallback_stage, e.what(), kExitError);
  }
}

modeling::FeatureDataset dataset_for(const RunConfig& cfg) {
  const auto series = pipeline::load_series(cfg);
  return pipeline::extract_features(cfg, series, nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous authentication from wrist-device RR interval streams"};
  app.require_subcommand(1);

  CommonOpts pipeline_opts, features_opts, train_opts, eval_opts, sweep_opts,
      synth_opts, replay_opts;

  auto* cmd_pipeline =
      app.add_subcommand("pipeline", "full offline run: ingest through reports");
  add_common(cmd_pipeline, pipeline_opts);
  bool opt_synthetic = false;
  int opt_subjects = -1;
  long opt_seed = -1;
  std::string opt_input, opt_out, opt_thresholds;
  cmd_pipeline->add_flag("--synthetic", opt_synthetic, "generate the corpus instead of reading files");
  cmd_pipeline->add_option("--subjects", opt_subjects, "synthetic subject count");
  cmd_pipeline->add_option("--seed", opt_seed, "master seed");
  cmd_pipeline->add_option("--input", opt_input, "directory of RR CSV files");
  cmd_pipeline->add_option("--out", opt_out, "report output directory");
  cmd_pipeline->add_option("--quality-thresholds", opt_thresholds,
                           "comma-separated sweep thresholds");

  auto* cmd_features = app.add_subcommand("features", "emit the feature matrix CSV");
  add_common(cmd_features, features_opts);
  std::string feat_input, feat_out = "features.csv";
  bool feat_synthetic = false;
  cmd_features->add_option("--input", feat_input, "directory of RR CSV files");
  cmd_features->add_flag("--synthetic", feat_synthetic, "use a generated corpus");
  cmd_features->add_option("--out", feat_out, "output CSV path");

  auto* cmd_train = app.add_subcommand("train", "fit one subject's model and save it");
  add_common(cmd_train, train_opts);
  std::string train_subject, train_model = "model.json", train_classifier = "rf",
              train_input;
  bool train_synthetic = false;
  cmd_train->add_option("--subject", train_subject, "genuine subject id")->required();
  cmd_train->add_option("--classifier", train_classifier, "knn|lda|rf|mlp");
  cmd_train->add_option("--model", train_model, "output model path");
  cmd_train->add_option("--input", train_input, "directory of RR CSV files");
  cmd_train->add_flag("--synthetic", train_synthetic, "use a generated corpus");

  auto* cmd_evaluate = app.add_subcommand("evaluate", "per-subject and per-device reports");
  add_common(cmd_evaluate, eval_opts);
  std::string eval_input, eval_out;
  bool eval_synthetic = false;
  cmd_evaluate->add_option("--input", eval_input, "directory of RR CSV files");
  cmd_evaluate->add_flag("--synthetic", eval_synthetic, "use a generated corpus");
  cmd_evaluate->add_option("--out", eval_out, "report output directory");

  auto* cmd_sweep = app.add_subcommand("sweep", "quality-threshold sweep report");
  add_common(cmd_sweep, sweep_opts);
  std::string sweep_input, sweep_out, sweep_thresholds;
  bool sweep_synthetic = false;
  cmd_sweep->add_option("--input", sweep_input, "directory of RR CSV files");
  cmd_sweep->add_flag("--synthetic", sweep_synthetic, "use a generated corpus");
  cmd_sweep->add_option("--out", sweep_out, "report output directory");
  cmd_sweep->add_option("--quality-thresholds", sweep_thresholds,
                        "comma-separated thresholds");

  auto* cmd_synth = app.add_subcommand("synth", "write a synthetic corpus as generic CSVs");
  add_common(cmd_synth, synth_opts);
  std::string synth_out = "corpus";
  int synth_subjects = -1;
  long synth_seed = -1;
  cmd_synth->add_option("--out", synth_out, "output directory");
  cmd_synth->add_option("--subjects", synth_subjects, "subject count");
  cmd_synth->add_option("--seed", synth_seed, "master seed");

  auto* cmd_replay = app.add_subcommand("replay", "run a recording through an enrolled model");
  add_common(cmd_replay, replay_opts);
  std::string replay_model, replay_series, replay_out;
  double replay_stride = -1.0, replay_threshold = -1.0;
  cmd_replay->add_option("--model", replay_model, "trained model JSON")->required();
  cmd_replay->add_option("--series", replay_series, "RR CSV to replay")->required();
  cmd_replay->add_option("--stride", replay_stride, "decision stride seconds");
  cmd_replay->add_option("--threshold", replay_threshold, "accept threshold override");
  cmd_replay->add_option("--out", replay_out, "decision log path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_pipeline->parsed()) {
    return run_guarded("pipeline", [&] {
      RunConfig cfg = resolve_config(pipeline_opts);
      if (opt_synthetic) cfg.synthetic = true;
      if (opt_subjects > 0) cfg.synth_subjects = opt_subjects;
      if (opt_seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt_seed);
      if (!opt_input.empty()) cfg.input_dir = opt_input;
      if (!opt_out.empty()) cfg.out_dir = opt_out;
      if (!opt_thresholds.empty()) apply_override(cfg, "quality_thresholds", opt_thresholds);
      cfg.validate();
      if (!cfg.synthetic && cfg.input_dir.empty())
        throw pipeline::StageError("ingest", "", "no input: pass --input or --synthetic",
                                   true);
      const pipeline::Outcome outcome = pipeline::run(cfg);
      std::cout << pipeline::summary_table(outcome, cfg);
      std::cout << "\nreports:\n";
      for (const std::string& p : outcome.report_paths) std::cout << "  " << p << "\n";
      return 0;
    });
  }

  if (cmd_features->parsed()) {
    return run_guarded("features", [&] {
      RunConfig cfg = resolve_config(features_opts);
      if (feat_synthetic) cfg.synthetic = true;
      if (!feat_input.empty()) cfg.input_dir = feat_input;
      if (!cfg.synthetic && cfg.input_dir.empty())
        throw pipeline::StageError("ingest", "", "no input: pass --input or --synthetic",
                                   true);
      const auto dataset = dataset_for(cfg);
      report::write_text(feat_out, report::config_header(cfg) + modeling::to_csv(dataset));
      std::cout << "wrote " << dataset.size() << " windows to " << feat_out << "\n";
      return 0;
    });
  }

  if (cmd_train->parsed()) {
    return run_guarded("train", [&] {
      RunConfig cfg = resolve_config(train_opts);
      if (train_synthetic) cfg.synthetic = true;
      if (!train_input.empty()) cfg.input_dir = train_input;
      if (!cfg.synthetic && cfg.input_dir.empty())
        throw pipeline::StageError("ingest", "", "no input: pass --input or --synthetic",
                                   true);
      const auto dataset = dataset_for(cfg);
      const auto balanced = pipeline::prepare_balanced(cfg, dataset);
      const auto model = eval::train_final(balanced, train_subject,
                                           modeling::classifier_from_name(train_classifier),
                                           pipeline::eval_config(cfg));
      modeling::save_model(model, train_model);
      std::cout << "saved " << train_classifier << " model for " << train_subject
                << " to " << train_model << " (enroll threshold "
                << model.enroll_threshold << ")\n";
      return 0;
    });
  }

  if (cmd_evaluate->parsed()) {
    return run_guarded("evaluate", [&] {
      RunConfig cfg = resolve_config(eval_opts);
      if (eval_synthetic) cfg.synthetic = true;
      if (!eval_input.empty()) cfg.input_dir = eval_input;
      if (!eval_out.empty()) cfg.out_dir = eval_out;
      if (!cfg.synthetic && cfg.input_dir.empty())
        throw pipeline::StageError("ingest", "", "no input: pass --input or --synthetic",
                                   true);
      const auto dataset = dataset_for(cfg);
      const auto balanced = pipeline::prepare_balanced(cfg, dataset);
      const auto results =
          eval::evaluate_all(balanced, cfg.classifiers, pipeline::eval_config(cfg));
      const auto devices = eval::aggregate_by_device(results, balanced);
      fs::create_directories(cfg.out_dir);
      report::write_text((fs::path(cfg.out_dir) / "per_subject.csv").string(),
                         report::subject_csv(results, cfg));
      report::write_text((fs::path(cfg.out_dir) / "per_subject.json").string(),
                         report::subject_json(results, cfg));
      report::write_text((fs::path(cfg.out_dir) / "per_device.csv").string(),
                         report::device_csv(devices, cfg));
      report::write_text((fs::path(cfg.out_dir) / "per_device.json").string(),
                         report::device_json(devices, cfg));
      std::cout << "wrote per-subject and per-device reports to " << cfg.out_dir << "\n";
      return 0;
    });
  }

  if (cmd_sweep->parsed()) {
    return run_guarded("sweep", [&] {
      RunConfig cfg = resolve_config(sweep_opts);
      if (sweep_synthetic) cfg.synthetic = true;
      if (!sweep_input.empty()) cfg.input_dir = sweep_input;
      if (!sweep_out.empty()) cfg.out_dir = sweep_out;
      if (!sweep_thresholds.empty())
        apply_override(cfg, "quality_thresholds", sweep_thresholds);
      if (!cfg.synthetic && cfg.input_dir.empty())
        throw pipeline::StageError("ingest", "", "no input: pass --input or --synthetic",
                                   true);
      const auto dataset = modeling::drop_undefined(dataset_for(cfg));
      const auto rows =
          eval::quality_sweep(dataset, cfg.quality_thresholds, cfg.sweep_classifier,
                              pipeline::eval_config(cfg), cfg.subsample_cap,
                              cfg.sweep_min_windows);
      fs::create_directories(cfg.out_dir);
      report::write_text((fs::path(cfg.out_dir) / "sweep.csv").string(),
                         report::sweep_csv(rows, cfg));
      report::write_text((fs::path(cfg.out_dir) / "sweep.json").string(),
                         report::sweep_json(rows, cfg));
      std::cout << "wrote sweep report (" << rows.size() << " rows) to " << cfg.out_dir
                << "\n";
      return 0;
    });
  }

  if (cmd_synth->parsed()) {
    return run_guarded("synth", [&] {
      RunConfig cfg = resolve_config(synth_opts);
      if (synth_subjects > 0) cfg.synth_subjects = synth_subjects;
      if (synth_seed >= 0) cfg.seed = static_cast<std::uint64_t>(synth_seed);
      synth::CorpusConfig sc;
      sc.n_subjects = cfg.synth_subjects;
      sc.separation = cfg.synth_separation;
      sc.seed = sub_seed(cfg.seed, "corpus");
      sc.artifacts.uniform = cfg.synth_uniform_artifacts;
      sc.artifacts.e4 = {cfg.artifact_rate_e4, 0.5, cfg.artifact_burst_e4};
      sc.artifacts.gear_s = {cfg.artifact_rate_gears, 0.5, cfg.artifact_burst_gears};
      sc.artifacts.gear_s2 = {cfg.artifact_rate_gears2, 0.5, cfg.artifact_burst_gears2};
      fs::create_directories(synth_out);
      const auto paths = synth::write_corpus_csv(synth::generate_corpus(sc), synth_out);
      std::cout << "wrote " << paths.size() << " session files to " << synth_out << "\n";
      return 0;
    });
  }

  if (cmd_replay->parsed()) {
    return run_guarded("replay", [&] {
      RunConfig cfg = resolve_config(replay_opts);
      const auto model = modeling::load_model(replay_model);
      double threshold = replay_threshold >= 0.0 ? replay_threshold : model.enroll_threshold;
      if (!(threshold >= 0.0 && threshold <= 1.0))
        throw ConfigError("model has no enrollment threshold; pass --threshold");
      authd::AuthConfig ac;
      ac.window_s = cfg.window_s;
      ac.stride_s = replay_stride > 0.0 ? replay_stride : cfg.auth_stride_s;
      ac.smoothing_m = cfg.smoothing_m;
      ac.quality_floor = cfg.auth_quality_floor;
      ac.rel_threshold = cfg.rel_threshold;
      ac.local_window = cfg.local_window;
      ac.spectral = cfg.spectral;
      authd::SessionState session = authd::enroll(model, threshold, ac);
      const RRSeries series = ingest::load_file(replay_series);
      const std::string log = authd::decisions_to_ndjson(authd::replay(session, series));
      if (replay_out.empty())
        std::cout << log;
      else
        report::write_text(replay_out, log);
      return 0;
    });
  }

  return kExitError;
}
