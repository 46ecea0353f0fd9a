#include "hrvauth/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hrvauth {

namespace {

double to_double(const std::string& v, const std::string& key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config key '" + key + "': cannot parse number '" + v + "'");
  return out;
}

long to_long(const std::string& v, const std::string& key) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config key '" + key + "': cannot parse integer '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': cannot parse boolean '" + v + "'");
}

std::vector<std::string> split_csv(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(v);
  while (std::getline(stream, item, ',')) out.push_back(item);
  return out;
}

std::pair<double, double> to_band(const std::string& v, const std::string& key) {
  const auto parts = split_csv(v);
  if (parts.size() != 2)
    throw ConfigError("config key '" + key + "': expected 'lo,hi', got '" + v + "'");
  return {to_double(parts[0], key), to_double(parts[1], key)};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_band(const std::pair<double, double>& b) {
  return fmt(b.first) + "," + fmt(b.second);
}

}  // namespace

void RunConfig::validate() const {
  if (!(window_s > 0.0)) throw ConfigError("window_s must be > 0");
  if (!(stride_s > 0.0 && stride_s <= window_s))
    throw ConfigError("stride_s must satisfy 0 < stride_s <= window_s");
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw ConfigError("rel_threshold must be in (0,1)");
  if (local_window < 1) throw ConfigError("local_window must be >= 1");
  if (min_consecutive_samples < 1 || !(min_consecutive_seconds > 0.0))
    throw ConfigError("constraint minima must be strictly positive");
  spectral.validate();
  if (!(pca_variance > 0.0 && pca_variance <= 1.0))
    throw ConfigError("pca_variance must be in (0,1]");
  if (subsample_cap < 1) throw ConfigError("subsample_cap must be >= 1");
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (classifiers.empty()) throw ConfigError("at least one classifier required");
  if (min_quality < 0.0 || min_quality > 1.0)
    throw ConfigError("min_quality must be in [0,1]");
  for (size_t i = 0; i < quality_thresholds.size(); ++i) {
    if (quality_thresholds[i] < 0.0 || quality_thresholds[i] > 1.0)
      throw ConfigError("quality thresholds must be in [0,1]");
    if (i > 0 && quality_thresholds[i] <= quality_thresholds[i - 1])
      throw ConfigError("quality thresholds must be sorted ascending");
  }
  if (sweep_min_windows < 1) throw ConfigError("sweep_min_windows must be >= 1");
  if (synth_subjects < 2) throw ConfigError("synth_subjects must be >= 2");
  if (synth_separation < 0.0) throw ConfigError("synth_separation must be >= 0");
  if (!(auth_stride_s > 0.0)) throw ConfigError("auth_stride_s must be > 0");
  if (smoothing_m < 1) throw ConfigError("smoothing_m must be >= 1");
  if (auth_quality_floor < 0.0 || auth_quality_floor > 1.0)
    throw ConfigError("auth_quality_floor must be in [0,1]");
  if (hp.knn_k < 1 || hp.rf_trees < 1 || hp.mlp_hidden < 1 || hp.mlp_epochs < 1 ||
      hp.mlp_batch < 1)
    throw ConfigError("classifier hyperparameters must be >= 1");
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "window_s") cfg.window_s = to_double(value, key);
  else if (key == "stride_s") cfg.stride_s = to_double(value, key);
  else if (key == "rel_threshold") cfg.rel_threshold = to_double(value, key);
  else if (key == "local_window") cfg.local_window = static_cast<int>(to_long(value, key));
  else if (key == "use_constraints") cfg.use_constraints = to_bool(value, key);
  else if (key == "min_consecutive_samples")
    cfg.min_consecutive_samples = static_cast<int>(to_long(value, key));
  else if (key == "min_consecutive_seconds")
    cfg.min_consecutive_seconds = to_double(value, key);
  else if (key == "resample_hz") cfg.spectral.resample_hz = to_double(value, key);
  else if (key == "detrend") cfg.spectral.detrend = to_bool(value, key);
  else if (key == "window_fn") {
    if (value == "hann") cfg.spectral.window_fn = features::WindowFn::Hann;
    else if (value == "rect") cfg.spectral.window_fn = features::WindowFn::Rect;
    else throw ConfigError("window_fn must be 'hann' or 'rect'");
  }
  else if (key == "vlf_band") cfg.spectral.vlf_band = to_band(value, key);
  else if (key == "lf_band") cfg.spectral.lf_band = to_band(value, key);
  else if (key == "hf_band") cfg.spectral.hf_band = to_band(value, key);
  else if (key == "pca_variance") cfg.pca_variance = to_double(value, key);
  else if (key == "subsample_cap") cfg.subsample_cap = static_cast<int>(to_long(value, key));
  else if (key == "folds") cfg.folds = static_cast<int>(to_long(value, key));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(value, key));
  else if (key == "classifiers") {
    cfg.classifiers.clear();
    for (const std::string& name : split_csv(value))
      cfg.classifiers.push_back(modeling::classifier_from_name(name));
  }
  else if (key == "knn_k") cfg.hp.knn_k = static_cast<int>(to_long(value, key));
  else if (key == "rf_trees") cfg.hp.rf_trees = static_cast<int>(to_long(value, key));
  else if (key == "mlp_hidden") cfg.hp.mlp_hidden = static_cast<int>(to_long(value, key));
  else if (key == "mlp_learning_rate") cfg.hp.mlp_learning_rate = to_double(value, key);
  else if (key == "mlp_momentum") cfg.hp.mlp_momentum = to_double(value, key);
  else if (key == "mlp_epochs") cfg.hp.mlp_epochs = static_cast<int>(to_long(value, key));
  else if (key == "mlp_batch") cfg.hp.mlp_batch = static_cast<int>(to_long(value, key));
  else if (key == "lda_ridge_factor") cfg.hp.lda_ridge_factor = to_double(value, key);
  else if (key == "min_quality") cfg.min_quality = to_double(value, key);
  else if (key == "quality_thresholds") {
    cfg.quality_thresholds.clear();
    for (const std::string& t : split_csv(value))
      cfg.quality_thresholds.push_back(to_double(t, key));
  }
  else if (key == "sweep_classifier")
    cfg.sweep_classifier = modeling::classifier_from_name(value);
  else if (key == "sweep_min_windows")
    cfg.sweep_min_windows = static_cast<int>(to_long(value, key));
  else if (key == "synth_subjects") cfg.synth_subjects = static_cast<int>(to_long(value, key));
  else if (key == "synth_separation") cfg.synth_separation = to_double(value, key);
  else if (key == "synth_uniform_artifacts") cfg.synth_uniform_artifacts = to_bool(value, key);
  else if (key == "artifact_rate_e4") cfg.artifact_rate_e4 = to_double(value, key);
  else if (key == "artifact_rate_gears") cfg.artifact_rate_gears = to_double(value, key);
  else if (key == "artifact_rate_gears2") cfg.artifact_rate_gears2 = to_double(value, key);
  else if (key == "artifact_burst_e4") cfg.artifact_burst_e4 = static_cast<int>(to_long(value, key));
  else if (key == "artifact_burst_gears") cfg.artifact_burst_gears = static_cast<int>(to_long(value, key));
  else if (key == "artifact_burst_gears2") cfg.artifact_burst_gears2 = static_cast<int>(to_long(value, key));
  else if (key == "auth_stride_s") cfg.auth_stride_s = to_double(value, key);
  else if (key == "smoothing_m") cfg.smoothing_m = static_cast<int>(to_long(value, key));
  else if (key == "auth_quality_floor") cfg.auth_quality_floor = to_double(value, key);
  else if (key == "synthetic") cfg.synthetic = to_bool(value, key);
  else if (key == "input_dir") cfg.input_dir = value;
  else if (key == "out_dir") cfg.out_dir = value;
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const size_t v0 = value.find_first_not_of(" \t");
    value = v0 == std::string::npos ? "" : value.substr(v0);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
    apply_override(cfg, key, value);
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("window_s", fmt(window_s));
  e.emplace_back("stride_s", fmt(stride_s));
  e.emplace_back("rel_threshold", fmt(rel_threshold));
  e.emplace_back("local_window", std::to_string(local_window));
  e.emplace_back("use_constraints", use_constraints ? "true" : "false");
  e.emplace_back("min_consecutive_samples", std::to_string(min_consecutive_samples));
  e.emplace_back("min_consecutive_seconds", fmt(min_consecutive_seconds));
  e.emplace_back("resample_hz", fmt(spectral.resample_hz));
  e.emplace_back("detrend", spectral.detrend ? "true" : "false");
  e.emplace_back("window_fn",
                 spectral.window_fn == features::WindowFn::Hann ? "hann" : "rect");
  e.emplace_back("vlf_band", fmt_band(spectral.vlf_band));
  e.emplace_back("lf_band", fmt_band(spectral.lf_band));
  e.emplace_back("hf_band", fmt_band(spectral.hf_band));
  e.emplace_back("pca_variance", fmt(pca_variance));
  e.emplace_back("subsample_cap", std::to_string(subsample_cap));
  e.emplace_back("folds", std::to_string(folds));
  e.emplace_back("seed", std::to_string(seed));
  std::string kinds;
  for (size_t i = 0; i < classifiers.size(); ++i)
    kinds += (i ? "," : "") + modeling::classifier_name(classifiers[i]);
  e.emplace_back("classifiers", kinds);
  e.emplace_back("knn_k", std::to_string(hp.knn_k));
  e.emplace_back("rf_trees", std::to_string(hp.rf_trees));
  e.emplace_back("mlp_hidden", std::to_string(hp.mlp_hidden));
  e.emplace_back("mlp_learning_rate", fmt(hp.mlp_learning_rate));
  e.emplace_back("mlp_momentum", fmt(hp.mlp_momentum));
  e.emplace_back("mlp_epochs", std::to_string(hp.mlp_epochs));
  e.emplace_back("mlp_batch", std::to_string(hp.mlp_batch));
  e.emplace_back("lda_ridge_factor", fmt(hp.lda_ridge_factor));
  e.emplace_back("min_quality", fmt(min_quality));
  std::string thresholds;
  for (size_t i = 0; i < quality_thresholds.size(); ++i)
    thresholds += (i ? "," : "") + fmt(quality_thresholds[i]);
  e.emplace_back("quality_thresholds", thresholds);
  e.emplace_back("sweep_classifier", modeling::classifier_name(sweep_classifier));
  e.emplace_back("sweep_min_windows", std::to_string(sweep_min_windows));
  e.emplace_back("synth_subjects", std::to_string(synth_subjects));
  e.emplace_back("synth_separation", fmt(synth_separation));
  e.emplace_back("synth_uniform_artifacts", synth_uniform_artifacts ? "true" : "false");
  e.emplace_back("artifact_rate_e4", fmt(artifact_rate_e4));
  e.emplace_back("artifact_rate_gears", fmt(artifact_rate_gears));
  e.emplace_back("artifact_rate_gears2", fmt(artifact_rate_gears2));
  e.emplace_back("artifact_burst_e4", std::to_string(artifact_burst_e4));
  e.emplace_back("artifact_burst_gears", std::to_string(artifact_burst_gears));
  e.emplace_back("artifact_burst_gears2", std::to_string(artifact_burst_gears2));
  e.emplace_back("auth_stride_s", fmt(auth_stride_s));
  e.emplace_back("smoothing_m", std::to_string(smoothing_m));
  e.emplace_back("auth_quality_floor", fmt(auth_quality_floor));
  e.emplace_back("synthetic", synthetic ? "true" : "false");
  e.emplace_back("input_dir", input_dir);
  e.emplace_back("out_dir", out_dir);
  return e;
}

}  // namespace hrvauth
