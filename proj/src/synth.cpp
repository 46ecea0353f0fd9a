#include "hrvauth/synth.hpp"

#include <cmath>
#include <cstdio>

#include "hrvauth/ingest.hpp"
#include "hrvauth/rng.hpp"

namespace hrvauth::synth {

void SubjectProfile::validate() const {
  if (!(mean_rr > 0.0)) throw ConfigError("profile: mean_rr must be > 0");
  if (lf_amp < 0.0 || hf_amp < 0.0 || noise_sd < 0.0)
    throw ConfigError("profile: amplitudes and noise must be >= 0");
  if (!(mean_rr > lf_amp + hf_amp + 4.0 * noise_sd))
    throw ConfigError("profile: mean_rr must exceed lf_amp + hf_amp + 4*noise_sd to keep rr positive");
  if (!(lf_freq >= 0.04 && lf_freq < 0.15))
    throw ConfigError("profile: lf_freq must lie in [0.04, 0.15)");
  if (!(hf_freq >= 0.15 && hf_freq < 0.4))
    throw ConfigError("profile: hf_freq must lie in [0.15, 0.4)");
}

double SubjectProfile::derived_sdnn() const {
  return std::sqrt(lf_amp * lf_amp / 2.0 + hf_amp * hf_amp / 2.0 + noise_sd * noise_sd);
}

void ArtifactSpec::validate() const {
  if (spike_rate_per_min < 0.0) throw ConfigError("spike_rate must be >= 0");
  if (!(spike_rel_amp > 0.0 && spike_rel_amp < 1.0))
    throw ConfigError("spike_rel_amp must be in (0,1) to keep rr positive");
  if (burst_len < 1) throw ConfigError("burst_len must be >= 1");
}

std::vector<SessionSpec> default_session_plan() {
  return {{"baseline", 20.0}, {"lecture", 40.0}, {"examination", 20.0}, {"recovery", 20.0}};
}

const ArtifactSpec& DeviceArtifactRates::for_device(DeviceKind d) const {
  if (uniform) return e4;
  switch (d) {
    case DeviceKind::GearS: return gear_s;
    case DeviceKind::GearS2: return gear_s2;
    default: return e4;
  }
}

RRSeries generate_rr(const SubjectProfile& profile, double duration_s, std::uint64_t seed) {
  profile.validate();
  if (duration_s < 240.0)
    throw ConfigError("generated series must cover >= 240 s for downstream windowing");

  Rng rng(seed);
  RRSeries series;
  series.subject_id = "synthetic";
  series.device = DeviceKind::Generic;
  double t = 0.0;
  while (t < duration_s) {
    const double rr = profile.mean_rr +
                      profile.lf_amp * std::sin(2.0 * M_PI * profile.lf_freq * t) +
                      profile.hf_amp * std::sin(2.0 * M_PI * profile.hf_freq * t) +
                      rng.normal(0.0, profile.noise_sd);
    series.samples.push_back({t, rr});
    t += rr / 1000.0;
  }
  validate(series);
  return series;
}

std::pair<RRSeries, preprocess::ArtifactMask> inject_artifacts(const RRSeries& series,
                                                               const ArtifactSpec& spec,
                                                               std::uint64_t seed) {
  spec.validate();
  RRSeries out = series;
  preprocess::ArtifactMask mask;
  mask.flags.assign(series.samples.size(), 0);
  if (spec.spike_rate_per_min == 0.0) return {std::move(out), std::move(mask)};

  Rng rng(seed);
  const size_t n = series.samples.size();
  const size_t lead_in = 8;  // clean prefix for causal detectors
  constexpr size_t kGap = 2; // clean beats separating events
  size_t i = lead_in;
  while (i + static_cast<size_t>(spec.burst_len) <= n) {
    // Poisson thinning: event start probability per beat equals
    // rate_per_min * beat duration in minutes.
    const double p = spec.spike_rate_per_min * series.samples[i].rr / 60000.0;
    if (rng.uniform01() < p) {
      const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
      for (size_t j = 0; j < static_cast<size_t>(spec.burst_len); ++j) {
        out.samples[i + j].rr *= 1.0 + sign * spec.spike_rel_amp;
        mask.flags[i + j] = 1;
      }
      i += static_cast<size_t>(spec.burst_len) + kGap;
    } else {
      ++i;
    }
  }
  return {std::move(out), std::move(mask)};
}

std::vector<DeviceKind> device_assignment(int n_subjects) {
  // the 8/3/17 study split, scaled proportionally for other corpus sizes
  int n_e4 = static_cast<int>(std::lround(n_subjects * 8.0 / 28.0));
  int n_gear_s = static_cast<int>(std::lround(n_subjects * 3.0 / 28.0));
  if (n_e4 + n_gear_s > n_subjects) n_gear_s = n_subjects - n_e4;
  std::vector<DeviceKind> devices;
  devices.reserve(static_cast<size_t>(n_subjects));
  for (int i = 0; i < n_subjects; ++i) {
    if (i < n_e4)
      devices.push_back(DeviceKind::EmpaticaE4);
    else if (i < n_e4 + n_gear_s)
      devices.push_back(DeviceKind::GearS);
    else
      devices.push_back(DeviceKind::GearS2);
  }
  return devices;
}

Corpus generate_corpus(const CorpusConfig& cfg) {
  if (cfg.n_subjects < 2) throw ConfigError("corpus needs >= 2 subjects");
  if (cfg.separation < 0.0) throw ConfigError("separation must be >= 0");
  if (cfg.plan.empty()) throw ConfigError("session plan is empty");

  const std::vector<DeviceKind> devices = device_assignment(cfg.n_subjects);
  Corpus corpus;
  corpus.reserve(static_cast<size_t>(cfg.n_subjects));

  for (int s = 0; s < cfg.n_subjects; ++s) {
    SubjectRecord rec;
    rec.subject_id = "P" + std::to_string(s + 1);
    rec.device = devices[static_cast<size_t>(s)];

    Rng draw(sub_seed(cfg.seed, "profile", static_cast<std::uint64_t>(s)));
    const double sep = cfg.separation;
    SubjectProfile& p = rec.profile;
    p.mean_rr = 850.0 + sep * draw.uniform(-200.0, 200.0);
    p.lf_amp = 40.0 + sep * draw.uniform(-25.0, 25.0);
    p.lf_freq = 0.095 + sep * draw.uniform(-0.045, 0.045);
    p.hf_amp = 25.0 + sep * draw.uniform(-15.0, 15.0);
    p.hf_freq = 0.275 + sep * draw.uniform(-0.1, 0.1);
    p.noise_sd = 15.0 + sep * draw.uniform(-8.0, 8.0);
    p.sdnn_target = p.derived_sdnn();
    p.seed = sub_seed(cfg.seed, "subject", static_cast<std::uint64_t>(s));
    p.validate();

    const ArtifactSpec& artifacts = cfg.artifacts.for_device(rec.device);
    double session_offset = 0.0;
    for (size_t k = 0; k < cfg.plan.size(); ++k) {
      const double duration = cfg.plan[k].minutes * 60.0;
      RRSeries session = generate_rr(p, duration, sub_seed(p.seed, "session", k));
      auto [corrupted, mask] =
          inject_artifacts(session, artifacts, sub_seed(p.seed, "artifacts", k));
      corrupted.subject_id = rec.subject_id;
      corrupted.device = rec.device;
      corrupted.session_start = 1560000000.0 + session_offset;
      rec.sessions.push_back(std::move(corrupted));
      session_offset += duration;
    }
    corpus.push_back(std::move(rec));
  }
  return corpus;
}

std::vector<std::string> write_corpus_csv(const Corpus& corpus, const std::string& dir) {
  std::vector<std::string> paths;
  for (const SubjectRecord& rec : corpus) {
    for (size_t k = 0; k < rec.sessions.size(); ++k) {
      char name[64];
      std::snprintf(name, sizeof(name), "%s_s%02zu.csv", rec.subject_id.c_str(), k);
      const std::string path = dir + "/" + name;
      ingest::save_generic(rec.sessions[k], path);
      paths.push_back(path);
    }
  }
  return paths;
}

}  // namespace hrvauth::synth
