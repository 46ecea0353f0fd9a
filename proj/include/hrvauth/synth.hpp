#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrvauth/preprocess.hpp"
#include "hrvauth/rr.hpp"

namespace hrvauth::synth {

/// Generative parameters for one synthetic subject. The rr signal is
/// mean_rr plus one LF and one HF sinusoid plus white Gaussian noise.
struct SubjectProfile {
  double mean_rr = 850.0;   // ms
  double sdnn_target = 0.0; // descriptive; derived from the components
  double lf_amp = 40.0;     // ms
  double lf_freq = 0.095;   // Hz, inside 0.04-0.15
  double hf_amp = 25.0;     // ms
  double hf_freq = 0.275;   // Hz, inside 0.15-0.4
  double noise_sd = 15.0;   // ms
  std::uint64_t seed = 0;

  void validate() const;  // positivity headroom and band placement
  double derived_sdnn() const;
};

struct ArtifactSpec {
  double spike_rate_per_min = 0.0;
  double spike_rel_amp = 0.5;  // rr multiplied by (1 +- this)
  int burst_len = 1;

  void validate() const;
};

struct SessionSpec {
  std::string name;
  double minutes = 0.0;
};

/// Fig-7 style plan: baseline 20, lecture 40, examination 20,
/// recovery 20 minutes (the free-time block is not generated).
std::vector<SessionSpec> default_session_plan();

struct DeviceArtifactRates {
  ArtifactSpec e4{3.0, 0.5, 1};
  ArtifactSpec gear_s{7.0, 0.5, 2};
  ArtifactSpec gear_s2{16.0, 0.5, 3};
  bool uniform = false;  // when set, every device uses the e4 spec

  const ArtifactSpec& for_device(DeviceKind d) const;
};

struct CorpusConfig {
  int n_subjects = 28;
  std::vector<SessionSpec> plan = default_session_plan();
  double separation = 1.0;  // scales inter-subject profile spread
  std::uint64_t seed = 7;
  DeviceArtifactRates artifacts;
};

struct SubjectRecord {
  std::string subject_id;
  DeviceKind device = DeviceKind::Generic;
  SubjectProfile profile;
  std::vector<RRSeries> sessions;
};

using Corpus = std::vector<SubjectRecord>;

/// Beat times integrate the instantaneous rr:
/// t_{i+1} = t_i + rr(t_i)/1000, starting at t = 0. Deterministic per
/// (profile, seed); duration must be >= 240 s.
RRSeries generate_rr(const SubjectProfile& profile, double duration_s, std::uint64_t seed);

/// Poisson-thinned spike events: each event multiplies `burst_len`
/// consecutive rr values by (1 +- spike_rel_amp); events stay disjoint
/// with a small clean gap and skip a short lead-in so causal detectors
/// see an uncontaminated prefix. Returns the corrupted series and the
/// exact truth mask.
std::pair<RRSeries, preprocess::ArtifactMask> inject_artifacts(const RRSeries& series,
                                                               const ArtifactSpec& spec,
                                                               std::uint64_t seed);

/// Multi-subject corpus: profiles drawn around population defaults with
/// spread scaled by `separation`, devices split 8/3/17
/// (E4/GearS/GearS2) at 28 subjects and proportionally otherwise,
/// device kind controlling each subject's artifact contamination.
Corpus generate_corpus(const CorpusConfig& cfg);

/// Device split helper, exposed for tests.
std::vector<DeviceKind> device_assignment(int n_subjects);

/// Writes every session as a generic CSV under dir (created by caller);
/// returns the file paths.
std::vector<std::string> write_corpus_csv(const Corpus& corpus, const std::string& dir);

}  // namespace hrvauth::synth
