#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "hrvauth/classifiers.hpp"
#include "hrvauth/features.hpp"
#include "hrvauth/rr.hpp"

namespace hrvauth::authd {

enum class Verdict { Accept, Reject, InsufficientData };

std::string verdict_name(Verdict v);

struct Decision {
  double t = 0.0;
  Verdict verdict = Verdict::InsufficientData;
  std::optional<double> score;
  double quality = 0.0;
};

struct AuthConfig {
  double window_s = 120.0;
  double stride_s = 5.0;
  int smoothing_m = 3;        // majority over the last m raw verdicts; 1 = raw
  double quality_floor = 0.5; // below this the window is unusable
  double rel_threshold = 0.20;
  int local_window = 5;
  features::SpectralConfig spectral;

  void validate() const;
};

/// Online sliding-window authenticator for one beat stream. Beats pass
/// the causal artifact rule before buffering; decisions fire on a fixed
/// stride schedule once the buffer spans a full window, never earlier.
/// Single writer per session; the enrolled model is read-only.
class SessionState {
 public:
  SessionState(modeling::TrainedModel model, double accept_threshold, AuthConfig cfg);

  /// Feeds one beat; returns the decisions that became due (normally
  /// none or one, several only after a long beat gap).
  std::vector<Decision> push_beat(const RRSample& sample);

  /// Snapshot without feeding data: InsufficientData until the first
  /// decision has been emitted, that decision afterwards.
  Decision poll() const;

  const modeling::TrainedModel& model() const { return model_; }
  double accept_threshold() const { return accept_threshold_; }

 private:
  Decision decide_at(double due);
  void evict(double now);
  double window_quality(double window_start, double window_end) const;

  modeling::TrainedModel model_;
  double accept_threshold_;
  AuthConfig cfg_;

  bool started_ = false;
  double origin_ = 0.0;       // estimated session time zero
  double last_t_ = 0.0;
  double next_due_ = 0.0;
  std::deque<RRSample> accepted_;
  std::deque<double> rejected_t_;
  std::deque<double> detector_recent_;  // last accepted rr values
  double detector_sum_ = 0.0;
  size_t pushed_ = 0;
  std::deque<bool> raw_verdicts_;
  std::optional<Decision> last_decision_;
};

SessionState enroll(modeling::TrainedModel model, double eer_threshold,
                    AuthConfig cfg = {});

/// Offline simulation of the online path: feeds every beat in order and
/// returns all decisions; a stream that never reaches warm-up yields a
/// single InsufficientData record.
std::vector<Decision> replay(SessionState& state, const RRSeries& series);

std::string decision_to_ndjson(const Decision& d);
std::string decisions_to_ndjson(const std::vector<Decision>& log);

}  // namespace hrvauth::authd
