#include "hrvauth/authd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace hrvauth::authd {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::InsufficientData: return "insufficient_data";
  }
  return "insufficient_data";
}

void AuthConfig::validate() const {
  if (!(window_s > 0.0)) throw ConfigError("window_s must be > 0");
  if (!(stride_s > 0.0)) throw ConfigError("stride_s must be > 0");
  if (smoothing_m < 1) throw ConfigError("smoothing_m must be >= 1");
  if (quality_floor < 0.0 || quality_floor > 1.0)
    throw ConfigError("quality_floor must be in [0,1]");
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw ConfigError("rel_threshold must be in (0,1)");
  if (local_window < 1) throw ConfigError("local_window must be >= 1");
  spectral.validate();
}

SessionState::SessionState(modeling::TrainedModel model, double accept_threshold,
                           AuthConfig cfg)
    : model_(std::move(model)), accept_threshold_(accept_threshold), cfg_(cfg) {
  cfg_.validate();
  if (!(accept_threshold_ >= 0.0 && accept_threshold_ <= 1.0))
    throw ConfigError("accept threshold must be in [0,1], got " +
                      std::to_string(accept_threshold_));
}

SessionState enroll(modeling::TrainedModel model, double eer_threshold, AuthConfig cfg) {
  return SessionState(std::move(model), eer_threshold, cfg);
}

double SessionState::window_quality(double window_start, double window_end) const {
  long accepted = 0, rejected = 0;
  for (const RRSample& s : accepted_)
    if (s.t >= window_start && s.t < window_end) ++accepted;
  for (double t : rejected_t_)
    if (t >= window_start && t < window_end) ++rejected;
  if (accepted + rejected == 0) return 0.0;
  return static_cast<double>(accepted) / static_cast<double>(accepted + rejected);
}

Decision SessionState::decide_at(double due) {
  Decision d;
  d.t = due;
  const double start = due - cfg_.window_s;
  d.quality = window_quality(start, due);

  preprocess::CleanWindow window;
  window.window_start = start;
  window.duration = cfg_.window_s;
  window.subject_id = model_.subject_id;
  for (const RRSample& s : accepted_)
    if (s.t >= start && s.t < due) window.beats.push_back(s);

  if (d.quality < cfg_.quality_floor) return d;  // InsufficientData

  features::HRVFeatures f;
  try {
    f = features::extract(window, cfg_.spectral);
  } catch (const InsufficientDataError&) {
    return d;
  }
  if (!f.all_defined()) return d;

  const auto vec = f.to_vector();
  const double score = model_.score(std::vector<double>(vec.begin(), vec.end()));
  d.score = score;

  raw_verdicts_.push_back(score >= accept_threshold_);
  while (raw_verdicts_.size() > static_cast<size_t>(cfg_.smoothing_m))
    raw_verdicts_.pop_front();
  const long accepts = std::count(raw_verdicts_.begin(), raw_verdicts_.end(), true);
  // strict majority of the available raw verdicts; ties reject
  d.verdict = 2 * accepts > static_cast<long>(raw_verdicts_.size()) ? Verdict::Accept
                                                                    : Verdict::Reject;
  return d;
}

void SessionState::evict(double now) {
  const double horizon = now - (cfg_.window_s + cfg_.stride_s);
  while (!accepted_.empty() && accepted_.front().t < horizon) accepted_.pop_front();
  while (!rejected_t_.empty() && rejected_t_.front() < horizon) rejected_t_.pop_front();
}

std::vector<Decision> SessionState::push_beat(const RRSample& sample) {
  if (!(sample.rr > 0.0)) throw ValidationError("push_beat: rr must be > 0");
  if (started_ && sample.t < last_t_)
    throw ValidationError("push_beat: non-monotone timestamp " + std::to_string(sample.t) +
                          " after " + std::to_string(last_t_));
  if (!started_) {
    started_ = true;
    origin_ = std::max(0.0, sample.t - sample.rr / 1000.0);
    next_due_ = origin_ + cfg_.window_s;
  }
  last_t_ = sample.t;

  // causal artifact rule, same definition as the offline detector
  bool accept_beat = true;
  if (pushed_ >= static_cast<size_t>(cfg_.local_window)) {
    const double avg = detector_sum_ / static_cast<double>(detector_recent_.size());
    accept_beat = std::fabs(sample.rr - avg) <= cfg_.rel_threshold * avg;
  }
  ++pushed_;
  if (accept_beat) {
    accepted_.push_back(sample);
    detector_recent_.push_back(sample.rr);
    detector_sum_ += sample.rr;
    if (detector_recent_.size() > static_cast<size_t>(cfg_.local_window)) {
      detector_sum_ -= detector_recent_.front();
      detector_recent_.pop_front();
    }
  } else {
    rejected_t_.push_back(sample.t);
  }

  // the current beat sits at t >= due, outside the half-open window
  std::vector<Decision> out;
  while (sample.t >= next_due_) {
    Decision d = decide_at(next_due_);
    last_decision_ = d;
    out.push_back(std::move(d));
    next_due_ += cfg_.stride_s;
  }
  evict(sample.t);
  return out;
}

Decision SessionState::poll() const {
  if (last_decision_) return *last_decision_;
  Decision d;
  d.t = started_ ? last_t_ : 0.0;
  d.verdict = Verdict::InsufficientData;
  d.quality = started_ ? window_quality(last_t_ - cfg_.window_s, last_t_) : 0.0;
  return d;
}

std::vector<Decision> replay(SessionState& state, const RRSeries& series) {
  validate(series);
  std::vector<Decision> log;
  for (const RRSample& s : series.samples) {
    std::vector<Decision> emitted = state.push_beat(s);
    log.insert(log.end(), emitted.begin(), emitted.end());
  }
  if (log.empty()) log.push_back(state.poll());
  return log;
}

std::string decision_to_ndjson(const Decision& d) {
  nlohmann::json j;
  j["t"] = d.t;
  j["verdict"] = verdict_name(d.verdict);
  if (d.score)
    j["score"] = *d.score;
  else
    j["score"] = nullptr;
  j["quality"] = d.quality;
  return j.dump();
}

std::string decisions_to_ndjson(const std::vector<Decision>& log) {
  std::ostringstream out;
  for (const Decision& d : log) out << decision_to_ndjson(d) << "\n";
  return out.str();
}

}  // namespace hrvauth::authd
