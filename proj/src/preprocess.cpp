#include "hrvauth/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <sstream>

#include "hrvauth/spline.hpp"

namespace hrvauth::preprocess {

size_t ArtifactMask::count_flagged() const {
  return static_cast<size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

ArtifactMask detect_artifacts(const RRSeries& series, double rel_threshold,
                              int local_window) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw ConfigError("rel_threshold must be in (0,1)");
  if (local_window < 1) throw ConfigError("local_window must be >= 1");

  const size_t n = series.samples.size();
  ArtifactMask mask;
  mask.flags.assign(n, 0);
  if (n < static_cast<size_t>(local_window)) {
    mask.short_series_warning = true;
    return mask;
  }

  // Causal running mean over the last `local_window` accepted beats.
  std::deque<double> recent;
  double recent_sum = 0.0;
  auto accept = [&](double rr) {
    recent.push_back(rr);
    recent_sum += rr;
    if (recent.size() > static_cast<size_t>(local_window)) {
      recent_sum -= recent.front();
      recent.pop_front();
    }
  };

  for (size_t i = 0; i < n; ++i) {
    const double rr = series.samples[i].rr;
    if (i < static_cast<size_t>(local_window)) {
      accept(rr);  // seed beats, never flagged
      continue;
    }
    const double local_avg = recent_sum / static_cast<double>(recent.size());
    if (std::fabs(rr - local_avg) > rel_threshold * local_avg) {
      mask.flags[i] = 1;
    } else {
      accept(rr);
    }
  }
  return mask;
}

RRSeries remove_and_interpolate(const RRSeries& series, const ArtifactMask& mask) {
  const size_t n = series.samples.size();
  if (mask.flags.size() != n)
    throw ValidationError("artifact mask not aligned to series");

  std::vector<double> good_t, good_rr;
  good_t.reserve(n);
  good_rr.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!mask.flags[i]) {
      good_t.push_back(series.samples[i].t);
      good_rr.push_back(series.samples[i].rr);
    }
  }
  if (good_t.size() == n) return series;
  if (good_t.size() < 4)
    throw InsufficientDataError("fewer than 4 unflagged samples, cannot interpolate");

  CubicSpline spline(good_t, good_rr);
  RRSeries out = series;
  for (size_t i = 0; i < n; ++i)
    if (mask.flags[i]) out.samples[i].rr = spline(series.samples[i].t);
  return out;
}

std::vector<RRSeries> apply_constraints(const RRSeries& series, const ArtifactMask& mask,
                                        const ConstraintConfig& cfg) {
  if (mask.flags.size() != series.samples.size())
    throw ValidationError("artifact mask not aligned to series");
  if (cfg.min_consecutive_samples < 1 || !(cfg.min_consecutive_seconds > 0.0))
    throw ConfigError("constraint minima must be strictly positive");

  std::vector<RRSeries> fragments;
  const size_t n = series.samples.size();
  size_t i = 0;
  while (i < n) {
    if (mask.flags[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && !mask.flags[j]) ++j;
    const size_t run_len = j - i;
    const double run_span = series.samples[j - 1].t - series.samples[i].t;
    if (run_len >= static_cast<size_t>(cfg.min_consecutive_samples) &&
        run_span >= cfg.min_consecutive_seconds) {
      RRSeries frag;
      frag.subject_id = series.subject_id;
      frag.device = series.device;
      frag.session_start = series.session_start;
      frag.samples.assign(series.samples.begin() + static_cast<long>(i),
                          series.samples.begin() + static_cast<long>(j));
      fragments.push_back(std::move(frag));
    }
    i = j;
  }
  return fragments;
}

std::vector<CleanWindow> segment_windows(const RRSeries& series, const ArtifactMask& mask,
                                         double window_s, double stride_s) {
  if (!(window_s > 0.0)) throw ConfigError("window_s must be > 0");
  if (!(stride_s > 0.0 && stride_s <= window_s))
    throw ConfigError("stride_s must satisfy 0 < stride <= window");
  if (mask.flags.size() != series.samples.size())
    throw ValidationError("artifact mask not aligned to series");

  std::vector<CleanWindow> windows;
  const double t_end = series.duration_s();
  if (t_end < window_s) return windows;

  const size_t n = series.samples.size();
  size_t lo = 0;  // first sample with t >= window_start; advances with k
  for (long k = 0;; ++k) {
    const double start = static_cast<double>(k) * stride_s;
    if (start + window_s > t_end) break;
    while (lo < n && series.samples[lo].t < start) ++lo;

    CleanWindow w;
    w.window_start = start;
    w.duration = window_s;
    w.subject_id = series.subject_id;
    w.device = series.device;
    size_t validated = 0, total = 0;
    for (size_t i = lo; i < n && series.samples[i].t < start + window_s; ++i) {
      w.beats.push_back(series.samples[i]);
      ++total;
      if (!mask.flags[i]) ++validated;
    }
    if (total == 0) continue;
    w.quality = static_cast<double>(validated) / static_cast<double>(total);
    windows.push_back(std::move(w));
  }
  return windows;
}

std::vector<CleanWindow> filter_by_quality(const std::vector<CleanWindow>& windows,
                                           double min_quality) {
  if (min_quality < 0.0 || min_quality > 1.0)
    throw ConfigError("min_quality must be in [0,1]");
  std::vector<CleanWindow> out;
  for (const CleanWindow& w : windows)
    if (w.quality >= min_quality) out.push_back(w);
  return out;
}

std::string dump_debug_csv(const RRSeries& original, const ArtifactMask& mask,
                           const RRSeries& reconstructed) {
  std::ostringstream out;
  out << "t,rr_in,flagged,rr_out\n";
  char buf[128];
  for (size_t i = 0; i < original.samples.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g\n", original.samples[i].t,
                  original.samples[i].rr, mask.flags[i] ? 1 : 0,
                  reconstructed.samples[i].rr);
    out << buf;
  }
  return out.str();
}

}  // namespace hrvauth::preprocess
