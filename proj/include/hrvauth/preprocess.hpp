#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrvauth/rr.hpp"

namespace hrvauth::preprocess {

/// Per-sample artifact flags, aligned 1:1 with an RRSeries.
struct ArtifactMask {
  std::vector<std::uint8_t> flags;  // 1 = artifact
  bool short_series_warning = false;

  size_t count_flagged() const;
};

/// One fixed-duration segment of cleaned beats plus its data quality
/// (validated beats / total beats in the window).
struct CleanWindow {
  double window_start = 0.0;
  double duration = 120.0;
  std::vector<RRSample> beats;
  double quality = 1.0;
  std::string subject_id;
  DeviceKind device = DeviceKind::Generic;
};

struct ConstraintConfig {
  int min_consecutive_samples = 5;
  double min_consecutive_seconds = 10.0;
};

/// Flags sample i when |rr_i - avg| > rel_threshold * avg where avg is
/// the mean of the most recent `local_window` accepted (unflagged)
/// beats. The first `local_window` beats seed the average and are never
/// flagged. A series shorter than the window comes back unflagged with
/// short_series_warning set.
ArtifactMask detect_artifacts(const RRSeries& series, double rel_threshold = 0.20,
                              int local_window = 5);

/// Deletes flagged samples and reconstructs them at their original t by
/// a cubic spline fitted on the unflagged ones. Flagged samples outside
/// the unflagged time range take the nearest valid value. Unflagged
/// samples pass through bit-identical. Needs >= 4 unflagged samples.
RRSeries remove_and_interpolate(const RRSeries& series, const ArtifactMask& mask);

/// The non-interpolating alternative: keeps maximal unflagged runs that
/// satisfy both constraint minima, drops everything else.
std::vector<RRSeries> apply_constraints(const RRSeries& series, const ArtifactMask& mask,
                                        const ConstraintConfig& cfg);

/// Cuts [k*stride, k*stride + window) segments off the series time axis;
/// a trailing partial window is dropped. Window quality comes from the
/// mask restricted to the window; windows without beats are skipped.
std::vector<CleanWindow> segment_windows(const RRSeries& series, const ArtifactMask& mask,
                                         double window_s = 120.0, double stride_s = 120.0);

std::vector<CleanWindow> filter_by_quality(const std::vector<CleanWindow>& windows,
                                           double min_quality);

/// Debug CSV: t, rr_in, flagged, rr_out per sample.
std::string dump_debug_csv(const RRSeries& original, const ArtifactMask& mask,
                           const RRSeries& reconstructed);

}  // namespace hrvauth::preprocess
