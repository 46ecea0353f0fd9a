#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hrvauth/preprocess.hpp"

namespace hrvauth::features {

using preprocess::CleanWindow;

constexpr int kFeatureCount = 11;

/// The 11-feature HRV vector: 7 time-domain, 4 frequency-domain.
struct HRVFeatures {
  double mean_rr = 0.0;    // ms
  double std_rr = 0.0;     // ms, sample std
  double rmssd = 0.0;      // ms
  double pnn50 = 0.0;      // percent, [0,100]
  double tri_index = 0.0;  // beats / modal bin height
  double tinn = 0.0;       // ms
  double sdsd = 0.0;       // ms, sample std of successive differences
  double lf = 0.0;         // ms^2, 0.04-0.15 Hz
  double hf = 0.0;         // ms^2, 0.15-0.4 Hz
  double lf_hf = 0.0;      // NaN when hf == 0
  double vlf = 0.0;        // ms^2, 0.00-0.04 Hz

  std::array<double, kFeatureCount> to_vector() const;
  bool all_defined() const;  // false when lf_hf is the undefined marker
};

const std::array<const char*, kFeatureCount>& feature_names();

enum class WindowFn { Hann, Rect };

struct SpectralConfig {
  double resample_hz = 4.0;
  std::pair<double, double> vlf_band{0.0, 0.04};
  std::pair<double, double> lf_band{0.04, 0.15};
  std::pair<double, double> hf_band{0.15, 0.4};
  bool detrend = true;
  WindowFn window_fn = WindowFn::Hann;

  void validate() const;  // bands ordered, disjoint, below Nyquist
};

/// RR histogram on a fixed 1/128 s grid aligned to multiples from 0.
struct TriHistogram {
  static constexpr double kBinWidthMs = 1000.0 / 128.0;  // 7.8125 ms
  long first_bin = 0;
  std::vector<long> counts;

  long total() const;
  long max_count() const;
  int non_empty_bins() const;
  double bin_center(long bin_index) const;
};

struct BandPowers {
  double vlf = 0.0;
  double lf = 0.0;
  double hf = 0.0;
  double lf_hf = 0.0;
  double total_power = 0.0;  // sum over the whole one-sided periodogram
};

/// Mean RR, STD RR, RMSSD, pNN50, triangular index, TINN, SDSD.
/// Needs >= 3 beats (two successive differences).
HRVFeatures time_domain(const CleanWindow& window);

TriHistogram tri_histogram(const CleanWindow& window);

double triangular_index(const TriHistogram& hist, long n_beats);

/// Least-squares triangular fit with apex pinned to the modal bin;
/// exhaustive (N, M) search over bin edges. Returns the base width M-N
/// in ms, 0 for degenerate histograms (< 3 non-empty bins).
double tinn(const TriHistogram& hist);

/// Cubic-spline resampling of the unevenly spaced beats onto a uniform
/// grid over the window span; mean removed when cfg.detrend.
std::vector<double> resample_uniform(const CleanWindow& window, const SpectralConfig& cfg);

/// One-sided periodogram band powers of the (optionally Hann-windowed)
/// uniform signal. Normalized so a full-band sum reproduces the mean
/// square of the windowed signal; a sinusoid of amplitude A integrates
/// to A^2/2. Half-open [lo, hi) bands, DC excluded everywhere.
BandPowers band_powers(const std::vector<double>& uniform_signal,
                       const SpectralConfig& cfg);

/// All 11 features of one window.
HRVFeatures extract(const CleanWindow& window, const SpectralConfig& cfg);

}  // namespace hrvauth::features
