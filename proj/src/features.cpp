#include "hrvauth/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrvauth/fft.hpp"
#include "hrvauth/spline.hpp"

namespace hrvauth::features {

namespace {

double sample_std(const std::vector<double>& v) {
  const size_t n = v.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

std::array<double, kFeatureCount> HRVFeatures::to_vector() const {
  return {mean_rr, std_rr, rmssd, pnn50, tri_index, tinn, sdsd, lf, hf, lf_hf, vlf};
}

bool HRVFeatures::all_defined() const {
  for (double v : to_vector())
    if (!std::isfinite(v)) return false;
  return true;
}

const std::array<const char*, kFeatureCount>& feature_names() {
  static const std::array<const char*, kFeatureCount> names = {
      "mean_rr", "std_rr", "rmssd", "pnn50", "tri_index", "tinn",
      "sdsd",    "lf",     "hf",    "lf_hf", "vlf"};
  return names;
}

void SpectralConfig::validate() const {
  if (!(resample_hz > 0.0)) throw ConfigError("resample_hz must be > 0");
  const double nyquist = resample_hz / 2.0;
  const std::array<std::pair<double, double>, 3> bands = {vlf_band, lf_band, hf_band};
  double prev_hi = 0.0;
  for (const auto& [lo, hi] : bands) {
    if (!(lo < hi)) throw ConfigError("spectral band must have lo < hi");
    if (lo < 0.0 || hi > nyquist)
      throw ConfigError("spectral bands must lie within [0, resample_hz/2]");
    if (lo < prev_hi) throw ConfigError("spectral bands must be ordered and disjoint");
    prev_hi = hi;
  }
}

long TriHistogram::total() const {
  long t = 0;
  for (long c : counts) t += c;
  return t;
}

long TriHistogram::max_count() const {
  long m = 0;
  for (long c : counts) m = std::max(m, c);
  return m;
}

int TriHistogram::non_empty_bins() const {
  int k = 0;
  for (long c : counts)
    if (c > 0) ++k;
  return k;
}

double TriHistogram::bin_center(long bin_index) const {
  return (static_cast<double>(bin_index) + 0.5) * kBinWidthMs;
}

HRVFeatures time_domain(const CleanWindow& window) {
  const size_t n = window.beats.size();
  if (n < 3)
    throw InsufficientDataError("time-domain features need >= 3 beats, window at t=" +
                                std::to_string(window.window_start) + " has " +
                                std::to_string(n));

  std::vector<double> rr(n);
  for (size_t i = 0; i < n; ++i) rr[i] = window.beats[i].rr;

  HRVFeatures f;
  double sum = 0.0;
  for (double x : rr) sum += x;
  f.mean_rr = sum / static_cast<double>(n);
  f.std_rr = sample_std(rr);

  std::vector<double> diffs(n - 1);
  double sq_sum = 0.0;
  long nn50 = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    diffs[i] = rr[i + 1] - rr[i];
    sq_sum += diffs[i] * diffs[i];
    if (std::fabs(diffs[i]) > 50.0) ++nn50;
  }
  f.rmssd = std::sqrt(sq_sum / static_cast<double>(n - 1));
  f.pnn50 = 100.0 * static_cast<double>(nn50) / static_cast<double>(n - 1);
  f.sdsd = sample_std(diffs);

  const TriHistogram hist = tri_histogram(window);
  f.tri_index = triangular_index(hist, static_cast<long>(n));
  f.tinn = tinn(hist);
  return f;
}

TriHistogram tri_histogram(const CleanWindow& window) {
  if (window.beats.empty()) throw InsufficientDataError("empty window has no histogram");
  long lo = std::numeric_limits<long>::max();
  long hi = std::numeric_limits<long>::min();
  std::vector<long> bins(window.beats.size());
  for (size_t i = 0; i < window.beats.size(); ++i) {
    bins[i] = static_cast<long>(std::floor(window.beats[i].rr / TriHistogram::kBinWidthMs));
    lo = std::min(lo, bins[i]);
    hi = std::max(hi, bins[i]);
  }
  TriHistogram hist;
  hist.first_bin = lo;
  hist.counts.assign(static_cast<size_t>(hi - lo + 1), 0);
  for (long b : bins) ++hist.counts[static_cast<size_t>(b - lo)];
  return hist;
}

double triangular_index(const TriHistogram& hist, long n_beats) {
  const long peak = hist.max_count();
  if (peak <= 0) throw ValidationError("histogram is empty");
  return static_cast<double>(n_beats) / static_cast<double>(peak);
}

double tinn(const TriHistogram& hist) {
  if (hist.non_empty_bins() < 3) return 0.0;

  const double w = TriHistogram::kBinWidthMs;
  const long b0 = hist.first_bin;
  const long b1 = hist.first_bin + static_cast<long>(hist.counts.size()) - 1;
  const long span = b1 - b0 + 1;

  long mode_bin = b0;
  long peak = -1;
  for (size_t i = 0; i < hist.counts.size(); ++i) {
    if (hist.counts[i] > peak) {
      peak = hist.counts[i];
      mode_bin = b0 + static_cast<long>(i);
    }
  }
  const double apex_x = hist.bin_center(mode_bin);
  const double apex_y = static_cast<double>(peak);

  auto count_at = [&](long bin) -> double {
    if (bin < b0 || bin > b1) return 0.0;
    return static_cast<double>(hist.counts[static_cast<size_t>(bin - b0)]);
  };

  // Candidate base points sit on bin edges; a margin of half the support
  // width on each side covers optima that extend past the histogram.
  const long margin = span / 2 + 2;
  const long n_lo = b0 - margin, n_hi = mode_bin;
  const long m_lo = mode_bin + 1, m_hi = b1 + 1 + margin;

  double best_err = std::numeric_limits<double>::infinity();
  double best_width = 0.0, best_n = 0.0;
  for (long en = n_lo; en <= n_hi; ++en) {
    const double N = static_cast<double>(en) * w;
    for (long em = m_lo; em <= m_hi; ++em) {
      const double M = static_cast<double>(em) * w;
      double err = 0.0;
      for (long bin = std::min(en, b0); bin <= std::max(em - 1, b1); ++bin) {
        const double x = hist.bin_center(bin);
        double tri = 0.0;
        if (x > N && x < apex_x)
          tri = apex_y * (x - N) / (apex_x - N);
        else if (x >= apex_x && x < M)
          tri = apex_y * (M - x) / (M - apex_x);
        const double diff = count_at(bin) - tri;
        err += diff * diff;
      }
      const double width = M - N;
      // ties broken toward the narrowest triangle, then the smallest N
      if (err < best_err - 1e-12 ||
          (err < best_err + 1e-12 &&
           (width < best_width - 1e-12 ||
            (width < best_width + 1e-12 && N < best_n)))) {
        best_err = err;
        best_width = width;
        best_n = N;
      }
    }
  }
  return best_width;
}

std::vector<double> resample_uniform(const CleanWindow& window, const SpectralConfig& cfg) {
  cfg.validate();
  if (window.beats.size() < 4)
    throw InsufficientDataError("resampling needs >= 4 beats, window at t=" +
                                std::to_string(window.window_start) + " has " +
                                std::to_string(window.beats.size()));

  std::vector<double> t(window.beats.size()), rr(window.beats.size());
  for (size_t i = 0; i < window.beats.size(); ++i) {
    t[i] = window.beats[i].t;
    rr[i] = window.beats[i].rr;
  }
  CubicSpline spline(t, rr);

  const size_t n = static_cast<size_t>(std::floor(window.duration * cfg.resample_hz + 1e-9));
  std::vector<double> out(n);
  for (size_t j = 0; j < n; ++j)
    out[j] = spline(window.window_start + static_cast<double>(j) / cfg.resample_hz);

  if (cfg.detrend) {
    double mean = 0.0;
    for (double v : out) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : out) v -= mean;
  }
  return out;
}

BandPowers band_powers(const std::vector<double>& uniform_signal,
                       const SpectralConfig& cfg) {
  cfg.validate();
  const size_t n = uniform_signal.size();
  if (n < 8) throw InsufficientDataError("band powers need a signal of length >= 8");

  // Taper, then normalize by N * sum(w^2) so the full periodogram sum
  // equals the mean square of the tapered signal (Parseval) and a
  // sinusoid of amplitude A integrates to A^2/2.
  std::vector<double> tapered(n);
  double w2 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (cfg.window_fn == WindowFn::Hann)
      w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n)));
    tapered[i] = uniform_signal[i] * w;
    w2 += w * w;
  }
  const auto spectrum = fft(
      [&] {
        std::vector<std::complex<double>> c(n);
        for (size_t i = 0; i < n; ++i) c[i] = std::complex<double>(tapered[i], 0.0);
        return c;
      }());

  const double scale = 1.0 / (static_cast<double>(n) * w2);
  const double df = cfg.resample_hz / static_cast<double>(n);
  const size_t half = n / 2;

  BandPowers bp;
  for (size_t k = 0; k <= half; ++k) {
    double p = std::norm(spectrum[k]) * scale;
    if (k != 0 && !(n % 2 == 0 && k == half)) p *= 2.0;  // fold the negative side
    bp.total_power += p;
    if (k == 0) continue;
    const double f = static_cast<double>(k) * df;
    if (f >= cfg.vlf_band.first && f < cfg.vlf_band.second) bp.vlf += p;
    if (f >= cfg.lf_band.first && f < cfg.lf_band.second) bp.lf += p;
    if (f >= cfg.hf_band.first && f < cfg.hf_band.second) bp.hf += p;
  }
  bp.lf_hf = bp.hf > 0.0 ? bp.lf / bp.hf : std::numeric_limits<double>::quiet_NaN();
  return bp;
}

HRVFeatures extract(const CleanWindow& window, const SpectralConfig& cfg) {
  HRVFeatures f = time_domain(window);
  const BandPowers bp = band_powers(resample_uniform(window, cfg), cfg);
  f.vlf = bp.vlf;
  f.lf = bp.lf;
  f.hf = bp.hf;
  f.lf_hf = bp.lf_hf;
  return f;
}

}  // namespace hrvauth::features
