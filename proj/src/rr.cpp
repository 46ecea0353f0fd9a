#include "hrvauth/rr.hpp"

namespace hrvauth {

std::string device_name(DeviceKind d) {
  switch (d) {
    case DeviceKind::EmpaticaE4: return "EmpaticaE4";
    case DeviceKind::GearS: return "GearS";
    case DeviceKind::GearS2: return "GearS2";
    case DeviceKind::Generic: return "Generic";
  }
  return "Generic";
}

DeviceKind device_from_name(const std::string& name) {
  if (name == "EmpaticaE4" || name == "E4") return DeviceKind::EmpaticaE4;
  if (name == "GearS") return DeviceKind::GearS;
  if (name == "GearS2") return DeviceKind::GearS2;
  if (name == "Generic") return DeviceKind::Generic;
  throw ValidationError("unknown device '" + name + "'");
}

void validate(const RRSeries& series) {
  if (series.samples.empty())
    throw InsufficientDataError("series '" + series.subject_id + "' has no samples");
  double prev_t = -1.0;
  for (size_t i = 0; i < series.samples.size(); ++i) {
    const RRSample& s = series.samples[i];
    if (!(s.rr > 0.0))
      throw ValidationError("sample " + std::to_string(i) + ": rr must be > 0, got " +
                            std::to_string(s.rr));
    if (s.t < 0.0)
      throw ValidationError("sample " + std::to_string(i) + ": t must be >= 0");
    if (i > 0 && s.t <= prev_t)
      throw ValidationError("sample " + std::to_string(i) +
                            ": t not strictly increasing (" + std::to_string(s.t) +
                            " after " + std::to_string(prev_t) + ")");
    prev_t = s.t;
  }
}

}  // namespace hrvauth
