#pragma once

#include <string>
#include <vector>

#include "hrvauth/error.hpp"

namespace hrvauth {

/// One inter-beat interval: `t` seconds since session start, `rr` in ms.
struct RRSample {
  double t = 0.0;
  double rr = 0.0;
};

enum class DeviceKind { EmpaticaE4, GearS, GearS2, Generic };

std::string device_name(DeviceKind d);
DeviceKind device_from_name(const std::string& name);  // throws ValidationError

/// A single recording session of RR intervals from one device.
struct RRSeries {
  std::string subject_id;
  DeviceKind device = DeviceKind::Generic;
  double session_start = 0.0;  // unix epoch seconds
  std::vector<RRSample> samples;

  double duration_s() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Checks every series invariant: non-empty, rr > 0, t >= 0, t strictly
/// increasing (duplicates rejected). Throws on violation.
void validate(const RRSeries& series);

}  // namespace hrvauth
