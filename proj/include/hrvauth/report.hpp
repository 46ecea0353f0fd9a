#pragma once

#include <string>
#include <vector>

#include "hrvauth/config.hpp"
#include "hrvauth/eval.hpp"

namespace hrvauth::report {

/// "# key=value" lines reproducing the resolved run configuration; the
/// same header opens every CSV report so any report regenerates its run.
std::string config_header(const RunConfig& cfg);

/// Per-subject table: one row per participant, one EER column per
/// classifier, plus device and average quality.
std::string subject_csv(const std::vector<eval::SubjectResult>& results,
                        const RunConfig& cfg);
std::string subject_json(const std::vector<eval::SubjectResult>& results,
                         const RunConfig& cfg);

/// Per-device table: mean of member subjects' EERs per classifier, with
/// the average quality under both subject and window weighting.
std::string device_csv(const std::vector<eval::DeviceResult>& results,
                       const RunConfig& cfg);
std::string device_json(const std::vector<eval::DeviceResult>& results,
                        const RunConfig& cfg);

/// Quality-threshold sweep, plot-ready (threshold, EER) series per group.
std::string sweep_csv(const std::vector<eval::SweepRow>& rows, const RunConfig& cfg);
std::string sweep_json(const std::vector<eval::SweepRow>& rows, const RunConfig& cfg);

void write_text(const std::string& path, const std::string& content);

}  // namespace hrvauth::report
