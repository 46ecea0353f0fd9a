#pragma once

#include <string>

#include "hrvauth/rr.hpp"

namespace hrvauth::ingest {

/// Empatica E4 IBI export: first line is the session-start epoch as a
/// single float, every following line is `offset_seconds,ibi_seconds`.
/// IBI values are converted to milliseconds. The file carries no
/// subject id, so the caller supplies one.
RRSeries parse_empatica_ibi(const std::string& file_bytes,
                            const std::string& subject_id = "");

/// Generic RR CSV: one header line `subject=<id>,device=<kind>[,start=<epoch>]`
/// followed by `t_seconds,rr_ms` rows. This is the canonical interchange
/// format; the synthetic generator emits it.
RRSeries parse_generic(const std::string& file_bytes);

/// Serializes to the generic CSV format. parse_generic(serialize(s))
/// reproduces `s` field-exactly (doubles printed with 17 significant
/// digits).
std::string serialize_generic(const RRSeries& series);

RRSeries load_file(const std::string& path, const std::string& subject_hint = "");
void save_generic(const RRSeries& series, const std::string& path);

}  // namespace hrvauth::ingest
