#include "hrvauth/ingest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace hrvauth::ingest {

namespace {

// Newline-split honoring both LF and CRLF.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, long line_no, const char* what) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(std::string("cannot parse ") + what + " '" + std::string(field) + "'",
                     line_no);
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(pos)));
      break;
    }
    fields.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return fields;
}

void append_sample(RRSeries& series, double t, double rr, long line_no) {
  if (!(rr > 0.0))
    throw ValidationError("rr must be > 0 at line " + std::to_string(line_no) +
                          ", got " + std::to_string(rr));
  if (t < 0.0)
    throw ValidationError("t must be >= 0 at line " + std::to_string(line_no));
  if (!series.samples.empty() && t <= series.samples.back().t)
    throw ValidationError("t not strictly increasing at line " + std::to_string(line_no) +
                          " (" + std::to_string(t) + " after " +
                          std::to_string(series.samples.back().t) + ")");
  series.samples.push_back({t, rr});
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RRSeries parse_empatica_ibi(const std::string& file_bytes, const std::string& subject_id) {
  const auto lines = split_lines(file_bytes);
  if (lines.empty()) throw InsufficientDataError("empty Empatica IBI file");

  RRSeries series;
  series.subject_id = subject_id;
  series.device = DeviceKind::EmpaticaE4;
  series.session_start = parse_double(lines[0], 1, "session start epoch");

  for (size_t i = 1; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i + 1);
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2)
      throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
    const double t = parse_double(fields[0], line_no, "offset seconds");
    const double ibi_s = parse_double(fields[1], line_no, "IBI seconds");
    append_sample(series, t, ibi_s * 1000.0, line_no);
  }
  if (series.samples.empty())
    throw InsufficientDataError("Empatica IBI file has no data rows");
  validate(series);
  return series;
}

RRSeries parse_generic(const std::string& file_bytes) {
  const auto lines = split_lines(file_bytes);
  if (lines.empty()) throw InsufficientDataError("empty RR file");

  RRSeries series;
  bool have_subject = false, have_device = false;
  for (const auto& kv : split_fields(lines[0])) {
    const size_t eq = kv.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("header entries must be key=value, got '" + std::string(kv) + "'", 1);
    const std::string key(trim(kv.substr(0, eq)));
    const std::string value(trim(kv.substr(eq + 1)));
    if (key == "subject") {
      series.subject_id = value;
      have_subject = true;
    } else if (key == "device") {
      series.device = device_from_name(value);
      have_device = true;
    } else if (key == "start") {
      series.session_start = parse_double(value, 1, "session start");
    } else {
      throw ParseError("unknown header key '" + key + "'", 1);
    }
  }
  if (!have_subject || !have_device)
    throw ParseError("header must name subject and device", 1);

  for (size_t i = 1; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i + 1);
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2)
      throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
    const double t = parse_double(fields[0], line_no, "t seconds");
    const double rr = parse_double(fields[1], line_no, "rr ms");
    append_sample(series, t, rr, line_no);
  }
  if (series.samples.empty()) throw InsufficientDataError("RR file has no data rows");
  validate(series);
  return series;
}

std::string serialize_generic(const RRSeries& series) {
  std::ostringstream out;
  out << "subject=" << series.subject_id << ",device=" << device_name(series.device)
      << ",start=" << format_double(series.session_start) << "\n";
  for (const RRSample& s : series.samples)
    out << format_double(s.t) << "," << format_double(s.rr) << "\n";
  return out.str();
}

RRSeries load_file(const std::string& path, const std::string& subject_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  // Empatica exports start with a bare epoch float; the generic format
  // starts with a key=value header.
  const size_t eol = bytes.find('\n');
  const std::string first = bytes.substr(0, eol == std::string::npos ? bytes.size() : eol);
  if (first.find('=') != std::string::npos) return parse_generic(bytes);
  return parse_empatica_ibi(bytes, subject_hint);
}

void save_generic(const RRSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << serialize_generic(series);
}

}  // namespace hrvauth::ingest
