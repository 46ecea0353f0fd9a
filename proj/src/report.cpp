#include "hrvauth/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace hrvauth::report {

using modeling::ClassifierKind;
using nlohmann::json;

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

json config_json(const RunConfig& cfg) {
  json j;
  for (const auto& [key, value] : cfg.resolved_entries()) j[key] = value;
  return j;
}

// natural order for P1..P28 style ids, lexicographic otherwise
bool subject_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s, long& out) {
    if (s.size() < 2 || s[0] != 'P') return false;
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    out = std::stol(s.substr(1));
    return true;
  };
  long na = 0, nb = 0;
  if (numeric(a, na) && numeric(b, nb)) return na < nb;
  return a < b;
}

}  // namespace

std::string config_header(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& [key, value] : cfg.resolved_entries())
    out << "# " << key << "=" << value << "\n";
  return out.str();
}

std::string subject_csv(const std::vector<eval::SubjectResult>& results,
                        const RunConfig& cfg) {
  std::map<std::string, std::map<ClassifierKind, const eval::SubjectResult*>> rows;
  for (const auto& r : results) rows[r.subject][r.kind] = &r;

  std::vector<std::string> subjects;
  for (const auto& [s, _] : rows) subjects.push_back(s);
  std::sort(subjects.begin(), subjects.end(), subject_less);

  std::ostringstream out;
  out << config_header(cfg);
  out << "participant";
  for (ClassifierKind k : cfg.classifiers) out << "," << modeling::classifier_name(k);
  out << ",device,avg_quality\n";
  for (const std::string& s : subjects) {
    out << s;
    const eval::SubjectResult* any = nullptr;
    for (ClassifierKind k : cfg.classifiers) {
      auto it = rows[s].find(k);
      out << "," << (it != rows[s].end() ? pct(it->second->eer_pct) : "");
      if (it != rows[s].end()) any = it->second;
    }
    out << "," << (any ? device_name(any->device) : "") << ","
        << (any ? pct(any->avg_quality_pct) : "") << "\n";
  }
  return out.str();
}

std::string subject_json(const std::vector<eval::SubjectResult>& results,
                         const RunConfig& cfg) {
  std::vector<const eval::SubjectResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    if (a->subject != b->subject) return subject_less(a->subject, b->subject);
    return modeling::classifier_name(a->kind) < modeling::classifier_name(b->kind);
  });

  json rows = json::array();
  for (const auto* r : sorted) {
    rows.push_back(json{{"subject", r->subject},
                        {"classifier", modeling::classifier_name(r->kind)},
                        {"eer_pct", r->eer_pct},
                        {"threshold", r->threshold},
                        {"far_at_eer", r->far_at_eer},
                        {"frr_at_eer", r->frr_at_eer},
                        {"device", device_name(r->device)},
                        {"avg_quality_pct", r->avg_quality_pct},
                        {"genuine_rows", r->genuine_rows},
                        {"imposter_rows", r->imposter_rows}});
  }
  return json{{"config", config_json(cfg)}, {"per_subject", rows}}.dump(1) + "\n";
}

std::string device_csv(const std::vector<eval::DeviceResult>& results,
                       const RunConfig& cfg) {
  std::map<std::string, std::map<ClassifierKind, const eval::DeviceResult*>> rows;
  for (const auto& r : results) rows[r.device][r.kind] = &r;

  std::ostringstream out;
  out << config_header(cfg);
  out << "device";
  for (ClassifierKind k : cfg.classifiers) out << "," << modeling::classifier_name(k);
  out << ",subjects,avg_quality_subject,avg_quality_window\n";
  for (const auto& [device, by_kind] : rows) {
    if (device == "all") continue;
    out << device;
    const eval::DeviceResult* any = nullptr;
    for (ClassifierKind k : cfg.classifiers) {
      auto it = by_kind.find(k);
      out << "," << (it != by_kind.end() ? pct(it->second->mean_eer_pct) : "");
      if (it != by_kind.end()) any = it->second;
    }
    out << "," << (any ? std::to_string(any->subjects) : "") << ","
        << (any ? pct(any->avg_quality_subject_pct) : "") << ","
        << (any ? pct(any->avg_quality_window_pct) : "") << "\n";
  }
  if (rows.count("all")) {
    out << "all";
    const auto& by_kind = rows["all"];
    const eval::DeviceResult* any = nullptr;
    for (ClassifierKind k : cfg.classifiers) {
      auto it = by_kind.find(k);
      out << "," << (it != by_kind.end() ? pct(it->second->mean_eer_pct) : "");
      if (it != by_kind.end()) any = it->second;
    }
    out << "," << (any ? std::to_string(any->subjects) : "") << ","
        << (any ? pct(any->avg_quality_subject_pct) : "") << ","
        << (any ? pct(any->avg_quality_window_pct) : "") << "\n";
  }
  return out.str();
}

std::string device_json(const std::vector<eval::DeviceResult>& results,
                        const RunConfig& cfg) {
  std::vector<const eval::DeviceResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    if (a->device != b->device) return a->device < b->device;
    return modeling::classifier_name(a->kind) < modeling::classifier_name(b->kind);
  });
  json rows = json::array();
  for (const auto* r : sorted) {
    rows.push_back(json{{"device", r->device},
                        {"classifier", modeling::classifier_name(r->kind)},
                        {"mean_eer_pct", r->mean_eer_pct},
                        {"subjects", r->subjects},
                        {"avg_quality_subject_pct", r->avg_quality_subject_pct},
                        {"avg_quality_window_pct", r->avg_quality_window_pct}});
  }
  return json{{"config", config_json(cfg)}, {"per_device", rows}}.dump(1) + "\n";
}

std::string sweep_csv(const std::vector<eval::SweepRow>& rows, const RunConfig& cfg) {
  std::ostringstream out;
  out << config_header(cfg);
  out << "threshold,group,mean_eer_pct,subjects,windows_retained,available,note\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,", r.threshold);
    out << buf << r.group << ",";
    if (r.available) out << pct(r.mean_eer_pct);
    out << "," << r.subjects << "," << r.windows_retained << ","
        << (r.available ? "yes" : "no") << "," << r.note << "\n";
  }
  return out.str();
}

std::string sweep_json(const std::vector<eval::SweepRow>& rows, const RunConfig& cfg) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"threshold", r.threshold},
             {"group", r.group},
             {"subjects", r.subjects},
             {"windows_retained", r.windows_retained},
             {"available", r.available},
             {"note", r.note}};
    if (r.available)
      row["mean_eer_pct"] = r.mean_eer_pct;
    else
      row["mean_eer_pct"] = nullptr;
    arr.push_back(std::move(row));
  }
  return json{{"config", config_json(cfg)}, {"sweep", arr}}.dump(1) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

}  // namespace hrvauth::report
