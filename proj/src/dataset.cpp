#include "hrvauth/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hrvauth/rng.hpp"

namespace hrvauth::modeling {

void FeatureDataset::push(const FeatureVec& row, RowMeta m) {
  x.push_back(row);
  meta.push_back(std::move(m));
}

std::vector<std::string> FeatureDataset::subjects() const {
  std::set<std::string> ids;
  for (const RowMeta& m : meta) ids.insert(m.subject_id);
  return {ids.begin(), ids.end()};
}

size_t FeatureDataset::count_for(const std::string& subject) const {
  size_t n = 0;
  for (const RowMeta& m : meta)
    if (m.subject_id == subject) ++n;
  return n;
}

FeatureDataset drop_undefined(const FeatureDataset& ds, std::vector<std::string>* dropped) {
  FeatureDataset out;
  for (size_t i = 0; i < ds.size(); ++i) {
    bool ok = true;
    for (double v : ds.x[i])
      if (!std::isfinite(v)) ok = false;
    if (ok) {
      out.push(ds.x[i], ds.meta[i]);
    } else if (dropped) {
      dropped->push_back(ds.meta[i].subject_id + " window_start=" +
                         std::to_string(ds.meta[i].window_start));
    }
  }
  return out;
}

FeatureDataset filter_quality(const FeatureDataset& ds, double min_quality) {
  FeatureDataset out;
  for (size_t i = 0; i < ds.size(); ++i)
    if (ds.meta[i].quality >= min_quality) out.push(ds.x[i], ds.meta[i]);
  return out;
}

FeatureDataset subsample_per_subject(const FeatureDataset& ds, int cap,
                                     std::uint64_t seed) {
  if (cap < 1) throw ConfigError("subsample cap must be >= 1");

  std::map<std::string, std::vector<size_t>> by_subject;
  for (size_t i = 0; i < ds.size(); ++i) by_subject[ds.meta[i].subject_id].push_back(i);

  std::vector<size_t> keep;
  for (const auto& [subject, rows] : by_subject) {
    if (rows.size() <= static_cast<size_t>(cap)) {
      keep.insert(keep.end(), rows.begin(), rows.end());
      continue;
    }
    Rng rng(sub_seed(seed, "subsample/" + subject));
    for (size_t pick : rng.sample_without_replacement(rows.size(), static_cast<size_t>(cap)))
      keep.push_back(rows[pick]);
  }
  std::sort(keep.begin(), keep.end());

  FeatureDataset out;
  for (size_t i : keep) out.push(ds.x[i], ds.meta[i]);
  return out;
}

std::string to_csv(const FeatureDataset& ds) {
  std::ostringstream out;
  out << "subject_id,device,window_start,quality";
  for (const char* name : features::feature_names()) out << "," << name;
  out << "\n";
  char buf[64];
  for (size_t i = 0; i < ds.size(); ++i) {
    const RowMeta& m = ds.meta[i];
    out << m.subject_id << "," << device_name(m.device);
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", m.window_start, m.quality);
    out << buf;
    for (double v : ds.x[i]) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace hrvauth::modeling
