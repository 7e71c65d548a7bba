#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "weyl/common.hpp"

namespace weyl::io {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

/// Every output file embeds (JSON) or is accompanied by (CSV) one of these;
/// identical manifests imply byte-identical primary outputs.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string artifact_version = kVersion;
  std::string timestamp;  // UTC, ISO 8601
};

inline std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json to_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"parameters", m.parameters},
              {"seed", m.seed},
              {"artifact_version", m.artifact_version},
              {"timestamp", m.timestamp}};
}

/// 17 significant digits, C locale, no locale dependence.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open output file: " + path);
  out << content;
  if (!out) throw numeric_error("failed writing output file: " + path);
}

/// Endpoint-sample CSV: header row, one row per path
/// (path_index, survived, x1..xn); dead paths carry nan coordinates.
inline std::string endpoint_csv(const std::vector<Vec>& survivor_endpoints,
                                const std::vector<std::uint8_t>& survived_flags,
                                int dim) {
  std::string s = "path_index,survived";
  for (int i = 1; i <= dim; ++i) s += ",x" + std::to_string(i);
  s += "\n";
  std::size_t next_survivor = 0;
  for (std::size_t p = 0; p < survived_flags.size(); ++p) {
    s += std::to_string(p);
    s += survived_flags[p] ? ",1" : ",0";
    if (survived_flags[p]) {
      const Vec& x = survivor_endpoints[next_survivor++];
      for (double v : x) {
        s += ",";
        s += format_double(v);
      }
    } else {
      for (int i = 0; i < dim; ++i) s += ",nan";
    }
    s += "\n";
  }
  return s;
}

/// Same schema for sample lists where every row is a survivor.
inline std::string samples_csv(const std::vector<Vec>& samples, int dim) {
  std::vector<std::uint8_t> flags(samples.size(), 1);
  return endpoint_csv(samples, flags, dim);
}

/// foo.csv -> foo.json (summary sibling); anything else gets .json appended.
inline std::string summary_path_for(const std::string& out_path) {
  if (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv")
    return out_path.substr(0, out_path.size() - 4) + ".json";
  return out_path + ".json";
}

}  // namespace weyl::io
