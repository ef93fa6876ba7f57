#pragma once

// Serialization of run records and reports. Time series go to CSV (one row
// per sample, floats at 17 significant digits so records are bit-stable),
// reports and manifests to JSON.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmrd/diagnostics.hpp"
#include "pmrd/solver.hpp"

namespace pmrd {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// FNV-1a 64-bit content hash; a stable identifier for provenance, not a
// cryptographic digest.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string record_csv(const RunRecord& rec) {
  std::string out = "t,dt,sup_norm";
  for (double q : rec.q_list) {
    char head[48];
    std::snprintf(head, sizeof(head), ",lq_%g", q);
    out += head;
  }
  out += ",status\n";
  for (std::size_t j = 0; j < rec.samples.size(); ++j) {
    const auto& s = rec.samples[j];
    out += format_double(s.t);
    out += ',';
    out += format_double(s.dt);
    out += ',';
    out += format_double(s.sup);
    for (double v : s.lq) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += (j + 1 == rec.samples.size()) ? to_string(rec.status) : "ok";
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json(const Sample& s) {
  nlohmann::json j{{"t", s.t}, {"dt", s.dt}, {"sup_norm", s.sup}, {"lq", s.lq}};
  return j;
}

inline nlohmann::json to_json(const RunRecord& rec) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : rec.samples) samples.push_back(to_json(s));
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"q_list", rec.q_list},
                        {"status", to_string(rec.status)},
                        {"t_stop", rec.t_stop},
                        {"samples", samples}};
}

inline nlohmann::json to_json(const BoundReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& d : rep.details)
    rows.push_back({{"t", d.t},
                    {"lhs", d.lhs},
                    {"rhs", d.rhs},
                    {"margin", d.margin},
                    {"note", d.note}});
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"claim", rep.claim},
                        {"pass", rep.pass},
                        {"tolerance", rep.tolerance},
                        {"worst_margin", rep.worst_margin},
                        {"samples_checked", rep.samples_checked},
                        {"details", rows}};
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace pmrd
