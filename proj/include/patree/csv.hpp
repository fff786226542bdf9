#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "patree/errors.hpp"
#include "patree/rng.hpp"
#include "patree/version.hpp"

namespace patree {

// 17 significant digits round-trips a double exactly; '.' decimal separator
// regardless of locale (snprintf with the C locale is assumed).
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Run provenance next to every output: tool version, RNG algorithm, master
// seed, a hash of the resolved config, and the wall time.  `created_utc` and
// `wall_time_seconds` are the only fields allowed to differ between reruns of
// the same config.
inline void write_manifest(const std::string& path, const std::string& command,
                           const nlohmann::json& config, std::uint64_t master_seed,
                           double wall_time_seconds) {
  nlohmann::json m;
  m["version"] = kVersion;
  m["generator"] = RngStream::generator_name();
  m["command"] = command;
  m["master_seed"] = master_seed;
  m["config"] = config;
  m["config_hash"] = hex64(fnv1a64(config.dump()));
  m["created_utc"] = utc_timestamp();
  m["wall_time_seconds"] = wall_time_seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << m.dump(2) << '\n';
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace patree
