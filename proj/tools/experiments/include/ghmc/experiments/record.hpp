#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghmc/experiments/config.hpp"

namespace ghmc::experiments {

struct Quantity {
  std::string name;
  double value = 0.0;
  std::string meaning;

  friend bool operator==(const Quantity&, const Quantity&) = default;
};

struct SeriesPoint {
  long step = 0;
  std::string quantity;
  double value = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// observed <= threshold.
struct Assertion {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string meaning;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct ResultRecord {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string kind;
  Json config;
  std::uint64_t seed = 0;
  std::string library_version;
  std::string rng_algorithm;
  std::vector<Quantity> scalars;
  /// Meaning of every quantity appearing in `series`.
  std::map<std::string, std::string> series_meanings;
  std::vector<SeriesPoint> series;
  std::vector<Assertion> assertions;
  /// Only with --timing; omitted otherwise so records stay byte-identical.
  std::optional<double> wall_clock_seconds;
  /// Only with --dump-samples.
  std::optional<Json> samples;

  bool passed() const;

  void scalar(std::string name, double value, std::string meaning);
  void point(long step, const std::string& quantity, double value);
  /// Records observed <= threshold; NaN fails.
  bool check(std::string name, double observed, double threshold, std::string meaning);

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

Json to_json(const ResultRecord& record);
ResultRecord record_from_json(const Json& j);

enum class Format { kJson, kCsv };

std::optional<Format> format_from_string(const std::string& name);
const char* extension(Format format);

/// JSON: the whole record as one document. CSV: header "step,quantity,value"
/// and one row per series point. Floats use 17 significant digits.
std::string serialize(const ResultRecord& record, Format format);

/// Writes serialize(record, format) to path, creating parent directories.
void emit(const ResultRecord& record, Format format, const std::filesystem::path& path);

}  // namespace ghmc::experiments
