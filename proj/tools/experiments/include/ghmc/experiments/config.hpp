#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ghmc/errors.hpp"
#include "ghmc/random_targets.hpp"
#include "ghmc/univariate.hpp"

namespace ghmc::experiments {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Kind {
  kFlowCheck,
  kStepCheck,
  kLemmaCheck,
  kChain,
  kRandomChain,
  kLimitLaw,
  kHullTrack,
  kLyapunov,
  kMetrics,
};

std::string_view to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view name);
const std::vector<Kind>& all_kinds();

/// Invalid configuration; the message starts with the offending field path.
class ConfigInvalid : public Error {
 public:
  ConfigInvalid(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ExperimentConfig {
  std::string name;
  Kind kind = Kind::kMetrics;
  std::uint64_t seed = 0;
  /// Empty: "<name>.<format>".
  std::string output;
  /// Kind-specific; validated when the experiment runs.
  Json parameters = Json::object();

  Json to_json() const;
};

/// Validates the top-level document. `fallback_kind` fills a missing "kind".
ExperimentConfig parse_config(const Json& doc, std::optional<Kind> fallback_kind = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<Kind> fallback_kind = std::nullopt);

/// Typed, path-tracking view of a JSON object. Every key must be consumed
/// before finish(), so typos surface as ConfigInvalid.
class Params {
 public:
  Params(const Json& object, std::string path);

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double positive(const std::string& key) const;
  double positive(const std::string& key, double fallback) const;
  long integer(const std::string& key, long lo, long hi) const;
  long integer(const std::string& key, long fallback, long lo, long hi) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback, long lo,
                             long hi) const;
  std::vector<std::string> strings(const std::string& key,
                                   const std::vector<std::string>& fallback,
                                   const std::set<std::string>& allowed) const;
  Params object(const std::string& key) const;
  /// Empty object when absent.
  Params object_or_empty(const std::string& key) const;
  const Json& raw(const std::string& key) const;

  void finish() const;

 private:
  const Json* lookup(const std::string& key) const;
  std::string field(const std::string& key) const { return path_ + "." + key; }

  const Json& object_;
  std::string path_;
  mutable std::set<std::string> used_;
  static const Json kEmpty;
};

/// {"alpha": a, "components": [{"prob", "mean", "variance"}, ...]}
UnivariateMixture parse_univariate_mixture(const Params& p);

Vector parse_vector(const Json& j, const std::string& path);
SpdMatrix parse_spd(const Json& j, const std::string& path);

/// {"auxiliary": {"mean", "cov"}, "time": t,
///  "components": [{"prob", "mean": [..], "cov": [[..]]}, ...]}
TargetMixture parse_target_mixture(const Params& p);

}  // namespace ghmc::experiments
