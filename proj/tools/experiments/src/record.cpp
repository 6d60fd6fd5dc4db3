#include "ghmc/experiments/record.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <system_error>

namespace ghmc::experiments {

bool ResultRecord::passed() const {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

void ResultRecord::scalar(std::string name, double value, std::string meaning) {
  scalars.push_back({std::move(name), value, std::move(meaning)});
}

void ResultRecord::point(long step, const std::string& quantity, double value) {
  series.push_back({step, quantity, value});
}

bool ResultRecord::check(std::string name, double observed, double threshold, std::string meaning) {
  const bool ok = observed <= threshold;
  assertions.push_back({std::move(name), observed, threshold, ok, std::move(meaning)});
  return ok;
}

Json to_json(const ResultRecord& r) {
  Json j = Json::object();
  j["schema_version"] = r.schema_version;
  j["name"] = r.name;
  j["kind"] = r.kind;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["library_version"] = r.library_version;
  j["rng_algorithm"] = r.rng_algorithm;
  j["passed"] = r.passed();

  Json scalars = Json::array();
  for (const auto& q : r.scalars) {
    scalars.push_back({{"name", q.name}, {"value", q.value}, {"meaning", q.meaning}});
  }
  j["scalars"] = std::move(scalars);

  Json assertions = Json::array();
  for (const auto& a : r.assertions) {
    assertions.push_back({{"name", a.name},
                          {"observed", a.observed},
                          {"threshold", a.threshold},
                          {"relation", "observed <= threshold"},
                          {"passed", a.passed},
                          {"meaning", a.meaning}});
  }
  j["assertions"] = std::move(assertions);

  j["series_meanings"] = r.series_meanings;
  Json series = Json::array();
  for (const auto& p : r.series) series.push_back({p.step, p.quantity, p.value});
  j["series_columns"] = {"step", "quantity", "value"};
  j["series"] = std::move(series);

  if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
  if (r.samples) j["samples"] = *r.samples;
  return j;
}

namespace {

double read_double(const Json& j) {
  // Non-finite values serialize as null.
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

ResultRecord record_from_json(const Json& j) {
  ResultRecord r;
  r.schema_version = j.at("schema_version").get<int>();
  r.name = j.at("name").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.library_version = j.at("library_version").get<std::string>();
  r.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  for (const auto& q : j.at("scalars")) {
    r.scalars.push_back({q.at("name").get<std::string>(), read_double(q.at("value")),
                         q.at("meaning").get<std::string>()});
  }
  for (const auto& a : j.at("assertions")) {
    r.assertions.push_back({a.at("name").get<std::string>(), read_double(a.at("observed")),
                            read_double(a.at("threshold")), a.at("passed").get<bool>(),
                            a.at("meaning").get<std::string>()});
  }
  r.series_meanings = j.at("series_meanings").get<std::map<std::string, std::string>>();
  for (const auto& p : j.at("series")) {
    r.series.push_back({p.at(0).get<long>(), p.at(1).get<std::string>(), read_double(p.at(2))});
  }
  if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
  if (j.contains("samples")) r.samples = j["samples"];
  return r;
}

std::optional<Format> format_from_string(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  return std::nullopt;
}

const char* extension(Format format) { return format == Format::kJson ? "json" : "csv"; }

namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string serialize(const ResultRecord& record, Format format) {
  if (format == Format::kJson) return to_json(record).dump(2) + "\n";
  std::string out = "step,quantity,value\n";
  for (const auto& p : record.series) {
    out += std::to_string(p.step) + "," + csv_field(p.quantity) + "," + format_g17(p.value) + "\n";
  }
  return out;
}

void emit(const ResultRecord& record, Format format, const std::filesystem::path& path) {
  const std::string text = serialize(record, format);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::system_error(ec, "create_directories " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::system_error(errno, std::generic_category(), "write " + path.string());
}

}  // namespace ghmc::experiments
