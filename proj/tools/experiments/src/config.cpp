#include "ghmc/experiments/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <utility>

namespace ghmc::experiments {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 9> kKindNames{{
    {Kind::kFlowCheck, "flow-check"},
    {Kind::kStepCheck, "step-check"},
    {Kind::kLemmaCheck, "lemma-check"},
    {Kind::kChain, "chain"},
    {Kind::kRandomChain, "random-chain"},
    {Kind::kLimitLaw, "limit-law"},
    {Kind::kHullTrack, "hull-track"},
    {Kind::kLyapunov, "lyapunov"},
    {Kind::kMetrics, "metrics"},
}};

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigInvalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigInvalid(path, "expected a finite number");
  return v;
}

long as_integer(const Json& j, const std::string& path, long lo, long hi) {
  if (!j.is_number_integer()) throw ConfigInvalid(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi) {
    throw ConfigInvalid(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

}  // namespace

std::string_view to_string(Kind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = [] {
    std::vector<Kind> out;
    for (const auto& entry : kKindNames) out.push_back(entry.first);
    return out;
  }();
  return kinds;
}

Json ExperimentConfig::to_json() const {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["name"] = name;
  j["kind"] = std::string(experiments::to_string(kind));
  j["seed"] = seed;
  if (!output.empty()) j["output"] = output;
  j["parameters"] = parameters;
  return j;
}

ExperimentConfig parse_config(const Json& doc, std::optional<Kind> fallback_kind) {
  if (!doc.is_object()) throw ConfigInvalid("$", "config must be a JSON object");
  const Params top(doc, "$");
  ExperimentConfig cfg;

  if (top.has("schema_version")) {
    const long v = top.integer("schema_version", 1, 1000);
    if (v != kSchemaVersion) {
      throw ConfigInvalid("$.schema_version", "unsupported version " + std::to_string(v));
    }
  }
  if (top.has("kind")) {
    const std::string name = top.string("kind", "");
    const auto kind = kind_from_string(name);
    if (!kind) throw ConfigInvalid("$.kind", "unknown kind '" + name + "'");
    cfg.kind = *kind;
  } else if (fallback_kind) {
    cfg.kind = *fallback_kind;
  } else {
    throw ConfigInvalid("$.kind", "missing");
  }
  cfg.name = top.string("name", std::string(to_string(cfg.kind)));
  if (cfg.name.empty()) throw ConfigInvalid("$.name", "must not be empty");
  if (top.has("seed")) {
    const Json& s = top.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigInvalid("$.seed", "expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.output = top.string("output", "");
  if (top.has("parameters")) {
    const Json& p = top.raw("parameters");
    if (!p.is_object()) throw ConfigInvalid("$.parameters", "expected an object");
    cfg.parameters = p;
  }
  top.finish();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Kind> fallback_kind) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigInvalid("$", std::string("parse error: ") + e.what());
  }
  return parse_config(doc, fallback_kind);
}

const Json Params::kEmpty = Json::object();

Params::Params(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
  if (!object_.is_object()) throw ConfigInvalid(path_, "expected an object");
}

bool Params::has(const std::string& key) const { return object_.contains(key); }

const Json* Params::lookup(const std::string& key) const {
  const auto it = object_.find(key);
  if (it == object_.end()) return nullptr;
  used_.insert(key);
  return &*it;
}

const Json& Params::raw(const std::string& key) const {
  const Json* j = lookup(key);
  if (!j) throw ConfigInvalid(field(key), "missing");
  return *j;
}

double Params::number(const std::string& key) const { return as_number(raw(key), field(key)); }

double Params::number(const std::string& key, double fallback) const {
  const Json* j = lookup(key);
  return j ? as_number(*j, field(key)) : fallback;
}

double Params::positive(const std::string& key) const {
  const double v = number(key);
  if (!(v > 0.0)) throw ConfigInvalid(field(key), "must be positive");
  return v;
}

double Params::positive(const std::string& key, double fallback) const {
  const double v = number(key, fallback);
  if (!(v > 0.0)) throw ConfigInvalid(field(key), "must be positive");
  return v;
}

long Params::integer(const std::string& key, long lo, long hi) const {
  return as_integer(raw(key), field(key), lo, hi);
}

long Params::integer(const std::string& key, long fallback, long lo, long hi) const {
  const Json* j = lookup(key);
  return j ? as_integer(*j, field(key), lo, hi) : fallback;
}

std::string Params::string(const std::string& key, const std::string& fallback) const {
  const Json* j = lookup(key);
  if (!j) return fallback;
  if (!j->is_string()) throw ConfigInvalid(field(key), "expected a string");
  return j->get<std::string>();
}

std::vector<double> Params::numbers(const std::string& key,
                                    const std::vector<double>& fallback) const {
  const Json* j = lookup(key);
  if (!j) return fallback;
  if (!j->is_array() || j->empty()) throw ConfigInvalid(field(key), "expected a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j->size(); ++i) out.push_back(as_number((*j)[i], index_path(field(key), i)));
  return out;
}

std::vector<long> Params::integers(const std::string& key, const std::vector<long>& fallback,
                                   long lo, long hi) const {
  const Json* j = lookup(key);
  if (!j) return fallback;
  if (!j->is_array() || j->empty()) throw ConfigInvalid(field(key), "expected a non-empty array");
  std::vector<long> out;
  for (std::size_t i = 0; i < j->size(); ++i) {
    out.push_back(as_integer((*j)[i], index_path(field(key), i), lo, hi));
  }
  return out;
}

std::vector<std::string> Params::strings(const std::string& key,
                                         const std::vector<std::string>& fallback,
                                         const std::set<std::string>& allowed) const {
  const Json* j = lookup(key);
  if (!j) return fallback;
  if (!j->is_array() || j->empty()) throw ConfigInvalid(field(key), "expected a non-empty array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j->size(); ++i) {
    const Json& e = (*j)[i];
    if (!e.is_string() || !allowed.count(e.get<std::string>())) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigInvalid(index_path(field(key), i), "expected one of {" + list + "}");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

Params Params::object(const std::string& key) const { return Params(raw(key), field(key)); }

Params Params::object_or_empty(const std::string& key) const {
  const Json* j = lookup(key);
  return j ? Params(*j, field(key)) : Params(kEmpty, field(key));
}

void Params::finish() const {
  for (auto it = object_.begin(); it != object_.end(); ++it) {
    if (!used_.count(it.key())) throw ConfigInvalid(field(it.key()), "unknown field");
  }
}

Vector parse_vector(const Json& j, const std::string& path) {
  if (j.is_number()) return Vector::Constant(1, as_number(j, path));
  if (!j.is_array() || j.empty()) throw ConfigInvalid(path, "expected a number or non-empty array");
  Vector v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = as_number(j[i], index_path(path, i));
  return v;
}

SpdMatrix parse_spd(const Json& j, const std::string& path) {
  if (j.is_number()) {
    const double v = as_number(j, path);
    if (!(v > 0.0)) throw ConfigInvalid(path, "variance must be positive");
    return SpdMatrix(Matrix::Constant(1, 1, v));
  }
  if (!j.is_array() || j.empty()) throw ConfigInvalid(path, "expected a square matrix");
  const long d = static_cast<long>(j.size());
  Matrix m(d, d);
  for (long r = 0; r < d; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = index_path(path, static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<long>(row.size()) != d) {
      throw ConfigInvalid(rp, "expected a row of length " + std::to_string(d));
    }
    for (long c = 0; c < d; ++c) {
      m(r, c) = as_number(row[static_cast<std::size_t>(c)], index_path(rp, static_cast<std::size_t>(c)));
    }
  }
  try {
    return SpdMatrix(m);
  } catch (const NotSpdError& e) {
    throw ConfigInvalid(path, e.what());
  }
}

UnivariateMixture parse_univariate_mixture(const Params& p) {
  const double alpha = p.number("alpha");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigInvalid(p.path() + ".alpha", "must lie in (0, 1)");
  const Json& comps = p.raw("components");
  const std::string cpath = p.path() + ".components";
  if (!comps.is_array() || comps.empty()) throw ConfigInvalid(cpath, "expected a non-empty array");
  std::vector<UnivariateComponent> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Params c(comps[i], index_path(cpath, i));
    out.push_back({c.number("prob"), c.number("mean"), c.positive("variance")});
    c.finish();
  }
  try {
    return UnivariateMixture(std::move(out), alpha);
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const Error& e) {
    throw ConfigInvalid(p.path(), e.what());
  }
}

TargetMixture parse_target_mixture(const Params& p) {
  const Params aux = p.object("auxiliary");
  GaussianParams auxiliary(parse_vector(aux.raw("mean"), aux.path() + ".mean"),
                           parse_spd(aux.raw("cov"), aux.path() + ".cov"));
  aux.finish();
  const double t = p.number("time");
  const Json& comps = p.raw("components");
  const std::string cpath = p.path() + ".components";
  if (!comps.is_array() || comps.empty()) throw ConfigInvalid(cpath, "expected a non-empty array");
  std::vector<MixtureComponent> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string ip = index_path(cpath, i);
    const Params c(comps[i], ip);
    out.push_back({c.number("prob"), parse_vector(c.raw("mean"), ip + ".mean"),
                   parse_spd(c.raw("cov"), ip + ".cov")});
    c.finish();
  }
  try {
    return TargetMixture(std::move(out), std::move(auxiliary), FixedTime{t});
  } catch (const Error& e) {
    throw ConfigInvalid(p.path(), e.what());
  }
}

}  // namespace ghmc::experiments
