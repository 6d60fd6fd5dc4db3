#include "ghmc/experiments/acceptance.hpp"

#include <chrono>
#include <cstdio>

namespace ghmc::experiments {

namespace {

Criterion make(int id, std::string title, const char* json, std::optional<double> limit) {
  return Criterion{id, std::move(title), parse_config(Json::parse(json)), limit};
}

constexpr const char* kTwoPoint = R"({
  "alpha": 0.5,
  "components": [
    {"prob": 0.5, "mean": -1.0, "variance": 1.0},
    {"prob": 0.5, "mean": 1.0, "variance": 1.0}
  ]
})";

std::string with_two_point(const std::string& body) {
  const std::string key = "\"@TWO_POINT@\"";
  std::string out = body;
  for (auto pos = out.find(key); pos != std::string::npos; pos = out.find(key)) {
    out.replace(pos, key.size(), kTwoPoint);
  }
  return out;
}

std::vector<Criterion> build() {
  std::vector<Criterion> c;
  c.push_back(make(1, "fixed-point exactness", R"({
    "name": "01-fixed-point-exactness", "kind": "step-check", "seed": 101,
    "parameters": {"check": "fixed-point", "dims": [1, 2, 3, 5], "instances": 400,
                   "tolerance": 1e-14}})", 1.0));
  c.push_back(make(2, "moment map vs quadrature oracle", R"({
    "name": "02-moment-map-quadrature", "kind": "step-check", "seed": 102,
    "parameters": {"check": "quadrature", "instances": 20, "grid_points": 401,
                   "grid_halfwidth": 4.0, "tolerance": 1e-8,
                   "quadrature_tolerance": 1e-12}})", 30.0));
  c.push_back(make(3, "moment map vs Monte Carlo", R"({
    "name": "03-moment-map-monte-carlo", "kind": "step-check", "seed": 103,
    "parameters": {"check": "monte-carlo", "dims": [1, 2, 3], "instances": 10,
                   "samples": 1000000, "max_standard_score": 5.0}})", 60.0));
  c.push_back(make(4, "quadratic-form identity", R"({
    "name": "04-quadratic-form-identity", "kind": "lemma-check", "seed": 104,
    "parameters": {"dims": [1, 2, 3, 4, 5], "instances": 50, "points": 1000,
                   "form_tolerance": 1e-9, "checks": ["quadratic-form", "zeta"]}})", 30.0));
  c.push_back(make(5, "determinant identity", R"({
    "name": "05-determinant-identity", "kind": "lemma-check", "seed": 104,
    "parameters": {"dims": [1, 2, 3, 4, 5], "instances": 50, "points": 1000,
                   "determinant_tolerance": 1e-10, "checks": ["determinant"]}})", std::nullopt));
  c.push_back(make(6, "flow conservation and RK4 order", R"({
    "name": "06-flow-conservation", "kind": "flow-check", "seed": 106,
    "parameters": {"flows": 1000, "energy_tolerance": 1e-10, "jacobian_tolerance": 1e-10,
                   "rk4": {"instances": 3, "dim": 2, "eig_lo": 0.035, "eig_hi": 0.045,
                           "time": 1.0, "dt": [1e-2, 1e-3, 1e-4], "slope": 4.0,
                           "slope_tolerance": 0.2}}})", 30.0));
  c.push_back(make(7, "geometric contraction", R"({
    "name": "07-geometric-contraction", "kind": "chain", "seed": 107,
    "parameters": {"dims": [3, 1], "steps": 50, "min_contraction": 0.97,
                   "mean_tolerance": 1e-10, "ratio_tolerance": 1e-12}})", std::nullopt));
  c.push_back(make(8, "hull contraction", R"({
    "name": "08-hull-contraction", "kind": "hull-track", "seed": 108,
    "parameters": {"mixtures": 10, "seeds": 10, "steps": 100, "components": 3,
                   "slack": 1e-10}})", std::nullopt));
  c.push_back(make(9, "transient moments", R"({
    "name": "09-transient-moments", "kind": "random-chain", "seed": 109,
    "parameters": {
      "mixture": {"alpha": 0.6, "components": [
        {"prob": 0.3, "mean": -2.0, "variance": 0.5},
        {"prob": 0.5, "mean": 0.5, "variance": 1.5},
        {"prob": 0.2, "mean": 3.0, "variance": 2.5}]},
      "initial_mean": 5.0, "initial_variance": 0.25, "replicas": 10000,
      "steps": [1, 5, 20], "max_standard_score": 5.0}})", 60.0));
  c.push_back(make(10, "limit law moments", with_two_point(R"({
    "name": "10-limit-law-moments", "kind": "limit-law", "seed": 110,
    "parameters": {"mixture": "@TWO_POINT@", "parts": ["moments", "samples", "derivative"],
                   "expected_mean": 0.0, "expected_variance": 1.3333333333333333,
                   "samples": 1000000, "max_standard_score": 5.0,
                   "derivative_tolerance": 1e-6}})").c_str(), 60.0));
  c.push_back(make(11, "characteristic function convergence", with_two_point(R"({
    "name": "11-cf-convergence", "kind": "limit-law", "seed": 111,
    "parameters": {"mixture": "@TWO_POINT@", "parts": ["cf"], "max_standard_score": 5.0,
                   "cf": {"steps": 200, "replicas": 100000, "xi": [0.25, 0.5, 1.0, 2.0]}}})").c_str(),
                   std::nullopt));
  c.push_back(make(12, "Lyapunov exponent and stationarity", with_two_point(R"({
    "name": "12-lyapunov", "kind": "lyapunov", "seed": 112,
    "parameters": {
      "factors": 10000, "stationarity_steps": 60, "stationarity_replicas": 100000,
      "ks_tolerance": 0.02,
      "scalar": {"mixture": "@TWO_POINT@", "tolerance": 1e-12},
      "commuting": {
        "tolerance": 0.01,
        "initial_mean": [4.0, -3.0], "initial_cov": [[0.3, 0.0], [0.0, 3.0]],
        "mixture": {
          "auxiliary": {"mean": [0.0, 0.0], "cov": [[1.0, 0.0], [0.0, 1.0]]},
          "time": 0.9,
          "components": [
            {"prob": 0.5, "mean": [1.0, 0.0], "cov": [[0.5, 0.0], [0.0, 2.0]]},
            {"prob": 0.3, "mean": [-1.0, 1.0], "cov": [[1.0, 0.0], [0.0, 0.8]]},
            {"prob": 0.2, "mean": [0.0, -2.0], "cov": [[2.0, 0.0], [0.0, 1.5]]}]}}}})").c_str(),
                   std::nullopt));
  c.push_back(make(13, "half-plane metric properties", R"({
    "name": "13-metric-properties", "kind": "metrics", "seed": 113,
    "parameters": {"triples": 100000, "slack": 1e-12, "geodesic_tolerance": 1e-12}})",
                   std::nullopt));
  return c;
}

}  // namespace

std::string Criterion::file_name() const { return config.name + ".json"; }

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = build();
  return criteria;
}

std::string CriterionOutcome::summary() const {
  char head[256];
  std::snprintf(head, sizeof head, "%s [%02d] %s (%.2f s", passed() ? "PASS" : "FAIL",
                criterion->id, criterion->title.c_str(), seconds);
  std::string out = head;
  if (criterion->runtime_limit) {
    char lim[64];
    std::snprintf(lim, sizeof lim, ", limit %.0f s", *criterion->runtime_limit);
    out += lim;
  }
  out += ")";
  if (!error.empty()) out += "\n    error: " + error;
  if (!within_budget) out += "\n    runtime budget exceeded";
  for (const auto& a : record.assertions) {
    char line[512];
    std::snprintf(line, sizeof line, "\n    %s %s: %.6g <= %.6g", a.passed ? "ok  " : "FAIL",
                  a.name.c_str(), a.observed, a.threshold);
    out += line;
  }
  return out;
}

CriterionOutcome run_criterion(const Criterion& criterion, const RunOptions& options) {
  CriterionOutcome out;
  out.criterion = &criterion;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.record = run(criterion.config, options);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (criterion.runtime_limit) out.within_budget = out.seconds < *criterion.runtime_limit;
  return out;
}

}  // namespace ghmc::experiments
