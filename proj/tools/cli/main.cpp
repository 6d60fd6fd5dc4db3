// ghmc: command-line harness for the GHMC verification suites and simulations.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ghmc/experiments/acceptance.hpp"
#include "ghmc/experiments/config.hpp"
#include "ghmc/experiments/record.hpp"
#include "ghmc/experiments/run.hpp"

namespace fs = std::filesystem;
using namespace ghmc::experiments;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  bool dump_samples = false;
  unsigned threads = 0;
  bool timing = false;
};

void add_common(CLI::App* app, CommonFlags& f, bool config_required) {
  auto* cfg = app->add_option("--config", f.config, "Experiment config (JSON)");
  if (config_required) cfg->required();
  app->add_option("--seed", f.seed, "Override the config seed");
  app->add_option("--out", f.out, "Output file (default: <name>.<format>)");
  app->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--dump-samples", f.dump_samples, "Include raw sample batches in JSON output");
  app->add_option("--threads", f.threads, "Worker threads for Monte Carlo ensembles (0 = all)");
  app->add_flag("--timing", f.timing, "Record wall-clock seconds in the output");
}

fs::path resolve_output(const fs::path& requested) {
  if (requested.is_absolute()) return requested;
  if (const char* dir = std::getenv("GHMC_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / requested;
  return requested;
}

void print_record(const ResultRecord& r) {
  std::printf("%s (%s) seed=%llu\n", r.name.c_str(), r.kind.c_str(),
              static_cast<unsigned long long>(r.seed));
  for (const auto& a : r.assertions) {
    std::printf("  %s %s: %.6g <= %.6g  [%s]\n", a.passed ? "PASS" : "FAIL", a.name.c_str(), a.observed,
                a.threshold, a.meaning.c_str());
  }
}

int run_experiment(std::optional<Kind> kind, const CommonFlags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    cfg = load_config(f.config, kind);
    if (kind && cfg.kind != *kind) {
      throw ConfigInvalid("$.kind", "config is '" + std::string(to_string(cfg.kind)) +
                                        "' but the subcommand is '" + std::string(to_string(*kind)) + "'");
    }
  } else {
    cfg = parse_config(Json::object(), kind);
  }
  if (f.seed) cfg.seed = *f.seed;
  const Format format = *format_from_string(f.format);

  RunOptions opts;
  opts.threads = f.threads;
  opts.dump_samples = f.dump_samples;
  opts.timing = f.timing;
  const ResultRecord record = run(cfg, opts);

  fs::path out = f.out.empty() ? fs::path(cfg.output.empty() ? cfg.name + "." + extension(format) : cfg.output)
                               : fs::path(f.out);
  out = resolve_output(out);
  emit(record, format, out);
  print_record(record);
  std::printf("wrote %s\n", out.string().c_str());
  return record.passed() ? 0 : kExitFailed;
}

int run_acceptance(const std::vector<int>& only, const std::string& write_dir, const std::string& check_dir,
                   unsigned threads) {
  if (!write_dir.empty()) {
    for (const auto& c : acceptance_criteria()) {
      const fs::path path = fs::path(write_dir) / c.file_name();
      fs::create_directories(path.parent_path());
      std::ofstream(path) << c.config.to_json().dump(2) << "\n";
      std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
  }
  if (!check_dir.empty()) {
    int bad = 0;
    for (const auto& c : acceptance_criteria()) {
      const fs::path path = fs::path(check_dir) / c.file_name();
      bool same = false;
      try {
        same = load_config(path).to_json() == c.config.to_json();
      } catch (const std::exception& e) {
        std::printf("  %s: %s\n", path.string().c_str(), e.what());
      }
      std::printf("%s %s\n", same ? "MATCH" : "DIFFER", path.string().c_str());
      bad += same ? 0 : 1;
    }
    return bad == 0 ? 0 : kExitFailed;
  }

  RunOptions opts;
  opts.threads = threads;
  int failed = 0;
  for (const auto& c : acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const CriterionOutcome outcome = run_criterion(c, opts);
    std::printf("%s\n", outcome.summary().c_str());
    std::fflush(stdout);
    failed += outcome.passed() ? 0 : 1;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHMC verification suites and simulations"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  std::optional<Kind> chosen;
  CommonFlags flags;
  bool acceptance = false;

  for (Kind kind : all_kinds()) {
    auto* sub = app.add_subcommand(std::string(to_string(kind)), "Run a " + std::string(to_string(kind)) + " experiment");
    add_common(sub, flags, false);
    sub->callback([&chosen, kind] { chosen = kind; });
  }
  auto* run_cmd = app.add_subcommand("run", "Run the experiment named by the config's kind");
  add_common(run_cmd, flags, true);

  std::vector<int> only;
  std::string write_dir;
  std::string check_dir;
  unsigned acc_threads = 0;
  auto* acc = app.add_subcommand("acceptance", "Run the acceptance suite (one line per criterion)");
  acc->add_option("--only", only, "Criterion ids to run");
  acc->add_option("--write-configs", write_dir, "Write the pinned configs to a directory and exit");
  acc->add_option("--check-configs", check_dir, "Compare configs in a directory with the pinned ones");
  acc->add_option("--threads", acc_threads, "Worker threads (0 = all)");
  acc->callback([&acceptance] { acceptance = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (acceptance) return run_acceptance(only, write_dir, check_dir, acc_threads);
    return run_experiment(chosen, flags);
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "invalid config: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return kExitError;
}
