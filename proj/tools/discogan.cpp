#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discogan/checkpoint.hpp"
#include "discogan/config.hpp"
#include "discogan/errors.hpp"
#include "discogan/experiment.hpp"
#include "discogan/gradcheck.hpp"

namespace {

using namespace discogan;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  std::optional<std::uint64_t> iterations;
};

ExperimentConfig resolve(const CommonOptions& opt) {
  ExperimentConfig config =
      opt.config_path.empty() ? ExperimentConfig{} : load_config(opt.config_path);
  if (opt.seed) config.train.seed = *opt.seed;
  if (opt.variant) config.train.variant = parse_variant(*opt.variant);
  if (opt.iterations) config.train.iterations = *opt.iterations;
  validate(config);
  return config;
}

void add_config_options(CLI::App* cmd, CommonOptions& opt, bool with_variant_and_seed) {
  cmd->add_option("--config", opt.config_path, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  if (with_variant_and_seed) {
    cmd->add_option("--seed", opt.seed, "overrides the config seed");
    cmd->add_option("--variant", opt.variant, "standard, recon or disco")
        ->check(CLI::IsMember({"standard", "recon", "disco"}));
  }
  cmd->add_option("--iterations", opt.iterations, "overrides the config iteration count")
      ->check(CLI::PositiveNumber);
}

int cmd_run(const CommonOptions& opt) {
  const ExperimentConfig config = resolve(opt);
  const RunOutcome o = run_experiment(config, opt.out_dir);
  if (!o.completed) {
    std::fprintf(stderr, "training failed: %s\n", o.error.c_str());
    return 1;
  }
  const auto& m = *o.metrics;
  std::printf("%s seed %llu: %llu iterations, covered %zu/%zu, collapse %zu",
              to_string(config.train.variant).c_str(),
              static_cast<unsigned long long>(config.train.seed),
              static_cast<unsigned long long>(o.iterations_completed),
              m.a_to_b.coverage.covered_modes, m.a_to_b.assignment.target_modes(),
              m.a_to_b.coverage.collapse_count);
  if (m.a_to_b.roundtrip_rmse) std::printf(", rmse %.4f", *m.a_to_b.roundtrip_rmse);
  std::printf("\nartifacts in %s\n", opt.out_dir.c_str());
  return 0;
}

int cmd_gradcheck(const GradCheckSuiteConfig& config) {
  const GradCheckSuiteReport r = run_gradcheck_suite(config);
  std::printf("networks %zu, entries %zu, failures %zu, max abs error %.3e\n", r.cases.size(),
              r.total.entries, r.total.failures, r.total.max_abs_error);
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    const auto& c = r.cases[i];
    if (c.stats.failures == 0) continue;
    std::printf("  network %zu: %zu of %zu entries outside tolerance\n", i, c.stats.failures,
                c.stats.entries);
  }
  std::printf("%s\n", r.passed() ? "PASS" : "FAIL");
  return r.passed() ? 0 : 1;
}

int cmd_compare(const CommonOptions& opt, const std::vector<std::uint64_t>& seeds) {
  const ExperimentConfig config = resolve(opt);
  const CompareResult result = run_compare(config, seeds, opt.out_dir);
  std::fputs(format_compare_table(result).c_str(), stdout);
  for (const auto& row : result.rows) {
    if (!row.outcome.completed) return 1;
  }
  return 0;
}

int cmd_landscape(const std::string& checkpoint, const std::string& out_dir) {
  render_from_checkpoint(load_checkpoint(checkpoint), out_dir);
  std::printf("wrote %s and %s in %s\n", kLandscapeFile, kScatterFile, out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DiscoGAN toy experiment on 2-D Gaussian mixtures"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  auto* run = app.add_subcommand("run", "train one variant and write all artifacts");
  add_config_options(run, run_opt, true);

  GradCheckSuiteConfig gc;
  auto* gradcheck = app.add_subcommand("gradcheck", "check backprop against finite differences");
  gradcheck->add_option("--seed", gc.seed, "suite seed")->capture_default_str();
  gradcheck->add_option("--networks", gc.networks, "random networks to check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CommonOptions cmp_opt;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  auto* compare = app.add_subcommand("compare", "run all variants on shared seeds");
  add_config_options(compare, cmp_opt, false);
  compare->add_option("--seeds", seeds, "seeds shared by every variant")->capture_default_str();

  std::string checkpoint;
  std::string land_out = "out";
  auto* land = app.add_subcommand("landscape", "re-render landscape and scatter from a checkpoint");
  land->add_option("--checkpoint", checkpoint, "checkpoint file")
      ->required()
      ->check(CLI::ExistingFile);
  land->add_option("--out", land_out, "output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opt);
    if (*gradcheck) return cmd_gradcheck(gc);
    if (*compare) return cmd_compare(cmp_opt, seeds);
    if (*land) return cmd_landscape(checkpoint, land_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
