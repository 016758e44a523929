#include "discogan/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "discogan/artifacts.hpp"
#include "discogan/errors.hpp"

namespace discogan {
namespace {

namespace fs = std::filesystem;

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json report_json(const std::optional<LossReport>& r) {
  if (!r) return nullptr;
  return {{"iteration", r->iteration},       {"l_gan_b", optional_number(r->l_gan_b)},
          {"l_const_a", optional_number(r->l_const_a)},
          {"l_gan_a", optional_number(r->l_gan_a)},
          {"l_const_b", optional_number(r->l_const_b)},
          {"l_g_total", r->l_g_total},       {"l_d_a", optional_number(r->l_d_a)},
          {"l_d_b", optional_number(r->l_d_b)}, {"l_d_total", r->l_d_total}};
}

nlohmann::json direction_json(const CoverageReport& cov, const std::optional<double>& rmse,
                              const std::optional<double>& first_rmse) {
  return {{"covered_modes", cov.covered_modes},
          {"coverage_fraction", cov.coverage_fraction},
          {"collapse_count", cov.collapse_count},
          {"roundtrip_rmse", optional_number(rmse)},
          {"roundtrip_rmse_iteration_1", optional_number(first_rmse)}};
}

std::string summary_json(const ExperimentConfig& config, const RunOutcome& o) {
  nlohmann::json j;
  j["status"] = o.completed ? "completed" : "failed";
  j["partial"] = !o.completed;
  j["error"] = o.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.error);
  j["variant"] = to_string(config.train.variant);
  j["seed"] = config.train.seed;
  j["iterations"] = config.train.iterations;
  j["iterations_completed"] = o.iterations_completed;
  j["first_losses"] = report_json(o.first_report);
  j["final_losses"] =
      report_json(o.history.empty() ? std::nullopt : std::optional<LossReport>(o.history.back()));
  if (o.metrics) {
    const MetricBundle& m = *o.metrics;
    j["coverage"] = m.a_to_b.coverage.covered_modes;
    j["collapse_count"] = m.a_to_b.coverage.collapse_count;
    j["a_to_b"] = direction_json(m.a_to_b.coverage, m.a_to_b.roundtrip_rmse,
                                 o.first_roundtrip_rmse_ab);
    j["b_to_a"] = m.b_to_a_coverage ? direction_json(*m.b_to_a_coverage, m.b_to_a_roundtrip_rmse,
                                                     o.first_roundtrip_rmse_ba)
                                    : nlohmann::json(nullptr);
  } else {
    j["coverage"] = nullptr;
    j["collapse_count"] = nullptr;
    j["a_to_b"] = nullptr;
    j["b_to_a"] = nullptr;
  }
  j["artifacts"] = o.artifacts;
  return j.dump(2) + "\n";
}

template <typename Writer>
void emit(const fs::path& dir, const char* name, RunOutcome& o, Writer&& write) {
  std::ostringstream ss;
  write(ss);
  write_text_file((dir / name).string(), ss.str());
  o.artifacts.emplace_back(name);
}

void emit_scatter(const fs::path& dir, const ExperimentConfig& config, const ModelSet& models,
                  const GaussianMixture& mix_a, const GaussianMixture& mix_b,
                  const LandscapeGrid& grid) {
  const LabeledPoints pts =
      scatter_points(models, mix_a, config.scatter_samples_per_mode, config.eval.seed);
  write_text_file((dir / kScatterFile).string(),
                  render_scatter_svg(pts.points, pts.labels, mix_b, config.eval.landscape_margin,
                                     &grid));
}

}  // namespace

LabeledPoints scatter_points(const ModelSet& models, const GaussianMixture& mix_a,
                             std::size_t per_mode, std::uint64_t seed) {
  Rng rng(seed);
  LabeledPoints out{Matrix(0, 2), {}};
  for (std::size_t i = 0; i < mix_a.size(); ++i) {
    out.points = vstack(out.points, translate(models.g_ab, sample_mode(mix_a, i, per_mode, rng)));
    out.labels.insert(out.labels.end(), per_mode, i);
  }
  return out;
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  validate(config);
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw PersistenceError("cannot create '" + out_dir + "': " + ec.message());

  RunOutcome o;
  Trainer trainer(config.train);
  try {
    trainer.run(1);
    o.first_report = trainer.last_report();
    EvalConfig quick = config.eval;
    quick.landscape_nx = quick.landscape_ny = 2;
    const MetricBundle first =
        evaluate_run(trainer.models(), trainer.mix_a(), trainer.mix_b(), quick);
    o.first_roundtrip_rmse_ab = first.a_to_b.roundtrip_rmse;
    o.first_roundtrip_rmse_ba = first.b_to_a_roundtrip_rmse;
    trainer.run_to_end();
    o.completed = true;
  } catch (const TrainingError& e) {
    o.error = e.what();
  }
  o.iterations_completed = trainer.iteration();
  o.history = trainer.history();
  emit(dir, kHistoryFile, o, [&](std::ostream& s) { write_history_csv(s, o.history); });
  if (!o.completed) {
    o.artifacts.emplace_back(kSummaryFile);
    write_text_file((dir / kSummaryFile).string(), summary_json(config, o));
    return o;
  }

  o.metrics = evaluate_run(trainer.models(), trainer.mix_a(), trainer.mix_b(), config.eval);
  const MetricBundle& m = *o.metrics;
  emit(dir, kAssignmentFile, o,
       [&](std::ostream& s) { write_assignment_csv(s, m.a_to_b.assignment); });
  emit(dir, kCoverageFile, o, [&](std::ostream& s) { s << coverage_json(m, config.eval); });
  emit(dir, kLandscapeFile, o,
       [&](std::ostream& s) { write_landscape_csv(s, m.a_to_b.landscape); });
  emit_scatter(dir, config, trainer.models(), trainer.mix_a(), trainer.mix_b(),
               m.a_to_b.landscape);
  o.artifacts.emplace_back(kScatterFile);
  save_checkpoint({config, trainer.state()}, (dir / kCheckpointFile).string());
  o.artifacts.emplace_back(kCheckpointFile);
  o.artifacts.emplace_back(kSummaryFile);
  write_text_file((dir / kSummaryFile).string(), summary_json(config, o));
  return o;
}

void render_from_checkpoint(const Checkpoint& ckpt, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw PersistenceError("cannot create '" + out_dir + "': " + ec.message());
  const ExperimentConfig& config = ckpt.experiment;
  const GaussianMixture mix_a = config.train.domain_a.build();
  const GaussianMixture mix_b = config.train.domain_b.build();
  const LandscapeGrid grid =
      landscape(ckpt.state.models.d_b, bounding_box(mix_b, config.eval.landscape_margin),
                config.eval.landscape_nx, config.eval.landscape_ny);
  std::ostringstream csv;
  write_landscape_csv(csv, grid);
  write_text_file((dir / kLandscapeFile).string(), csv.str());
  emit_scatter(dir, config, ckpt.state.models, mix_a, mix_b, grid);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median: no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CompareResult run_compare(const ExperimentConfig& base, const std::vector<std::uint64_t>& seeds,
                          const std::string& out_dir) {
  if (seeds.empty()) throw ParameterError("run_compare: no seeds");
  CompareResult result;
  const VariantKind kinds[] = {VariantKind::kStandardGan, VariantKind::kReconGan,
                               VariantKind::kDiscoGan};
  std::ostringstream csv;
  csv << "variant,seed,status,covered_modes,collapse_count,roundtrip_rmse_ab,roundtrip_rmse_ba\n";
  for (VariantKind kind : kinds) {
    std::vector<double> covered, collapse;
    for (std::uint64_t seed : seeds) {
      ExperimentConfig config = base;
      config.train.variant = kind;
      config.train.seed = seed;
      const fs::path dir = fs::path(out_dir) / to_string(kind) / ("seed_" + std::to_string(seed));
      CompareRow row{kind, seed, run_experiment(config, dir.string())};
      csv << to_string(kind) << ',' << seed << ','
          << (row.outcome.completed ? "completed" : "failed");
      if (row.outcome.metrics) {
        const auto& m = *row.outcome.metrics;
        covered.push_back(static_cast<double>(m.a_to_b.coverage.covered_modes));
        collapse.push_back(static_cast<double>(m.a_to_b.coverage.collapse_count));
        csv << ',' << m.a_to_b.coverage.covered_modes << ',' << m.a_to_b.coverage.collapse_count
            << ',' << (m.a_to_b.roundtrip_rmse ? format_double(*m.a_to_b.roundtrip_rmse) : "")
            << ',' << (m.b_to_a_roundtrip_rmse ? format_double(*m.b_to_a_roundtrip_rmse) : "");
      } else {
        csv << ",,,,";
      }
      csv << '\n';
      result.rows.push_back(std::move(row));
    }
    CompareSummary s{kind, covered.size(), 0.0, 0.0};
    if (!covered.empty()) {
      s.median_covered_modes = median(covered);
      s.median_collapse_count = median(collapse);
    }
    result.summaries.push_back(s);
  }
  write_text_file((fs::path(out_dir) / "compare.csv").string(), csv.str());
  return result;
}

std::string format_compare_table(const CompareResult& result) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-9s %6s %8s %8s %10s %10s\n", "variant", "seed", "covered",
                "collapse", "rmse_ab", "rmse_ba");
  out += buf;
  for (const auto& row : result.rows) {
    const auto& o = row.outcome;
    if (!o.metrics) {
      std::snprintf(buf, sizeof(buf), "%-9s %6llu  failed: %s\n", to_string(row.variant).c_str(),
                    static_cast<unsigned long long>(row.seed), o.error.c_str());
      out += buf;
      continue;
    }
    const auto& m = *o.metrics;
    const auto num = [](const std::optional<double>& v) {
      char b[32];
      if (v) {
        std::snprintf(b, sizeof(b), "%.4f", *v);
      } else {
        std::snprintf(b, sizeof(b), "-");
      }
      return std::string(b);
    };
    std::snprintf(buf, sizeof(buf), "%-9s %6llu %8zu %8zu %10s %10s\n",
                  to_string(row.variant).c_str(), static_cast<unsigned long long>(row.seed),
                  m.a_to_b.coverage.covered_modes, m.a_to_b.coverage.collapse_count,
                  num(m.a_to_b.roundtrip_rmse).c_str(), num(m.b_to_a_roundtrip_rmse).c_str());
    out += buf;
  }
  out += "\nmedians\n";
  for (const auto& s : result.summaries) {
    std::snprintf(buf, sizeof(buf), "%-9s runs %zu covered %.1f collapse %.1f\n",
                  to_string(s.variant).c_str(), s.runs, s.median_covered_modes,
                  s.median_collapse_count);
    out += buf;
  }
  return out;
}

}  // namespace discogan
