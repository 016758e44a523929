// Acceptance suite: one PASS/FAIL line per criterion. Exits 0 once every
// criterion has been evaluated; pass --strict to also fail on any FAIL line.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discogan/artifacts.hpp"
#include "discogan/checkpoint.hpp"
#include "discogan/experiment.hpp"
#include "discogan/gradcheck.hpp"
#include "discogan/losses.hpp"
#include "discogan/metrics.hpp"
#include "discogan/trainer.hpp"

namespace {

using namespace discogan;
namespace fs = std::filesystem;

constexpr double kLn2 = std::numbers::ln2;
constexpr double kIdentityTol = 1e-12;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

// Prints a line to stdout and appends it to the report file.
void emit_line(std::FILE* log, const std::string& line) {
  std::fputs(line.c_str(), stdout);
  std::fflush(stdout);
  std::fputs(line.c_str(), log);
  std::fflush(log);
}

void report(std::FILE* log, int id, const char* name, const Verdict& v, const std::string& info) {
  char head[64];
  std::snprintf(head, sizeof(head), "criterion %d %-22s %s  ", id, name, v.pass ? "PASS" : "FAIL");
  emit_line(log, head + info + (v.detail.empty() ? "" : "  failed: " + v.detail) + "\n");
}

void progress(const std::string& msg) {
  std::fprintf(stderr, "%s\n", msg.c_str());
  std::fflush(stderr);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string checkpoint_text(const Checkpoint& ckpt) {
  std::ostringstream out;
  write_checkpoint(out, ckpt);
  return out.str();
}

// ---- 1: gradient oracle

Verdict gradient_oracle(std::string& info) {
  const GradCheckSuiteReport r = run_gradcheck_suite(GradCheckSuiteConfig{});
  Verdict v;
  v.require(r.cases.size() == 100, "expected 100 networks");
  v.require(r.passed(), std::to_string(r.failed_networks) + " networks out of tolerance");
  info = std::to_string(r.cases.size()) + " nets, " + std::to_string(r.total.entries) +
         " entries, max abs err " + fmt("%.2e", r.total.max_abs_error);
  return v;
}

// ---- 2: loss identities

double sum_present(std::initializer_list<std::optional<double>> terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.value_or(0.0);
  return s;
}

void check_history(const History& h, Verdict& v, double& worst, std::size_t& checked) {
  for (const auto& r : h) {
    const double g = std::abs(r.l_g_total - sum_present({r.l_gan_b, r.l_const_a, r.l_gan_a,
                                                         r.l_const_b}));
    const double d = std::abs(r.l_d_total - sum_present({r.l_d_a, r.l_d_b}));
    worst = std::max({worst, g, d});
    ++checked;
    if (g > kIdentityTol || d > kIdentityTol) {
      v.require(false, "identity broken at iteration " + std::to_string(r.iteration));
      return;
    }
  }
}

ModelSet half_disc_set(VariantKind kind, Rng& rng) {
  ModelSet set = build_variant(kind, NetDims{}, rng);
  for (Network* d : {&set.d_b, set.d_a ? &*set.d_a : nullptr}) {
    if (d == nullptr) continue;
    for (auto& w : d->params.weights) w = Matrix(w.rows(), w.cols(), 0.0);
    for (auto& b : d->params.biases) b = Matrix(b.rows(), b.cols(), 0.0);
  }
  return set;
}

Matrix plane_points(Rng& rng, std::size_t n) {
  Matrix m(n, 2);
  for (auto& x : m.values()) x = rng.uniform(0.5, 5.0);
  return m;
}

Network scaled_identity(double s) {
  MlpSpec spec{{2, 2}, {Activation::identity()}};
  return {spec, MlpParams{{Matrix{{s, 0}, {0, s}}}, {Matrix{{0, 0}}}}};
}

Verdict loss_identities(const std::vector<const History*>& toy_histories, std::string& info) {
  Verdict v;
  double worst = 0.0;
  std::size_t checked = 0;
  for (VariantKind kind :
       {VariantKind::kStandardGan, VariantKind::kReconGan, VariantKind::kDiscoGan}) {
    TrainConfig c;
    c.variant = kind;
    c.iterations = 100;
    c.log_every = 1;
    check_history(train(c).history, v, worst, checked);
  }
  for (const History* h : toy_histories) check_history(*h, v, worst, checked);

  // Discriminators with zero parameters output exactly 0.5.
  double max_ulps = 0.0;
  const auto near = [&](double actual, double expected, const std::string& what) {
    const double ulps =
        std::abs(actual - expected) / (std::numeric_limits<double>::epsilon() * expected);
    max_ulps = std::max(max_ulps, ulps);
    v.require(ulps <= 4.0, what + " = " + fmt("%.17g", actual));
  };
  Rng rng(2024);
  {
    const ModelSet set = half_disc_set(VariantKind::kStandardGan, rng);
    const auto g = generator_losses(set, plane_points(rng, 200), plane_points(rng, 200));
    near(g.total, kLn2, "standard generator total");
  }
  {
    ModelSet set = half_disc_set(VariantKind::kDiscoGan, rng);
    set.g_ab = scaled_identity(2.0);
    set.g_ba = scaled_identity(0.5);
    const auto g = generator_losses(set, plane_points(rng, 200), plane_points(rng, 200));
    near(g.total, 2 * kLn2, "disco generator total");
    v.require(*g.l_const_a == 0.0 && *g.l_const_b == 0.0, "inverse generators reconstruct");
    const auto d = discriminator_losses(set, plane_points(rng, 200), plane_points(rng, 200));
    near(d.l_d_b, 2 * kLn2, "L_D_B");
    near(d.total, 4 * kLn2, "disco discriminator total");
  }
  info = std::to_string(checked) + " logged iterations, worst " + fmt("%.1e", worst) +
         ", ln2 fixtures within " + fmt("%.0f", max_ulps) + " ulp";
  return v;
}

// ---- 3 and 4: toy experiment

struct ToyRuns {
  std::uint64_t iterations = 0;
  CompareResult result;
};

const CompareSummary& summary_of(const CompareResult& r, VariantKind kind) {
  for (const auto& s : r.summaries) {
    if (s.variant == kind) return s;
  }
  throw std::logic_error("variant missing from comparison");
}

Verdict toy_ordering(const CompareResult& r, std::string& info) {
  Verdict v;
  for (const auto& row : r.rows) {
    v.require(row.outcome.completed, to_string(row.variant) + " seed " +
                                         std::to_string(row.seed) + " did not complete");
  }
  const auto& disco = summary_of(r, VariantKind::kDiscoGan);
  const auto& standard = summary_of(r, VariantKind::kStandardGan);
  const auto& recon = summary_of(r, VariantKind::kReconGan);
  v.require(disco.median_covered_modes >= 9.0, "disco median coverage below 9");
  v.require(disco.median_collapse_count == 0.0, "disco median collapse nonzero");
  v.require(standard.median_covered_modes < disco.median_covered_modes,
            "standard coverage not below disco");
  v.require(standard.median_collapse_count >= 1.0, "standard median collapse below 1");
  v.require(recon.median_covered_modes >= standard.median_covered_modes &&
                recon.median_covered_modes <= disco.median_covered_modes,
            "recon coverage not between standard and disco");
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "median covered/collapse: disco %.1f/%.1f recon %.1f/%.1f standard %.1f/%.1f",
                disco.median_covered_modes, disco.median_collapse_count,
                recon.median_covered_modes, recon.median_collapse_count,
                standard.median_covered_modes, standard.median_collapse_count);
  info = buf;
  return v;
}

ToyRuns toy_experiment(const std::vector<std::uint64_t>& seeds,
                       const std::vector<std::uint64_t>& schedule, const fs::path& out) {
  ToyRuns runs;
  for (std::uint64_t iterations : schedule) {
    progress("toy experiment: " + std::to_string(iterations) + " iterations, " +
             std::to_string(seeds.size()) + " seeds per variant");
    ExperimentConfig config;
    config.train.iterations = iterations;
    runs.iterations = iterations;
    const fs::path dir = out / ("toy_" + std::to_string(iterations));
    runs.result = run_compare(config, seeds, dir.string());
    progress(format_compare_table(runs.result));
    std::string ignored;
    if (toy_ordering(runs.result, ignored).pass) break;
  }
  return runs;
}

Verdict roundtrip_fidelity(const CompareResult& r, std::string& info) {
  Verdict v;
  double worst_rmse = 0.0;
  double worst_const = 0.0;
  std::size_t runs = 0;
  for (const auto& row : r.rows) {
    if (row.variant != VariantKind::kDiscoGan) continue;
    ++runs;
    const RunOutcome& o = row.outcome;
    const std::string tag = "seed " + std::to_string(row.seed);
    if (!o.completed || !o.metrics || !o.first_report || o.history.empty()) {
      v.require(false, tag + " incomplete");
      continue;
    }
    const auto ratio = [&](double final_value, double first_value, double limit,
                           double& worst, const std::string& what) {
      const double q = final_value / first_value;
      worst = std::max(worst, q);
      v.require(q <= limit, tag + " " + what + " ratio " + fmt("%.3f", q));
    };
    ratio(*o.metrics->a_to_b.roundtrip_rmse, *o.first_roundtrip_rmse_ab, 0.2, worst_rmse,
          "rmse A->B->A");
    ratio(*o.metrics->b_to_a_roundtrip_rmse, *o.first_roundtrip_rmse_ba, 0.2, worst_rmse,
          "rmse B->A->B");
    const LossReport& last = o.history.back();
    ratio(*last.l_const_a, *o.first_report->l_const_a, 0.1, worst_const, "L_CONST_A");
    ratio(*last.l_const_b, *o.first_report->l_const_b, 0.1, worst_const, "L_CONST_B");
  }
  v.require(runs > 0, "no DiscoGAN runs");
  info = std::to_string(runs) + " DiscoGAN runs, worst final/first rmse " +
         fmt("%.3f", worst_rmse) + ", const " + fmt("%.4f", worst_const);
  return v;
}

// ---- 5: determinism

Verdict determinism(const fs::path& out, std::string& info) {
  Verdict v;
  ExperimentConfig config;
  config.train.iterations = 200;
  config.train.log_every = 10;
  config.eval.landscape_nx = config.eval.landscape_ny = 20;
  const fs::path a = out / "det_a", b = out / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  v.require(run_experiment(config, a.string()).completed, "first run failed");
  v.require(run_experiment(config, b.string()).completed, "second run failed");
  for (const char* name : {kHistoryFile, kCheckpointFile}) {
    v.require(read_text_file((a / name).string()) == read_text_file((b / name).string()),
              std::string(name) + " differs");
  }
  for (VariantKind kind :
       {VariantKind::kStandardGan, VariantKind::kReconGan, VariantKind::kDiscoGan}) {
    ExperimentConfig c = config;
    c.train.variant = kind;
    Trainer straight(c.train);
    straight.run(200);
    Trainer first(c.train);
    first.run(100);
    const std::string path = (out / ("resume_" + to_string(kind) + ".txt")).string();
    save_checkpoint({c, first.state()}, path);
    Trainer resumed(load_checkpoint(path).state);
    resumed.run(100);
    v.require(checkpoint_text({c, resumed.state()}) == checkpoint_text({c, straight.state()}),
              to_string(kind) + " resume differs");
  }
  info = "repeat run files identical, resume 100+100 == 200 for all variants";
  return v;
}

// ---- 6: metric fixtures

Verdict metric_fixtures(std::string& info) {
  Verdict v;
  const auto build = [](auto f) {
    AssignmentMatrix am{Matrix(5, 10)};
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 10; ++j) am.mass(i, j) = f(i, j);
    }
    return am;
  };
  const auto check = [&](const AssignmentMatrix& am, std::size_t covered, double fraction,
                         std::size_t collapse, const std::string& name) {
    const CoverageReport r = coverage(am, 0.05);
    v.require(r.covered_modes == covered && r.coverage_fraction == fraction &&
                  r.collapse_count == collapse,
              name);
  };
  check(build([](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; }), 5, 0.5, 0,
        "identity pattern");
  check(build([](std::size_t, std::size_t j) { return j == 3 ? 1.0 : 0.0; }), 1, 0.1, 4,
        "constant collapse");
  check(build([](std::size_t, std::size_t) { return 0.1; }), 10, 1.0, 4, "uniform tie-break");

  // Exact placement: A-mode i's mean shifts exactly onto B-mode i.
  const auto mix_a = make_row_domain(5, {0, 0}, {1, 0}, 1e-12);
  const auto mix_b = make_row_domain(10, {10, 0}, {1, 0}, 0.1);
  MlpSpec spec{{2, 2}, {Activation::identity()}};
  const Network shift{spec, MlpParams{{Matrix{{1, 0}, {0, 1}}}, {Matrix{{10, 0}}}}};
  Rng rng(1);
  const AssignmentMatrix placed = assignment_matrix(shift, mix_a, mix_b, 1000, rng);
  check(placed, 5, 0.5, 0, "exact placement coverage");
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      v.require(placed.mass(i, j) == (i == j ? 1.0 : 0.0), "exact placement rows");
    }
  }

  // Constant generator next to B-mode 3 of the default arc.
  const auto arc_a = DomainConfig::default_a().build();
  const auto arc_b = DomainConfig::default_b().build();
  const Matrix near_mode_3{{arc_b[3].mean.x + 0.01, arc_b[3].mean.y}};
  const Network constant{spec, MlpParams{{Matrix{{0, 0}, {0, 0}}}, {near_mode_3}}};
  const AssignmentMatrix collapsed = assignment_matrix(constant, arc_a, arc_b, 1000, rng);
  check(collapsed, 1, 0.1, 4, "constant generator coverage");
  info = "identity, constant-map and uniform fixtures exact";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance_runs";
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<std::uint64_t> schedule{20000, 50000};
  bool strict = false;
  app.add_option("--out", out, "scratch directory for runs")->capture_default_str();
  app.add_option("--seeds", seeds, "toy experiment seeds")->capture_default_str();
  app.add_option("--schedule", schedule,
                 "toy iteration counts tried in order; the first where every ordering holds "
                 "is kept")
      ->capture_default_str();
  app.add_flag("--strict", strict, "exit nonzero when any criterion fails");
  CLI11_PARSE(app, argc, argv);
  const fs::path out_dir(out);
  fs::create_directories(out_dir);

  const std::string report_path = (out_dir / "report.txt").string();
  std::FILE* log = std::fopen(report_path.c_str(), "w");
  if (log == nullptr) {
    std::fprintf(stderr, "cannot write %s\n", report_path.c_str());
    return 2;
  }
  int failed = 0;
  std::string info;
  const auto record = [&](int id, const char* name, const Verdict& v) {
    report(log, id, name, v, info);
    failed += v.pass ? 0 : 1;
  };

  const Verdict c1 = gradient_oracle(info);
  record(1, "gradient-oracle", c1);

  const ToyRuns toy = toy_experiment(seeds, schedule, out_dir);
  std::vector<const History*> histories;
  for (const auto& row : toy.result.rows) histories.push_back(&row.outcome.history);
  const Verdict c2 = loss_identities(histories, info);
  record(2, "loss-identities", c2);

  const Verdict c3 = toy_ordering(toy.result, info);
  info += " at " + std::to_string(toy.iterations) + " iterations";
  record(3, "toy-ordering", c3);

  const Verdict c4 = roundtrip_fidelity(toy.result, info);
  record(4, "roundtrip-fidelity", c4);

  const Verdict c5 = determinism(out_dir, info);
  record(5, "determinism", c5);

  const Verdict c6 = metric_fixtures(info);
  record(6, "metric-definitions", c6);

  emit_line(log, failed == 0 ? "all 6 criteria pass\n"
                              : std::to_string(failed) + " of 6 criteria fail\n");
  std::fprintf(log, "\ntoy runs at %llu iterations\n%s",
               static_cast<unsigned long long>(toy.iterations),
               format_compare_table(toy.result).c_str());
  std::fclose(log);
  // A completed report is a successful run; --strict also demands every PASS.
  return strict && failed > 0 ? 1 : 0;
}
