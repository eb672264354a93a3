// Acceptance runner: one PASS/FAIL line per criterion, detail lines indented
// underneath. Exit status is the number of failed criteria.
//
//   acceptance [path/to/spiga]     the CLI binary enables the byte-identity check

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "random_knots.hpp"
#include "spiga/convergence.hpp"
#include "spiga/error.hpp"
#include "spiga/galerkin.hpp"
#include "spiga/report.hpp"
#include "spline_properties.hpp"

namespace fs = std::filesystem;
using spiga::Example;
using spiga::KnotStrategy;
using spiga::ParameterPair;

namespace {

int failures = 0;

void verdict(bool ok, const char* id, const std::string& text) {
  std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  if (!ok) ++failures;
}

__attribute__((format(printf, 1, 2))) void note(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  std::printf("    ");
  std::vprintf(fmt, args);
  std::printf("\n");
  va_end(args);
}

// One column of a reference table: errors indexed by p.
struct Column {
  ParameterPair eps;
  std::map<int, double> error;
  bool all_ok = true;
};

std::vector<Column> sweep(const spiga::StudyConfig& config) {
  std::vector<Column> cols;
  for (const auto& eps : config.parameters) cols.push_back({eps, {}, true});
  for (const auto& r : spiga::run_convergence_study(config)) {
    for (auto& c : cols) {
      if (c.eps == ParameterPair{r.eps1, r.eps2}) {
        c.error[r.p] = r.error_percent;
        if (!r.ok()) {
          c.all_ok = false;
          note("cell p=%d eps1=%g eps2=%g failed: %s", r.p, r.eps1, r.eps2, r.detail.c_str());
        }
      }
    }
  }
  return cols;
}

spiga::StudyConfig study(Example ex, std::vector<ParameterPair> params, int p_min, int p_max,
                         std::optional<int> multiplicity = 1) {
  auto config = spiga::preset(ex);
  config.parameters = std::move(params);
  config.p_min = p_min;
  config.p_max = p_max;
  config.knots.interior_multiplicity = multiplicity;
  config.threads = std::max(1u, std::thread::hardware_concurrency());
  return config;
}

bool decreasing(const Column& c) {
  for (auto it = std::next(c.error.begin()); it != c.error.end(); ++it) {
    if (!(it->second < std::prev(it)->second)) return false;
  }
  return true;
}

// Largest spread across columns at any fixed p.
double row_spread(const std::vector<Column>& cols) {
  double worst = 0.0;
  for (const auto& [p, _] : cols.front().error) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& c : cols) {
      lo = std::min(lo, c.error.at(p));
      hi = std::max(hi, c.error.at(p));
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit log_linear_fit(const Column& c, int p_lo, int p_hi) {
  std::vector<double> x, y;
  for (const auto& [p, e] : c.error) {
    if (p < p_lo || p > p_hi) continue;
    x.push_back(p);
    y.push_back(std::log(e));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) mx += x[k] / n, my += y[k] / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

void print_columns(const std::vector<Column>& cols) {
  for (const auto& c : cols) {
    std::string row;
    char buf[32];
    for (const auto& [p, e] : c.error) {
      std::snprintf(buf, sizeof buf, " %d:%.2f", p, e);
      row += buf;
    }
    note("eps1=%-6g eps2=%-6g%s", c.eps.eps1, c.eps.eps2, row.c_str());
  }
}

// Reference errors by DOF label (3p), one column per parameter pair.
const std::vector<std::vector<double>> kTable2 = {
    // eps1 = 1e-6, 1e-8, 1e-12, 1e-16; DOF 6..27
    {44.05, 35.96, 28.48, 21.96, 15.92, 10.75, 6.18, 2.42},
    {44.19, 36.09, 28.78, 22.23, 16.31, 11.01, 6.37, 2.41},
    {44.22, 36.12, 28.82, 22.26, 16.35, 11.04, 6.39, 2.41},
    {44.21, 36.11, 28.82, 22.26, 16.35, 11.04, 6.39, 2.41}};

const std::vector<std::vector<double>> kTable3 = {
    // eps1 = 1e-8 .. 1e-13; DOF 6..30
    {44.44, 36.23, 28.91, 22.32, 16.40, 11.08, 6.41, 2.42, 1.92},
    {44.45, 36.22, 28.90, 22.32, 16.41, 11.09, 6.41, 2.42, 1.92},
    {44.45, 36.22, 28.91, 22.33, 16.40, 11.08, 6.41, 2.42, 1.92},
    {44.44, 36.22, 28.91, 22.32, 16.41, 11.08, 6.42, 2.42, 1.93},
    {44.44, 36.22, 28.90, 22.32, 16.40, 11.08, 6.41, 2.42, 1.93},
    {44.44, 36.21, 28.89, 22.30, 16.38, 11.05, 6.38, 2.40, 1.95}};

const std::vector<std::vector<double>> kTable4 = {
    // DOF 6..30, columns in preset order; NAN marks the excluded cell
    {66.98, 50.68, 39.09, 30.01, 22.61, 16.35, 11.00, 6.37, 2.43},
    {53.17, 44.18, 36.07, 28.77, 22.22, 16.31, 11.02, 6.38, 2.43},
    {53.18, 44.17, 36.08, 28.78, 22.23, 16.30, 11.03, 6.38, 2.43},
    {53.20, 44.19, 36.09, 28.79, NAN, 16.32, 11.01, 6.38, 2.42},
    {66.97, 50.71, 39.11, 30.05, 22.65, 16.41, 11.05, 6.39, 2.41},
    {66.74, 50.41, 39.10, 29.84, 22.29, 16.36, 11.04, 6.39, 2.41}};

// Worst relative deviation from a reference table; rows start at DOF 6.
// Row k is compared with degree p_first_row + k.
double worst_relative(const std::vector<Column>& cols, const std::vector<std::vector<double>>& ref,
                      int p_first_row) {
  double worst = 0.0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t row = 0; row < ref[j].size(); ++row) {
      const double want = ref[j][row];
      if (std::isnan(want)) continue;
      const auto it = cols[j].error.find(p_first_row + static_cast<int>(row));
      if (it == cols[j].error.end()) continue;
      worst = std::max(worst, std::abs(it->second - want) / want);
    }
  }
  return worst;
}

// Criterion 7 checks that every system behind the table sweeps passes.
struct SystemAudit {
  int systems = 0;
  double worst_orthogonality = 0.0;  // relative to max |F_i|
  double min_quadratic_form = INFINITY;
  bool banded = true;
};

void audit_systems(const spiga::StudyConfig& config, SystemAudit& audit, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (const auto& eps : config.parameters) {
    const auto problem = spiga::make_problem(config.example, eps, config.custom);
    const auto regime = spiga::classify_regime(problem);
    for (int p = config.p_min; p <= config.p_max; ++p) {
      const auto design =
          spiga::design_knots(regime, config.strategy.value_or(spiga::strategy_for(regime.regime)),
                              p, config.knots);
      const spiga::SplineSpace space(design.knots);
      auto sys = spiga::assemble(problem, space, spiga::default_quad_order(p));
      const auto& alpha = spiga::apply_dirichlet_and_solve(sys);
      ++audit.systems;

      const double f_norm = sys.reduced_load.cwiseAbs().maxCoeff();
      const auto r = spiga::galerkin_residual(problem, space, alpha, spiga::default_quad_order(p));
      audit.worst_orthogonality = std::max(audit.worst_orthogonality, r.cwiseAbs().maxCoeff() / f_norm);

      const Eigen::MatrixXd a = sys.system_matrix();
      for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd beta(sys.mass.rows());
        for (auto& v : beta) v = normal(rng);
        audit.min_quadratic_form =
            std::min(audit.min_quadratic_form, beta.dot(sys.mass * beta) / beta.squaredNorm());
      }
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          if (std::abs(i - j) > p && a(i, j) != 0.0) audit.banded = false;
        }
      }
    }
  }
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<ParameterPair> table2_eps = {{1e-6, 1.0}, {1e-8, 1.0}, {1e-12, 1.0}, {1e-16, 1.0}};
  const auto table3_eps = spiga::preset(Example::Example2).parameters;
  const auto table4_eps = spiga::preset(Example::Example3).parameters;

  const auto c1_config = study(Example::Example1, table2_eps, 2, 9);
  const auto c2_config = study(Example::Example2, table3_eps, 2, 10);
  const auto c3_config = study(Example::Example3, table4_eps, 1, 9);

  // 8 runs first: nothing below is trusted until the closed forms are.
  {
    bool ok = true;
    double worst = 0.0;
    int grids = 0;
    for (const auto* config : {&c1_config, &c2_config, &c3_config}) {
      for (const auto& eps : config->parameters) {
        const auto gate = spiga::check_exact_solution(spiga::make_problem(config->example, eps));
        ok = ok && gate.passed;
        worst = std::max(worst, gate.max_residual / gate.f_norm);
        ++grids;
      }
    }
    for (double eps1 : {1e-1, 1e-6, 1e-8, 1e-12, 1e-16}) {
      const auto gate = spiga::check_exact_solution(spiga::make_problem(Example::Example1, {eps1, 1.0}));
      ok = ok && gate.passed;
      worst = std::max(worst, gate.max_residual / gate.f_norm);
      ++grids;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exact-solution gate: %d parameter sets, worst residual %.2e * |f| (limit 1e-6)",
                  grids, worst);
    verdict(ok, "C8", buf);
  }

  std::vector<std::pair<std::string, Column>> fitted;

  // 1
  {
    const auto cols = sweep(c1_config);
    print_columns(cols);
    bool mono = true, final_ok = true, ok = true;
    for (const auto& c : cols) {
      mono = mono && decreasing(c);
      final_ok = final_ok && c.error.at(9) >= 1.5 && c.error.at(9) <= 3.5;
      ok = ok && c.all_ok;
      fitted.emplace_back("example1", c);
    }
    const double spread = row_spread(cols);
    const double cell = worst_relative(cols, kTable2, 2);
    note("monotone=%d row spread=%.3f pp (<= 1.0) final in [1.5,3.5]=%d worst cell deviation=%.1f%% (<= 30%%)",
         mono, spread, final_ok, 100 * cell);
    verdict(ok && mono && spread <= 1.0 && final_ok && cell <= 0.30, "C1",
            "reaction-diffusion table, layer knots of multiplicity 1");

    const auto c0 = sweep(study(Example::Example1, table2_eps, 2, 9, std::nullopt));
    note("for comparison, C0 layer knots (multiplicity p): worst cell deviation %.1f%%, p=9 error %.4f%%",
         100 * worst_relative(c0, kTable2, 2), c0.front().error.at(9));
  }

  // 2
  {
    const auto cols = sweep(c2_config);
    print_columns(cols);
    bool mono = true, final_ok = true, ok = true;
    for (const auto& c : cols) {
      mono = mono && decreasing(c);
      final_ok = final_ok && c.error.at(10) >= 1.0 && c.error.at(10) <= 3.0;
      ok = ok && c.all_ok;
      fitted.emplace_back("example2", c);
    }
    const double spread = row_spread(cols);
    note("monotone=%d row spread=%.3f pp (<= 0.5) final in [1,3]=%d worst cell deviation=%.1f%%", mono,
         spread, final_ok, 100 * worst_relative(cols, kTable3, 2));
    verdict(ok && mono && spread <= 0.5 && final_ok, "C2",
            "convection-diffusion table, layer knot of multiplicity 1");

    const auto c0 = sweep(study(Example::Example2, table3_eps, 2, 10, std::nullopt));
    note("for comparison, C0 layer knot (multiplicity p): p=10 error %.4f%%, monotone=%d",
         c0.front().error.at(10), decreasing(c0.front()));
  }

  // 3
  {
    const auto cols = sweep(c3_config);
    print_columns(cols);
    bool mono = true, final_ok = true, ok = true;
    for (const auto& c : cols) {
      mono = mono && decreasing(c);
      final_ok = final_ok && c.error.at(9) <= 3.5;
      ok = ok && c.all_ok;
      fitted.emplace_back("example3", c);
    }
    note("monotone=%d final <= 3.5=%d worst cell deviation=%.1f%% (informational, one cell excluded)",
         mono, final_ok, 100 * worst_relative(cols, kTable4, 1));
    verdict(ok && mono && final_ok, "C3", "convection-reaction-diffusion table, p = 1..9");
  }

  // 4
  {
    bool ok = true;
    const std::vector<ParameterPair> small = {{1e-6, 1.0}, {1e-8, 1.0}, {1e-12, 1.0}, {1e-16, 1.0}};
    auto uniform = study(Example::Example1, small, 10, 10);
    uniform.strategy = KnotStrategy::Uniform;
    const auto u = sweep(uniform);
    const auto a = sweep(study(Example::Example1, small, 10, 10));
    for (std::size_t k = 0; k < small.size(); ++k) {
      const double ratio = u[k].error.at(10) / a[k].error.at(10);
      note("eps1=%g p=10: uniform %.2f%% layer-adapted %.2f%% ratio %.1f", small[k].eps1,
           u[k].error.at(10), a[k].error.at(10), ratio);
      ok = ok && ratio > 10.0;
    }
    auto smooth = study(Example::Example1, {{1e-1, 1.0}}, 2, 10);
    smooth.strategy = KnotStrategy::Uniform;
    const auto s = sweep(smooth);
    note("eps1=0.1 uniform: p=2 %.3g%% p=10 %.3g%%", s[0].error.at(2), s[0].error.at(10));
    // b = 0 and f symmetric: an odd degree adds nothing, so errors repeat in pairs
    bool nonincreasing = true;
    for (int p = 3; p <= 10; ++p) {
      nonincreasing = nonincreasing && s[0].error.at(p) <= s[0].error.at(p - 1) * (1.0 + 1e-4);
    }
    ok = ok && s[0].error.at(10) < 1.0 && nonincreasing;
    verdict(ok, "C4", "single-span vector fails in the layer regime, converges when smooth");
  }

  // 5
  {
    bool ok = true;
    double worst_r2 = 1.0;
    for (const auto& [name, c] : fitted) {
      const Fit f = log_linear_fit(c, 2, 9);
      worst_r2 = std::min(worst_r2, f.r2);
      const bool pass = f.slope < 0.0 && f.r2 >= 0.95;
      ok = ok && pass;
      note("%s eps1=%g eps2=%g: slope %.3f R^2 %.4f%s", name.c_str(), c.eps.eps1, c.eps.eps2, f.slope,
           f.r2, pass ? "" : "  <");
    }
    // The same fit applied to the reference tables themselves.
    auto ref_fit = [](const std::vector<double>& errs, int p0) {
      Column c;
      for (std::size_t k = 0; k < errs.size(); ++k) c.error[p0 + static_cast<int>(k)] = errs[k];
      return log_linear_fit(c, 2, 9).r2;
    };
    note("reference tables under the same fit: R^2 %.4f, %.4f, %.4f", ref_fit(kTable2[0], 2),
         ref_fit(kTable3[0], 2), ref_fit(kTable4[0], 1));
    char buf[96];
    std::snprintf(buf, sizeof buf, "log-linear fit over p = 2..9, worst R^2 %.4f (>= 0.95)", worst_r2);
    verdict(ok, "C5", buf);
  }

  // 6
  {
    std::mt19937_64 rng(20240611);
    testing::PropertyReport worst;
    worst.min_value = 0.0;
    int max_p = 0;
    const int trials = 120;
    for (int t = 0; t < trials; ++t) {
      const spiga::SplineSpace space(testing::random_knot_vector(rng, 10));
      max_p = std::max(max_p, space.degree());
      const auto r = testing::measure_properties(space, rng, 300);
      worst.unity_error = std::max(worst.unity_error, r.unity_error);
      worst.min_value = std::min(worst.min_value, r.min_value);
      worst.support_violation = std::max(worst.support_violation, r.support_violation);
      worst.derivative_error = std::max(worst.derivative_error, r.derivative_error);
      worst.smoothness_error = std::max(worst.smoothness_error, r.smoothness_error);
      worst.jumps_where_expected = worst.jumps_where_expected && r.jumps_where_expected;
    }
    note("%d random knot vectors up to p=%d: unity %.1e, min %.1e, support %.1e, derivative %.1e, "
         "smoothness %.1e, jumps %s",
         trials, max_p, worst.unity_error, worst.min_value, worst.support_violation,
         worst.derivative_error, worst.smoothness_error, worst.jumps_where_expected ? "yes" : "no");
    const bool ok = worst.unity_error <= 1e-12 && worst.min_value >= 0.0 &&
                    worst.support_violation == 0.0 && worst.derivative_error <= 1e-6 &&
                    worst.smoothness_error <= 1e-9 && worst.jumps_where_expected;
    verdict(ok, "C6", "spline property suite");
  }

  // 7
  {
    const auto problem = spiga::TwoParameterProblem(1.0, 1.0, spiga::Coefficient::constant(1.0),
                                                    spiga::Coefficient::constant(1.0),
                                                    spiga::Coefficient::constant(1.0));
    const auto hat = spiga::assemble(problem, spiga::SplineSpace(spiga::KnotVector::single_span(1)), 2);
    Eigen::Matrix2d a0, a1, a2;
    a0 << 1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3;
    a1 << 1, -1, -1, 1;
    a2 << -0.5, 0.5, -0.5, 0.5;
    const double hat_err = std::max({(hat.mass - a0).cwiseAbs().maxCoeff(),
                                     (hat.stiffness - a1).cwiseAbs().maxCoeff(),
                                     (hat.convection - a2).cwiseAbs().maxCoeff()});

    SystemAudit audit;
    std::mt19937_64 rng(7);
    for (const auto* config : {&c1_config, &c2_config, &c3_config}) audit_systems(*config, audit, rng);
    note("hat matrices max error %.1e; %d systems: min beta'M beta/|beta|^2 %.2e, "
         "orthogonality %.1e * |F|, banded %s",
         hat_err, audit.systems, audit.min_quadratic_form, audit.worst_orthogonality,
         audit.banded ? "yes" : "no");
    verdict(hat_err <= 1e-14 && audit.min_quadratic_form > 0.0 && audit.worst_orthogonality <= 1e-9 &&
                audit.banded,
            "C7", "discretization suite");
  }

  // 9
  {
    bool ok = true;
    const fs::path dir = fs::temp_directory_path() / "spiga_acceptance";
    fs::remove_all(dir);
    auto config = spiga::config_from_settings(
        {{"example", "example3"}, {"p_max", "6"}, {"output", (dir / "a.csv").string()}});
    spiga::run(config);
    config.output_path = dir / "b.csv";
    config.threads = 4;
    spiga::run(config);
    const bool same_lib = slurp(dir / "a.csv") == slurp(dir / "b.csv") && !slurp(dir / "a.csv").empty();
    note("library runs (1 and 4 threads) byte-identical: %s", same_lib ? "yes" : "no");
    ok = ok && same_lib;

    config.format = spiga::OutputFormat::Json;
    config.output_path = dir / "c.json";
    const auto outcome = spiga::run(config);
    std::ifstream in(dir / "c.json");
    const auto back = spiga::read_json(in);
    bool lossless = back.size() == outcome.records.size();
    for (std::size_t k = 0; lossless && k < back.size(); ++k) {
      lossless = spiga::same_record(back[k], outcome.records[k]);
    }
    note("JSON round trip lossless: %s", lossless ? "yes" : "no");
    ok = ok && lossless;

    if (argc > 1) {
      const std::string cli = argv[1];
      bool same_cli = true;
      for (const char* name : {"cli1.csv", "cli2.csv"}) {
        const std::string cmd = "\"" + cli + "\" run --example example1 --eps1 1e-6,1e-12 --p-max 6 -o \"" +
                                (dir / name).string() + "\" > /dev/null";
        same_cli = same_cli && std::system(cmd.c_str()) == 0;
      }
      same_cli = same_cli && slurp(dir / "cli1.csv") == slurp(dir / "cli2.csv");
      note("CLI runs byte-identical: %s", same_cli ? "yes" : "no");
      ok = ok && same_cli;
    } else {
      note("CLI path not given; CLI byte-identity is covered by the cli_determinism test");
    }
    fs::remove_all(dir);
    verdict(ok, "C9", "deterministic output and lossless JSON");
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
