#include "wg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wg/exceptions.hpp"
#include "wg/interp.hpp"
#include "wg/mesh.hpp"
#include "wg/ppr.hpp"
#include "wg/problems.hpp"
#include "wg/wg_core.hpp"

namespace wg {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

Problem problem_by_name(const std::string& name) {
  if (name == "sine") return sine_problem();
  if (name == "unit_load") return unit_load_problem();
  throw ConfigError("unknown problem: " + name);
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.problem != "sine" && cfg.problem != "unit_load")
    throw ConfigError("unknown problem: " + cfg.problem);
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (cfg.alphas.empty()) throw ConfigError("alpha list must not be empty");
  for (double a : cfg.alphas)
    if (!(a >= 1.0)) throw ConfigError("alpha must be >= 1");
  if (cfg.mesh != "uniform" && cfg.mesh != "perturbed")
    throw ConfigError("unknown mesh family: " + cfg.mesh);
  if (cfg.levels.empty()) throw ConfigError("level list must not be empty");
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    int n = cfg.levels[i];
    if (n < 8 || n % 8 != 0 || !is_power_of_two(n / 8))
      throw ConfigError("level " + std::to_string(n) +
                        " is not a power-of-two multiple of 8");
    if (i > 0 && cfg.levels[i] <= cfg.levels[i - 1])
      throw ConfigError("levels must be strictly increasing");
  }
  if (cfg.h_mode != "per-element" && cfg.h_mode != "global")
    throw ConfigError("unknown h-mode: " + cfg.h_mode);
  if (cfg.format != "csv" && cfg.format != "md")
    throw ConfigError("unknown format: " + cfg.format);
}

std::vector<ConvergenceReport> run_convergence(const RunConfig& cfg) {
  validate_config(cfg);
  const Problem prob = problem_by_name(cfg.problem);
  const StabilizerScale scale = cfg.h_mode == "global"
                                    ? StabilizerScale::GlobalMax
                                    : StabilizerScale::ElementDiagonal;
  std::vector<ConvergenceReport> reports;
  reports.reserve(cfg.alphas.size());
  for (double alpha : cfg.alphas) {
    ConvergenceReport rep;
    rep.alpha = alpha;
    for (int n : cfg.levels) {
      TensorMesh m;
      if (cfg.mesh == "uniform") {
        m = build_uniform(n, cfg.k);
      } else {
        int level = 0;
        for (int v = n / 4; v > 1; v /= 2) ++level;
        m = build_perturbed(level, cfg.k);
      }
      WGSpace s = make_space(m, alpha, scale);
      WeakFunction u_h;
      try {
        u_h = solve_wg(s, prob.f);
      } catch (const SolverFailureError& e) {
        throw SolverFailureError("alpha=" + fmt("%g", alpha) +
                                     " N=" + std::to_string(n) + ": " +
                                     e.what(),
                                 e.residual);
      }
      LevelResult lr;
      lr.n = n;
      lr.h = m.h();
      lr.energy_err = supercloseness_error(s, prob.field(), u_h);
      RecoveredGradient g = recover(s, u_h);
      lr.grad_err = recovered_gradient_error(s, prob.grad_u, g);
      rep.levels.push_back(lr);
    }
    // Orders use the actual h ratio so non-consecutive level lists stay
    // meaningful; for doubling sequences this is the usual log2 ratio.
    for (std::size_t i = 1; i < rep.levels.size(); ++i) {
      double hr = rep.levels[i - 1].h / rep.levels[i].h;
      auto order = [hr](double e0, double e1) {
        if (!(e0 > 0.0) || !(e1 > 0.0)) return std::nan("");
        return std::log(e0 / e1) / std::log(hr);
      };
      rep.energy_orders.push_back(
          order(rep.levels[i - 1].energy_err, rep.levels[i].energy_err));
      rep.grad_orders.push_back(
          order(rep.levels[i - 1].grad_err, rep.levels[i].grad_err));
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace {

std::string order_cell(const std::vector<double>& orders, std::size_t row,
                       const std::string& empty) {
  if (row == 0) return empty;
  double v = orders[row - 1];
  if (std::isnan(v)) return empty;
  return fmt("%.4f", v);
}

void render_csv_block(std::ostringstream& os, const ConvergenceReport& rep) {
  os << "N,h,energy_err,energy_order,grad_err,grad_order\n";
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const LevelResult& lr = rep.levels[i];
    os << lr.n << ',' << fmt("%.4e", lr.h) << ',' << fmt("%.4e", lr.energy_err)
       << ',' << order_cell(rep.energy_orders, i, "") << ','
       << fmt("%.4e", lr.grad_err) << ','
       << order_cell(rep.grad_orders, i, "") << '\n';
  }
}

void render_md_block(std::ostringstream& os, const ConvergenceReport& rep) {
  os << "## alpha = " << fmt("%g", rep.alpha) << "\n\n";
  os << "| N | h | energy err | order | grad err | order |\n";
  os << "|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const LevelResult& lr = rep.levels[i];
    os << "| " << lr.n << " | " << fmt("%.4e", lr.h) << " | "
       << fmt("%.4e", lr.energy_err) << " | "
       << order_cell(rep.energy_orders, i, "--") << " | "
       << fmt("%.4e", lr.grad_err) << " | "
       << order_cell(rep.grad_orders, i, "--") << " |\n";
  }
}

}  // namespace

std::string render_table(const ConvergenceReport& report,
                         const std::string& format) {
  std::ostringstream os;
  if (format == "md")
    render_md_block(os, report);
  else if (format == "csv")
    render_csv_block(os, report);
  else
    throw ConfigError("unknown format: " + format);
  return os.str();
}

std::string render_report_set(const std::vector<ConvergenceReport>& reports,
                              const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    if (reports.size() == 1) {
      render_csv_block(os, reports[0]);
    } else {
      for (std::size_t r = 0; r < reports.size(); ++r) {
        if (r > 0) os << '\n';
        os << "# alpha=" << fmt("%g", reports[r].alpha) << '\n';
        render_csv_block(os, reports[r]);
      }
    }
  } else if (format == "md") {
    for (std::size_t r = 0; r < reports.size(); ++r) {
      if (r > 0) os << '\n';
      render_md_block(os, reports[r]);
    }
  } else {
    throw ConfigError("unknown format: " + format);
  }
  return os.str();
}

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Convergence study driver for a weak Galerkin Poisson solver"};
  app.add_option("--problem", cfg.problem, "Benchmark problem: sine|unit_load")
      ->capture_default_str();
  app.add_option("--k", cfg.k, "Polynomial degree")->capture_default_str();
  app.add_option("--alpha", cfg.alphas,
                 "Stabilizer exponents (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--mesh", cfg.mesh, "Mesh family: uniform|perturbed")
      ->capture_default_str();
  app.add_option("--levels", cfg.levels,
                 "Cells per direction, comma separated (8,16,...)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--h-mode", cfg.h_mode,
                 "Stabilizer length scale: per-element|global")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output path (default: stdout)");
  app.add_option("--format", cfg.format, "Output format: csv|md")
      ->capture_default_str();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    std::vector<ConvergenceReport> reports = run_convergence(cfg);
    std::string text = render_report_set(reports, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot open output file: " + cfg.out);
      f << text;
      if (!f) throw ConfigError("failed writing output file: " + cfg.out);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const SolverFailureError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wg
