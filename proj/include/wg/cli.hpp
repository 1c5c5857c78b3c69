#pragma once
#include <string>
#include <vector>

#include "wg/errors.hpp"

namespace wg {

// Settings for a convergence sweep. Levels are cell counts per direction
// (N = 8, 16, 32, ...); for the perturbed family N is mapped to the
// refinement level of the fixed 4x4 base layout.
struct RunConfig {
  std::string problem = "sine";  // sine | unit_load
  int k = 1;
  std::vector<double> alphas = {1.0};
  std::string mesh = "uniform";  // uniform | perturbed
  std::vector<int> levels = {8, 16, 32, 64, 128};
  std::string h_mode = "per-element";  // per-element | global
  std::string out;                     // empty -> stdout
  std::string format = "csv";          // csv | md
};

// Throws ConfigError if any setting is out of contract.
void validate_config(const RunConfig& cfg);

// Runs the sweep; one report per alpha, in config order. A solver failure
// aborts the sweep with the failing (alpha, N) identified in the message.
std::vector<ConvergenceReport> run_convergence(const RunConfig& cfg);

// Renders one report. CSV columns: N,h,energy_err,energy_order,grad_err,
// grad_order; errors use 5 significant digits (scientific), orders 4
// decimals; the first order cell is empty (csv) or "--" (md).
std::string render_table(const ConvergenceReport& report,
                         const std::string& format);

// Renders a full sweep: one block per alpha ("# alpha=..." comment lines
// in csv, headings in md). A single-alpha csv is rendered plain.
std::string render_report_set(const std::vector<ConvergenceReport>& reports,
                              const std::string& format);

// Full command-line entry point. Returns the process exit code:
// 0 success, 1 configuration error, 2 solver failure.
int run_cli(int argc, const char* const* argv);

}  // namespace wg
