#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "faddeev/config.hpp"
#include "faddeev/io.hpp"

namespace faddeev {

/// One solved incoming column at one energy.
struct ColumnRun {
  IncomingSelector selector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> history;
  std::optional<ColumnExtraction> extraction;
  std::string error;  // empty on success
};

struct EnergyRun {
  double energy = 0.0;  // centre-of-mass, MeV
  double energy_lab = 0.0;
  std::vector<ColumnRun> columns;
  std::optional<ScatteringMatrix> smatrix;
  std::optional<DefectReport> defects;  // only for complete matrices
  std::string error;                    // failure before any column was solved
  bool ok() const { return error.empty() && smatrix.has_value(); }
};

/// Solve every selected column at `energy`, extract, assemble S. Column
/// failures are recorded in the result rather than thrown.
EnergyRun run_energy(const ScatteringProblem& problem, const RunConfig& cfg, double energy);

/// Solver diagnostics, one JSON object per column.
std::vector<json> diagnostics(const EnergyRun& run);

/// Energies a scan covers: `energies`, then `lab_energies` converted, then
/// the scan range, in that order.
std::vector<double> scan_energies(const RunConfig& cfg, double bound_energy);

// Subcommands. Each returns the process exit code and writes its files
// below cfg.output together with the resolved configuration.
int cmd_bound(const RunConfig& cfg, std::ostream& log);
int cmd_scatter(const RunConfig& cfg, std::optional<double> energy, std::optional<double> lab_energy,
                std::ostream& log);
int cmd_scan(const RunConfig& cfg, std::ostream& log);
int cmd_defects(const std::vector<std::filesystem::path>& files, const std::filesystem::path& out, std::ostream& log);

}  // namespace faddeev
