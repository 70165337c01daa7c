#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "faddeev/extraction.hpp"
#include "faddeev/solver.hpp"

namespace faddeev {

/// Configuration problem tied to a line of the source text (0 when the
/// problem is not local to one line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& origin, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// "nd" or "nnp:n" with n >= 1.
struct IncomingSelector {
  bool bound = true;
  int n = 0;

  static IncomingSelector parse(const std::string& text);
  std::string str() const;
};

struct ScanRange {
  double from = 0.0, to = 0.0, step = 0.0;
  bool lab = false;  // energies given as nucleon laboratory energies
  bool active() const { return step != 0.0; }
  /// from, from + step, ... up to and including `to` (within step / 1e6).
  std::vector<double> points() const;
};

struct RunConfig {
  double hbar2_over_m = 41.47;
  std::vector<double> mass_ratios{1.0, 1.0, 1.0};
  Physics physics = Physics::nd_benchmark();
  GridSpec grid;
  SolverOptions solver;
  ExtractionOptions extraction;

  std::vector<double> energies;      // centre-of-mass, MeV
  std::vector<double> lab_energies;  // nucleon lab energies, MeV
  ScanRange scan;
  std::vector<IncomingSelector> incoming{IncomingSelector{}};
  std::string output = "out";
  int workers = 1;  // concurrent energies in a scan
};

/// Parse the sectioned key = value format; '#' and ';' start comments.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every key with its resolved value, in a form parse_config reads back
/// to the same configuration.
std::string render_config(const RunConfig& cfg);

}  // namespace faddeev
