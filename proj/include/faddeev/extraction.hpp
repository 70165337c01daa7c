#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "faddeev/sanalysis.hpp"
#include "faddeev/solver.hpp"

namespace faddeev {

/// Centre-of-mass energy from the nucleon laboratory energy on the deuteron.
double elab_to_cm(double e_lab, double bound_energy);
double cm_to_elab(double e_cm, double bound_energy);

struct ExtractionOptions {
  double rho_window_lo = 0.70;  // fractions of rho_max
  double rho_window_hi = 0.95;
  double y_window_lo = 0.70;    // fractions of y_max
  double y_window_hi = 0.95;
  int y_samples = 48;
  int x_intervals = 160;         // composite 4-point Gauss on [0, x_max]
  double x_range_threshold = 1e-3;  // x_max: bound state below this fraction of its peak
  double b_range_threshold = 1e-2;  // interaction range b used for alpha_c
  double gate = 1e-2;               // |c3|/|c2| quality gate
  double breakup_gate = 5e-2;       // max|C| / max|T| quality gate
  double max_condition = 1e12;
  enum class Normalization { Flux, ReducedMass } normalization = Normalization::Flux;
};

/// Cartesian grid inscribed in the polar disc: x quadrature nodes on
/// [0, x_max] and y samples in the fit window.
struct CartesianGrid {
  std::vector<double> x, wx, y;
  double x_max = 0.0;
  double y_max = 0.0;
};

CartesianGrid inscribed_grid(const ScatteringProblem& problem, const ExtractionOptions& opts);

/// f_a(x, y) per channel, values(i, j) at (x[i], y[j]). Points outside the
/// disc raise std::domain_error.
std::vector<Eigen::MatrixXcd> resample_to_cartesian(const FaddeevSystem& sys, const Field& coeffs,
                                                    const std::vector<double>& x, const std::vector<double>& y);

/// g(y_j) = sum_i wx_i phi(x_i) f(x_i, y_j).
Eigen::VectorXcd project_bound(const Eigen::MatrixXcd& f, const BoundState& phi, const std::vector<double>& x,
                               const std::vector<double>& wx);

struct AsymptoticFit {
  cplx c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double residual = 0.0;
  double condition = 0.0;
  bool has_cylindrical = false;
  double c3_ratio() const { return std::abs(c2) > 0.0 ? std::abs(c3) / std::abs(c2) : 0.0; }
};

/// Least squares of g over {j(qy), h+(qy)} and, when `jfun`/`hfun` are
/// given, the projected cylindrical waves. Throws std::runtime_error when
/// the design matrix condition number exceeds `max_condition`.
AsymptoticFit fit_plane_wave(const std::vector<double>& y, const Eigen::VectorXcd& g, double q,
                             const Eigen::VectorXcd* jfun, const Eigen::VectorXcd* hfun, double max_condition = 1e12);

/// Projections onto phi of i(arctan(y/x)) J0(k rho) and i(...) H0+(k rho).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> projected_cylindrical(const CartesianGrid& grid, const BoundState& phi,
                                                                    double k,
                                                                    const std::function<double(double)>& incident);

struct BreakupAmplitude {
  std::vector<double> alpha;
  Eigen::VectorXcd T;  // coefficient of H0+(k rho)
  Eigen::VectorXcd C;  // coefficient of J0(k rho)
  double alpha_c = 0.0;
  /// max |C| / max |T| over alpha < alpha_c.
  double regular_ratio() const;
};

/// Per-alpha fit f(rho, alpha) - bound plane wave = C J0 + T H0+ over the
/// rho window. `fit` may be null for channels without the bound state.
BreakupAmplitude extract_breakup(const ScatteringProblem& problem, const FaddeevSystem& sys, const Field& coeffs,
                                 int channel, const AsymptoticFit* fit, double q, double k,
                                 const ExtractionOptions& opts);

/// Least squares e^{i nu pi/2} J_nu(k rho) ~ a J0(k rho) + b H0+(k rho) on
/// the breakup fit window; returns (a, a + 2b), the incoming and outgoing
/// amplitudes of the incident wave in the basis used for T.
std::pair<cplx, cplx> incident_window_fit(const ScatteringProblem& problem, const FaddeevSystem& sys, int nu, double k,
                                          const ExtractionOptions& opts);

/// Everything extracted from one solved column.
struct ColumnExtraction {
  std::string label;
  IncomingKind kind = IncomingKind::BoundPlaneWave;
  int incident_channel = 0;
  AsymptoticFit fit;
  std::vector<BreakupAmplitude> breakup;  // per channel, empty below breakup
  // Cylindrical incident wave on the fit window: incoming (J0) and outgoing
  // (H0+ plus half of J0) coefficients; both 1 for a bound plane wave.
  cplx incident_in = 1.0, incident_out = 1.0;
};

ColumnExtraction extract_column(const ScatteringProblem& problem, const FaddeevSystem& sys, const Field& coeffs,
                                const IncomingState& incoming, const ExtractionOptions& opts);

/// Alpha quadrature for the hybrid product on the alpha collocation grid,
/// with the recoupled transform built from the discrete kernel.
AlphaQuadrature alpha_quadrature(const FaddeevSystem& sys);

/// Stacked incident function of a cylindrical incoming state on the quadrature.
Eigen::VectorXcd incident_values(const ScatteringProblem& problem, const IncomingState& s, const AlphaQuadrature& quad);

struct ScatteringMatrix {
  double energy = 0.0;
  HybridMatrix S;
  HybridMatrix incident;
  std::vector<bool> solved;  // per incoming column (row of S)
  bool partial() const;
};

/// S = I + 2iT after removing the spurious regular bound-wave parts,
/// renormalized between (1+2) and (1+1+1) blocks by flux or by the reduced
/// mass ratio. Columns must be ordered nd, nnp:1, nnp:2, ...; missing ones
/// are left zero and flagged.
ScatteringMatrix build_smatrix(const ScatteringProblem& problem, const FaddeevSystem& sys, double energy,
                               const std::vector<std::optional<ColumnExtraction>>& columns,
                               const ExtractionOptions& opts);

/// Breakup amplitude in the form used for benchmark comparison, relative
/// to exp(i k rho) / sqrt(k rho).
Eigen::VectorXcd benchmark_breakup(const Eigen::VectorXcd& t);

}  // namespace faddeev
