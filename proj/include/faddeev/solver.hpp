#pragma once

#include <optional>
#include <string>
#include <vector>

#include "faddeev/channels.hpp"
#include "faddeev/gmres.hpp"
#include "faddeev/grids.hpp"
#include "faddeev/kinematics.hpp"
#include "faddeev/operators.hpp"
#include "faddeev/preconditioner.hpp"
#include "faddeev/twobody.hpp"

namespace faddeev {

/// Physical input shared by every energy: masses, channels, one potential
/// per channel, and which channel carries the two-body bound state.
struct Physics {
  MassSystem masses;
  ChannelSet channels;
  std::vector<PairPotential> potentials;
  int bound_channel = 1;
  TwoBodyGrid two_body;

  /// Three nucleons with the MT I-III potentials in the doublet channels.
  static Physics nd_benchmark();
};

struct GridSpec {
  double rho_extent_fm = 60.0;  // rho_max / sqrt(tau_x tau_y)
  int n_rho = 128;
  int n_alpha = 64;
  RhoGridShape rho_shape;
  AlphaGridShape alpha_shape;
};

enum class IncomingKind { BoundPlaneWave, CylindricalWave };

/// Incoming state. Bound plane wave: phi_d(x) j(q y) in the bound channel.
/// Cylindrical wave: scale * D_nu(alpha) e^{i nu pi/2} J_nu(k rho) in
/// `channel`, which tends to i(alpha) J_0(k rho) with i = scale * D_nu.
struct IncomingState {
  IncomingKind kind = IncomingKind::BoundPlaneWave;
  int channel = 0;
  double wavenumber = 0.0;  // q or k, mass-scaled
  int nu = 2;               // Delves order for the cylindrical case
  double scale = 1.0;
  std::string label;

  bool is_zero() const { return scale == 0.0; }
};

struct SolveResult {
  Field coefficients;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  bool converged = false;
};

struct SolverOptions {
  GmresOptions gmres;
  bool precondition = true;
  bool throw_on_failure = true;
};

/// Everything that does not depend on the energy: the bound state, the
/// grids and rho_max.
class ScatteringProblem {
 public:
  ScatteringProblem(Physics physics, GridSpec grid);

  const Physics& physics() const { return physics_; }
  const GridSpec& grid() const { return grid_; }
  const BoundState& bound_state() const { return *bound_; }
  double bound_energy() const { return bound_->energy(); }
  double rho_max() const { return rho_max_; }
  double tau_x() const { return tau_.tau_x; }
  double tau_y() const { return tau_.tau_y; }
  const SplineBasis1D& rho_knots() const { return rho_knots_; }
  const SplineBasis1D& alpha_basis() const { return alpha_basis_; }
  /// Kinematic rotation angle between arrangements.
  double rotation_angle() const { return phi_; }

  /// Per-channel boundary data at rho_max for energy E (E != 0).
  std::vector<RadialBoundary> boundary(double energy) const;
  FaddeevSystem system(double energy) const;

  /// Closed-channel requests throw std::domain_error.
  IncomingState nd_incoming(double energy) const;
  /// n-th (1+1+1) incoming state, n = 1, 2, ..., using Delves order 2n.
  IncomingState cylindrical_incoming(double energy, int n) const;
  /// Flux normalization of sin(nu alpha)-type incident functions under the
  /// hybrid inner product, for the channel they are placed in.
  double incident_scale(int nu, int channel) const;

  /// chi(rho, alpha) per channel.
  cplx incoming_value(const IncomingState& s, int channel, double rho, double alpha) const;

  Field build_rhs(const FaddeevSystem& sys, const IncomingState& s) const;

 private:
  Physics physics_;
  GridSpec grid_;
  std::optional<BoundState> bound_;
  TauFactors tau_;
  double rho_max_ = 0.0;
  double phi_ = 0.0;
  SplineBasis1D rho_knots_;
  SplineBasis1D alpha_basis_;
};

/// (T + V + K - E) x = rhs by right-preconditioned GMRES.
SolveResult solve(const FaddeevSystem& sys, const Field& rhs, const SolverOptions& opts,
                  const KroneckerPreconditioner* pc = nullptr, const Field* guess = nullptr);

}  // namespace faddeev
