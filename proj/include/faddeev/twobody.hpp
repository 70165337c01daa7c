#pragma once

#include <optional>
#include <vector>

#include "faddeev/grids.hpp"
#include "faddeev/spline.hpp"

namespace faddeev {

struct YukawaTerm {
  double strength;  // MeV fm
  double range;     // fm^-1
};

/// Sum of Yukawa terms, V(r) = sum_i s_i exp(-mu_i r) / r. Evaluated at the
/// mass-scaled separation x, with r = x / tau_x.
struct PairPotential {
  std::vector<YukawaTerm> terms;
  double tau_x = 1.0;

  double at_fm(double r) const;
  double operator()(double x) const;
};

struct TwoBodyGrid {
  double r_max_fm = 60.0;
  int intervals = 300;
  RhoGridShape shape{0.1, 0.3};
};

class BoundState {
 public:
  BoundState(double energy, int ell, SplineBasis1D basis, Eigen::VectorXd coeffs);

  double energy() const { return energy_; }
  int ell() const { return ell_; }
  double kappa() const { return kappa_; }
  const SplineBasis1D& basis() const { return basis_; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  double x_max() const { return basis_.upper(); }

  /// phi(x); beyond the tail start the analytic exponential decay is used.
  double value(double x) const;
  double derivative(double x) const;
  /// phi'/phi, falling back to -kappa where phi underflows.
  double log_derivative(double x) const;
  int nodes() const;

 private:
  double energy_;
  int ell_;
  double kappa_;
  SplineBasis1D basis_;
  Eigen::VectorXd coeffs_;
  Eigen::VectorXcd raw_;
  double tail_start_;
  double tail_value_;
};

/// All negative-energy states of -d2/dx2 + l(l+1)/x2 + V, ordered by energy
/// (node count). Galerkin discretisation on cubic Hermite splines, Dirichlet
/// at both ends.
std::vector<BoundState> solve_bound_states(const PairPotential& v, int ell, const TwoBodyGrid& grid);

/// Smallest x beyond which |phi| < threshold * max |phi|.
double potential_range(const BoundState& state, double threshold);

/// Expectation values <T> and <V> on the state (for the virial check).
std::pair<double, double> kinetic_and_potential(const BoundState& state, const PairPotential& v);

/// Mesh density |phi''''|^(1/5) of the state along x and its support,
/// for concentrating alpha knots.
AlphaGridHint alpha_grid_hint(const BoundState& state, const PairPotential& v, double threshold = 1e-4);

}  // namespace faddeev
