#pragma once

#include <functional>
#include <optional>
#include <string>

#include "faddeev/spline.hpp"

namespace faddeev {

/// Knot placement for the hyperradius: geometric spacing from the origin,
/// switching to constant spacing once the geometric sequence reaches it.
struct RhoGridShape {
  double first_step_fraction = 0.1;  // first spacing / (rho_max / intervals)
  double geometric_fraction = 0.25;  // fraction of intervals in the geometric part
};

/// n_rho collocation points (even, >= 8) on [0, rho_max]; no boundary
/// conditions applied yet.
SplineBasis1D build_rho_grid(double rho_max, int n_rho, const RhoGridShape& shape = {});

/// Information about the least-bound pair state used to concentrate alpha
/// knots near pi/2, where the pair separation x = rho_max cos(alpha) is small.
struct AlphaGridHint {
  std::function<double(double)> resolution;  // wanted mesh density along x (per unit mass-scaled x)
  double support = 0.0;                      // x beyond which the state is negligible
};

struct AlphaGridShape {
  double uniform_fraction = 0.25;  // share of intervals spread uniformly over [0, pi/2]
  double smoothing = 4.0;         // smoothing width, in local mesh widths
};

/// n_alpha collocation points (even, >= 16) on [0, pi/2]. Without a hint
/// the grid is uniform.
SplineBasis1D build_alpha_grid(int n_alpha, const std::optional<AlphaGridHint>& hint, double rho_max,
                               const AlphaGridShape& shape = {});

/// Zero value at both ends (drop the value functions at 0 and pi/2).
SplineBasis1D apply_alpha_dirichlet(SplineBasis1D basis);

/// Regularity at rho = 0 (drop the value function there) and merge of the
/// last two functions into one with the given logarithmic derivative.
SplineBasis1D apply_rho_boundary(SplineBasis1D basis, cplx log_derivative);

/// Knots as CSV ("index,knot") for debugging.
std::string knots_csv(const SplineBasis1D& basis);

}  // namespace faddeev
