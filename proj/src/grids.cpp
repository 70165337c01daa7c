#include "faddeev/grids.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace faddeev {

namespace {

// Solve for the ratio r such that first_step * (r^ng - 1)/(r - 1) + (n - ng) * first_step * r^ng = length.
double geometric_ratio(double first_step, int ng, int n, double length) {
  const auto total = [&](double r) {
    const double top = std::pow(r, ng);
    const double geo = std::abs(r - 1.0) < 1e-12 ? ng : (top - 1.0) / (r - 1.0);
    return first_step * (geo + (n - ng) * top);
  };
  if (total(1.0) >= length) return 1.0;
  double lo = 1.0, hi = 2.0;
  while (total(hi) < length) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < length ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> equidistribute(const std::function<double(double)>& density, double a, double b,
                                   int intervals) {
  // Cumulative integral on a fine uniform mesh, then inverse interpolation.
  const int fine = 20000;
  std::vector<double> t(fine + 1), cum(fine + 1, 0.0);
  for (int i = 0; i <= fine; ++i) t[i] = a + (b - a) * i / fine;
  for (int i = 1; i <= fine; ++i) cum[i] = cum[i - 1] + 0.5 * (density(t[i - 1]) + density(t[i])) * (t[i] - t[i - 1]);
  std::vector<double> knots(intervals + 1);
  knots.front() = a;
  knots.back() = b;
  int j = 0;
  for (int k = 1; k < intervals; ++k) {
    const double target = cum.back() * k / intervals;
    while (cum[j + 1] < target) ++j;
    const double f = (target - cum[j]) / (cum[j + 1] - cum[j]);
    knots[k] = t[j] + f * (t[j + 1] - t[j]);
  }
  return knots;
}

}  // namespace

SplineBasis1D build_rho_grid(double rho_max, int n_rho, const RhoGridShape& shape) {
  if (!(rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");
  if (n_rho < 8 || n_rho % 2 != 0) throw std::invalid_argument("n_rho must be even and >= 8");
  const int n = n_rho / 2;
  const int ng = std::clamp(static_cast<int>(std::lround(shape.geometric_fraction * n)), 1, n);
  const double h0 = shape.first_step_fraction * rho_max / n;
  const double r = geometric_ratio(h0, ng, n, rho_max);
  std::vector<double> knots(n + 1, 0.0);
  double h = h0;
  for (int i = 0; i < n; ++i) {
    knots[i + 1] = knots[i] + h;
    if (i + 1 < ng) h *= r;
    else if (i + 1 == ng) h = h0 * std::pow(r, ng);
  }
  // Absorb the bisection residue by a uniform rescale.
  const double scale = rho_max / knots.back();
  for (auto& k : knots) k *= scale;
  knots.back() = rho_max;
  return SplineBasis1D(std::move(knots));
}

SplineBasis1D build_alpha_grid(int n_alpha, const std::optional<AlphaGridHint>& hint, double rho_max,
                               const AlphaGridShape& shape) {
  if (n_alpha < 16 || n_alpha % 2 != 0) throw std::invalid_argument("n_alpha must be even and >= 16");
  const int n = n_alpha / 2;
  const double half_pi = std::numbers::pi / 2.0;
  if (!hint) {
    std::vector<double> knots(n + 1);
    for (int i = 0; i <= n; ++i) knots[i] = half_pi * i / n;
    knots.back() = half_pi;
    return SplineBasis1D(std::move(knots));
  }
  if (!(rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");

  // Mesh density wanted by the pair state along x = rho_max cos(alpha),
  // smoothed over a few local mesh widths and switched off beyond its support.
  const auto& kloc = hint->resolution;
  const double xs = hint->support;
  const auto pair_density = [&](double alpha) {
    // The hard core makes the density singular at x = 0; stop following it there.
    const double x = std::max(rho_max * std::cos(alpha), 2e-3 * xs);
    if (x > xs) return 0.0;
    const double k = kloc(x);
    const double window = shape.smoothing / std::max(k, 1e-12);
    double acc = 0.0;
    const int taps = 9;
    for (int i = 0; i < taps; ++i) {
      const double xx = std::clamp(x + window * (i - taps / 2) / taps, 0.5 * x, xs);
      acc += kloc(xx);
    }
    return acc / taps * rho_max * std::sin(alpha);
  };
  // Weight of the pair part relative to a uniform floor.
  double pair_total = 0.0;
  const int fine = 4000;
  for (int i = 0; i < fine; ++i) pair_total += pair_density(half_pi * (i + 0.5) / fine) * half_pi / fine;
  const double uf = std::clamp(shape.uniform_fraction, 0.05, 1.0);
  const double floor_density = pair_total > 0.0 ? pair_total * uf / ((1.0 - uf) * half_pi) : 1.0;
  auto knots = equidistribute([&](double a) { return floor_density + pair_density(a); }, 0.0, half_pi, n);
  return SplineBasis1D(std::move(knots));
}

SplineBasis1D apply_alpha_dirichlet(SplineBasis1D basis) {
  basis.drop_raw(0);
  basis.drop_raw(basis.raw_size() - 2);
  return basis;
}

SplineBasis1D apply_rho_boundary(SplineBasis1D basis, cplx log_derivative) {
  if (!std::isfinite(log_derivative.real()) || !std::isfinite(log_derivative.imag()))
    throw std::invalid_argument("logarithmic derivative must be finite");
  basis.drop_raw(0);
  basis.merge_tail(log_derivative);
  return basis;
}

std::string knots_csv(const SplineBasis1D& basis) {
  std::ostringstream os;
  os.precision(17);
  os << "index,knot\n";
  for (std::size_t i = 0; i < basis.knots().size(); ++i) os << i << ',' << basis.knots()[i] << '\n';
  return os.str();
}

}  // namespace faddeev
