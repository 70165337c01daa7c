#include "faddeev/twobody.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace faddeev {

double PairPotential::at_fm(double r) const {
  if (!(r > 0.0)) throw std::domain_error("potential evaluated at non-positive separation");
  double v = 0.0;
  for (const auto& t : terms) v += t.strength * std::exp(-t.range * r) / r;
  return v;
}

double PairPotential::operator()(double x) const {
  if (!(x > 0.0)) throw std::domain_error("potential evaluated at non-positive separation");
  return at_fm(x / tau_x);
}

BoundState::BoundState(double energy, int ell, SplineBasis1D basis, Eigen::VectorXd coeffs)
    : energy_(energy),
      ell_(ell),
      kappa_(std::sqrt(-energy)),
      basis_(std::move(basis)),
      coeffs_(std::move(coeffs)) {
  raw_ = basis_.raw_coefficients(coeffs_.cast<cplx>());
  // The Dirichlet wall distorts the last stretch; switch to exp(-kappa x) there.
  tail_start_ = 0.7 * basis_.upper();
  tail_value_ = basis_.evaluate_raw(raw_, tail_start_).real();
}

double BoundState::value(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= tail_start_) return tail_value_ * std::exp(-kappa_ * (x - tail_start_));
  return basis_.evaluate_raw(raw_, x).real();
}

double BoundState::derivative(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= tail_start_) return -kappa_ * value(x);
  return basis_.evaluate_raw(raw_, x, 1).real();
}

double BoundState::log_derivative(double x) const {
  if (x >= tail_start_) return -kappa_;
  const double v = value(x);
  if (std::abs(v) < 1e-300) return -kappa_;
  return derivative(x) / v;
}

int BoundState::nodes() const {
  int count = 0;
  double prev = 0.0;
  const int samples = 4000;
  for (int i = 1; i < samples; ++i) {
    const double v = value(tail_start_ * i / samples);
    if (std::abs(v) < 1e-10) continue;
    if (prev != 0.0 && (v > 0) != (prev > 0)) ++count;
    prev = v;
  }
  return count;
}

std::vector<BoundState> solve_bound_states(const PairPotential& v, int ell, const TwoBodyGrid& grid) {
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const double x_max = grid.r_max_fm * v.tau_x;
  auto basis = build_rho_grid(x_max, 2 * grid.intervals, grid.shape);
  basis.drop_raw(0);
  basis.drop_raw(basis.raw_size() - 2);

  const int nraw = basis.raw_size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nraw, nraw);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nraw, nraw);
  const auto [gx, gw] = gauss_legendre(8);
  const auto& knots = basis.knots();
  const double cent = ell * (ell + 1.0);
  for (int k = 0; k < basis.intervals(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
      const double w = 0.5 * (b - a) * gw[q];
      const auto f0 = basis.raw_local(k, x, 0);
      const auto f1 = basis.raw_local(k, x, 1);
      const double pot = v(x) + cent / (x * x);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          h(2 * k + i, 2 * k + j) += w * (f1[i] * f1[j] + pot * f0[i] * f0[j]);
          s(2 * k + i, 2 * k + j) += w * f0[i] * f0[j];
        }
    }
  }
  // Restrict to retained functions (all single raw terms here).
  std::vector<int> keep;
  for (const auto& f : basis.functions()) keep.push_back(f.front().raw);
  const int n = static_cast<int>(keep.size());
  Eigen::MatrixXd hr(n, n), sr(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      hr(i, j) = h(keep[i], keep[j]);
      sr(i, j) = s(keep[i], keep[j]);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(hr, sr);
  if (es.info() != Eigen::Success) throw std::runtime_error("two-body eigensolve failed");

  std::vector<BoundState> states;
  for (int i = 0; i < n; ++i) {
    const double e = es.eigenvalues()(i);
    if (!(e < 0.0)) break;
    Eigen::VectorXd c = es.eigenvectors().col(i);
    c /= std::sqrt(c.dot(sr * c));
    // Sign convention: positive slope at the origin side.
    BoundState probe(e, ell, basis, c);
    const double first = probe.value(0.01 * x_max);
    if (first < 0.0) c = -c;
    states.emplace_back(e, ell, basis, c);
  }
  return states;
}

double potential_range(const BoundState& state, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  const int samples = 20000;
  const double xm = state.x_max();
  std::vector<double> xs(samples + 1), vs(samples + 1);
  double vmax = 0.0;
  for (int i = 0; i <= samples; ++i) {
    xs[i] = xm * i / samples;
    vs[i] = std::abs(state.value(xs[i]));
    vmax = std::max(vmax, vs[i]);
  }
  const double cut = threshold * vmax;
  for (int i = samples; i >= 0; --i)
    if (vs[i] >= cut) return xs[i];
  return 0.0;
}

std::pair<double, double> kinetic_and_potential(const BoundState& state, const PairPotential& v) {
  const auto [gx, gw] = gauss_legendre(8);
  const auto& knots = state.basis().knots();
  const double cent = state.ell() * (state.ell() + 1.0);
  double t = 0.0, pot = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
      const double w = 0.5 * (b - a) * gw[q];
      const double f = state.basis().evaluate(state.coefficients().cast<cplx>(), x).real();
      const double d = state.basis().evaluate(state.coefficients().cast<cplx>(), x, 1).real();
      t += w * (d * d + cent / (x * x) * f * f);
      pot += w * v(x) * f * f;
    }
  }
  return {t, pot};
}

AlphaGridHint alpha_grid_hint(const BoundState& state, const PairPotential& v, double threshold) {
  AlphaGridHint hint;
  const double e = state.energy();
  const double cent = state.ell() * (state.ell() + 1.0);
  // phi'' = U phi with U = V + l(l+1)/x^2 - e, so the fourth derivative is
  // (U^2 + U'') phi + 2 U' phi'. A mesh density proportional to its fifth
  // root equidistributes the cubic interpolation error.
  const auto u = [v, e, cent](double x) { return v(x) + cent / (x * x) - e; };
  hint.resolution = [u, state](double x) {
    const double h = 1e-4 * std::max(x, 1e-3);
    const double u0 = u(x), up = u(x + h), um = u(x - h);
    const double d1 = (up - um) / (2.0 * h), d2 = (up - 2.0 * u0 + um) / (h * h);
    const double d4 = (u0 * u0 + d2) * state.value(x) + 2.0 * d1 * state.derivative(x);
    return std::pow(std::abs(d4), 0.2);
  };
  hint.support = potential_range(state, threshold);
  return hint;
}

}  // namespace faddeev
