#include "faddeev/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "faddeev/specfun.hpp"

namespace faddeev {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Physics Physics::nd_benchmark() {
  Physics p;
  p.masses = MassSystem::equal(41.47);
  p.channels = ChannelSet::nd_doublet();
  const double tx = tau_factors(p.masses, 1).tau_x;
  p.potentials = {PairPotential{{{1438.72, 3.11}, {-513.968, 1.55}}, tx},
                  PairPotential{{{1438.72, 3.11}, {-626.885, 1.55}}, tx}};
  p.bound_channel = p.channels.index_of("triplet");
  return p;
}

ScatteringProblem::ScatteringProblem(Physics physics, GridSpec grid)
    : physics_(std::move(physics)), grid_(std::move(grid)) {
  const auto& pot = physics_.potentials.at(physics_.bound_channel);
  auto states = solve_bound_states(pot, physics_.channels.channels[physics_.bound_channel].ell, physics_.two_body);
  if (states.empty()) throw std::runtime_error("no two-body bound state in the bound channel");
  bound_.emplace(std::move(states.front()));
  tau_ = tau_factors(physics_.masses, 1);
  rho_max_ = grid_.rho_extent_fm * std::sqrt(tau_.tau_x * tau_.tau_y);
  rho_knots_ = build_rho_grid(rho_max_, grid_.n_rho, grid_.rho_shape);
  alpha_basis_ = apply_alpha_dirichlet(
      build_alpha_grid(grid_.n_alpha, alpha_grid_hint(*bound_, pot), rho_max_, grid_.alpha_shape));
  phi_ = faddeev::rotation_angle(physics_.masses, 1, 2);
}

std::vector<RadialBoundary> ScatteringProblem::boundary(double energy) const {
  if (energy == 0.0) throw std::domain_error("E = 0 (breakup threshold) is not supported");
  const int n = physics_.channels.size();
  std::vector<RadialBoundary> out(n);
  if (energy > 0.0) {
    const double k = std::sqrt(energy);
    const cplx l = k * hankel_plus_prime(0.0, k * rho_max_) / hankel_plus(0.0, k * rho_max_);
    for (auto& b : out) b.preconditioned = l;
    return out;
  }
  for (auto& b : out) b.preconditioned = -std::sqrt(-energy);
  const double e_open = energy - bound_->energy();
  if (e_open > 0.0) {
    const double q = std::sqrt(e_open);
    auto& b = out[physics_.bound_channel];
    b.preconditioned = cplx(0.0, q);
    for (double a : alpha_basis_.collocation_points())
      b.per_alpha.push_back(std::cos(a) * bound_->log_derivative(rho_max_ * std::cos(a)) +
                            cplx(0.0, q * std::sin(a)));
  }
  return out;
}

FaddeevSystem ScatteringProblem::system(double energy) const {
  FaddeevSystem::Setup s;
  s.rho_knots = rho_knots_;
  s.alpha = alpha_basis_;
  s.channels = physics_.channels;
  s.potentials = physics_.potentials;
  s.masses = physics_.masses;
  s.energy = energy;
  s.boundary = boundary(energy);
  return FaddeevSystem(std::move(s));
}

IncomingState ScatteringProblem::nd_incoming(double energy) const {
  const double q2 = energy - bound_->energy();
  if (!(q2 > 0.0)) {
    std::ostringstream msg;
    msg << "bound plane wave channel is closed at E = " << energy << " MeV (threshold " << bound_->energy() << ")";
    throw std::domain_error(msg.str());
  }
  IncomingState s;
  s.kind = IncomingKind::BoundPlaneWave;
  s.channel = physics_.bound_channel;
  s.wavenumber = std::sqrt(q2);
  s.label = "nd";
  return s;
}

double ScatteringProblem::incident_scale(int nu, int channel) const {
  const double norm2 = 1.0 + 2.0 * physics_.channels.w(channel, channel) * delves_beta(nu, phi_);
  if (!(norm2 > 0.0)) throw std::domain_error("incident function has non-positive flux");
  return 1.0 / std::sqrt(norm2);
}

IncomingState ScatteringProblem::cylindrical_incoming(double energy, int n) const {
  if (!(energy > 0.0)) throw std::domain_error("three-body channel is closed below breakup");
  if (n < 1) throw std::invalid_argument("incoming three-body state index starts at 1");
  IncomingState s;
  s.kind = IncomingKind::CylindricalWave;
  s.channel = (n - 1) % physics_.channels.size();
  s.wavenumber = std::sqrt(energy);
  s.nu = 2 * n;
  s.scale = incident_scale(s.nu, s.channel);
  s.label = "nnp:" + std::to_string(n);
  return s;
}

cplx ScatteringProblem::incoming_value(const IncomingState& s, int channel, double rho, double alpha) const {
  if (channel != s.channel || s.is_zero()) return 0.0;
  if (s.kind == IncomingKind::BoundPlaneWave)
    return s.scale * bound_->value(rho * std::cos(alpha)) * riccati_j(0, s.wavenumber * rho * std::sin(alpha));
  const cplx phase = std::polar(1.0, s.nu * kPi / 2.0);
  return s.scale * delves({0, 0, s.nu / 2 - 1}, alpha) * phase * bessel_J(s.nu, s.wavenumber * rho);
}

Field ScatteringProblem::build_rhs(const FaddeevSystem& sys, const IncomingState& s) const {
  const int na = sys.n_alpha(), nr = sys.n_rho(), nc = sys.n_channels();
  const auto& rho = sys.rho_points();
  const auto& alpha = sys.alpha_points();
  const auto& vt = sys.potential_table();
  const auto& w = physics_.channels.w;
  const double mult = sys.setup().arrangement_multiplicity;
  Field rhs = Field::Zero(sys.n_block(), nr);
  if (s.is_zero()) return rhs;

  if (s.kind == IncomingKind::CylindricalWave) {
    const double beta = delves_beta(s.nu, phi_);
    for (int a = 0; a < nc; ++a) {
      const double weight = (a == s.channel ? 1.0 : 0.0) + mult * w(a, s.channel) * beta;
      for (int p = 0; p < nr; ++p)
        for (int q = 0; q < na; ++q)
          rhs(a * na + q, p) = -vt(a * na + q, p) * weight * incoming_value(s, s.channel, rho[p], alpha[q]);
    }
    return rhs;
  }

  // Bound plane wave: -K chi with the transform integrated directly,
  // composite Gauss on the alpha knots inside each window.
  const auto [gx, gw] = gauss_legendre(8);
  const auto& knots = alpha_basis_.knots();
  const double pref = 1.0 / std::sin(2.0 * phi_);
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < nr; ++p) {
    for (int q = 0; q < na; ++q) {
      const auto win = jacobi_window(phi_, alpha[q]);
      cplx sum = 0.0;
      double lo = win.lo;
      std::size_t k = 0;
      while (k < knots.size() && knots[k] <= lo) ++k;
      while (lo < win.hi) {
        const double hi = (k < knots.size()) ? std::min(knots[k], win.hi) : win.hi;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t g = 0; g < gx.size(); ++g)
          sum += gw[g] * half * incoming_value(s, s.channel, rho[p], mid + half * gx[g]);
        lo = hi;
        ++k;
      }
      const cplx jchi = pref * sum;
      for (int a = 0; a < nc; ++a) rhs(a * na + q, p) = -vt(a * na + q, p) * mult * w(a, s.channel) * jchi;
    }
  }
  return rhs;
}

SolveResult solve(const FaddeevSystem& sys, const Field& rhs, const SolverOptions& opts,
                  const KroneckerPreconditioner* pc, const Field* guess) {
  std::optional<KroneckerPreconditioner> own;
  if (opts.precondition && !pc) {
    own.emplace(sys);
    pc = &*own;
  }
  const LinearMap op = [&](const Eigen::VectorXcd& v) { return sys.flatten(sys.apply(sys.unflatten(v))); };
  LinearMap m;
  if (pc) m = [&](const Eigen::VectorXcd& v) { return sys.flatten(pc->apply(sys.unflatten(v))); };
  Eigen::VectorXcd x0;
  if (guess) x0 = sys.flatten(*guess);
  GmresResult g = gmres(op, m, sys.flatten(rhs), opts.gmres, guess ? &x0 : nullptr);

  SolveResult r;
  r.coefficients = sys.unflatten(g.x);
  r.iterations = g.iterations;
  r.residual = g.relative_residual();
  r.history = g.residuals;
  r.converged = g.converged;
  if (!r.converged && opts.throw_on_failure) {
    std::ostringstream msg;
    msg << "GMRES did not reach " << opts.gmres.tol << " in " << g.iterations << " iterations; residual history:";
    for (std::size_t i = 0; i < g.residuals.size(); i += std::max<std::size_t>(1, g.residuals.size() / 10))
      msg << ' ' << g.residuals[i];
    msg << ' ' << g.relative_residual();
    throw NotConverged(msg.str(), std::move(g));
  }
  return r;
}

}  // namespace faddeev
