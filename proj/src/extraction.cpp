#include "faddeev/extraction.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "faddeev/specfun.hpp"

namespace faddeev {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double elab_to_cm(double e_lab, double bound_energy) { return bound_energy + 2.0 / 3.0 * e_lab; }
double cm_to_elab(double e_cm, double bound_energy) { return 1.5 * (e_cm - bound_energy); }

CartesianGrid inscribed_grid(const ScatteringProblem& problem, const ExtractionOptions& opts) {
  CartesianGrid g;
  const double rho_max = problem.rho_max();
  g.x_max = potential_range(problem.bound_state(), opts.x_range_threshold);
  if (g.x_max >= 0.9 * rho_max) {
    std::ostringstream msg;
    msg << "bound state extends to x = " << g.x_max << ", too close to rho_max = " << rho_max;
    throw std::domain_error(msg.str());
  }
  g.y_max = std::sqrt(rho_max * rho_max - g.x_max * g.x_max);
  const auto [gx, gw] = gauss_legendre(4);
  const double h = g.x_max / opts.x_intervals;
  for (int i = 0; i < opts.x_intervals; ++i)
    for (std::size_t k = 0; k < gx.size(); ++k) {
      g.x.push_back((i + 0.5 + 0.5 * gx[k]) * h);
      g.wx.push_back(0.5 * h * gw[k]);
    }
  const double lo = opts.y_window_lo * g.y_max, hi = opts.y_window_hi * g.y_max;
  for (int j = 0; j < opts.y_samples; ++j) g.y.push_back(lo + (hi - lo) * j / (opts.y_samples - 1));
  return g;
}

std::vector<Eigen::MatrixXcd> resample_to_cartesian(const FaddeevSystem& sys, const Field& coeffs,
                                                    const std::vector<double>& x, const std::vector<double>& y) {
  const double rho_max = sys.setup().rho_knots.upper();
  for (double xi : x)
    for (double yj : y)
      if (std::hypot(xi, yj) > rho_max * (1.0 + 1e-12) || xi < 0.0 || yj < 0.0) {
        std::ostringstream msg;
        msg << "point (" << xi << ", " << yj << ") lies outside the polar grid (rho_max " << rho_max << ")";
        throw std::domain_error(msg.str());
      }
  std::vector<Eigen::MatrixXcd> out;
  for (int a = 0; a < sys.n_channels(); ++a) {
    const TensorSpline ts = sys.channel_spline(coeffs, a);
    Eigen::MatrixXcd f(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(y.size()));
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double rho = std::min(std::hypot(x[i], y[j]), rho_max);
        f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ts(rho, std::atan2(y[j], x[i]));
      }
    out.push_back(std::move(f));
  }
  return out;
}

Eigen::VectorXcd project_bound(const Eigen::MatrixXcd& f, const BoundState& phi, const std::vector<double>& x,
                               const std::vector<double>& wx) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) w(static_cast<Eigen::Index>(i)) = wx[i] * phi.value(x[i]);
  return f.transpose() * w.cast<cplx>();
}

AsymptoticFit fit_plane_wave(const std::vector<double>& y, const Eigen::VectorXcd& g, double q,
                             const Eigen::VectorXcd* jfun, const Eigen::VectorXcd* hfun, double max_condition) {
  const bool cyl = jfun && hfun;
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXcd a(n, cyl ? 4 : 2);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, 0) = riccati_j(0, q * y[j]);
    a(j, 1) = riccati_h_plus(0, q * y[j]);
  }
  if (cyl) {
    a.col(2) = *jfun;
    a.col(3) = *hfun;
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
  AsymptoticFit fit;
  fit.has_cylindrical = cyl;
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(fit.condition <= max_condition)) {
    std::ostringstream msg;
    msg << "asymptotic fit basis is ill-conditioned (condition number " << fit.condition << ")";
    throw std::runtime_error(msg.str());
  }
  const Eigen::VectorXcd c = a.colPivHouseholderQr().solve(g);
  fit.c1 = c(0);
  fit.c2 = c(1);
  if (cyl) {
    fit.c3 = c(2);
    fit.c4 = c(3);
  }
  const double gn = g.norm();
  fit.residual = gn > 0.0 ? (a * c - g).norm() / gn : 0.0;
  return fit;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> projected_cylindrical(const CartesianGrid& grid, const BoundState& phi,
                                                                    double k,
                                                                    const std::function<double(double)>& incident) {
  const auto ny = static_cast<Eigen::Index>(grid.y.size());
  Eigen::VectorXcd jf = Eigen::VectorXcd::Zero(ny), hf = Eigen::VectorXcd::Zero(ny);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
      const double w = grid.wx[i] * phi.value(grid.x[i]);
      const double rho = std::hypot(grid.x[i], grid.y[j]);
      const double ia = incident(std::atan2(grid.y[j], grid.x[i]));
      jf(j) += w * ia * bessel_J(0.0, k * rho);
      hf(j) += w * ia * hankel_plus(0.0, k * rho);
    }
  return {jf, hf};
}

double BreakupAmplitude::regular_ratio() const {
  double cmax = 0.0, tmax = 0.0;
  for (std::size_t q = 0; q < alpha.size(); ++q) {
    if (alpha[q] > alpha_c) continue;
    cmax = std::max(cmax, std::abs(C(static_cast<Eigen::Index>(q))));
    tmax = std::max(tmax, std::abs(T(static_cast<Eigen::Index>(q))));
  }
  return tmax > 0.0 ? cmax / tmax : 0.0;
}

namespace {

// Collocation columns inside the rho fit window.
std::vector<int> window_columns(const ScatteringProblem& problem, const FaddeevSystem& sys,
                                const ExtractionOptions& opts) {
  const double rho_max = problem.rho_max();
  const double lo = opts.rho_window_lo * rho_max, hi = opts.rho_window_hi * rho_max;
  std::vector<int> cols;
  for (int p = 0; p < sys.n_rho(); ++p)
    if (sys.rho_points()[p] >= lo && sys.rho_points()[p] <= hi) cols.push_back(p);
  if (cols.size() < 4) throw std::runtime_error("rho fit window contains fewer than four collocation points");
  return cols;
}

Eigen::MatrixXcd window_design(const FaddeevSystem& sys, const std::vector<int>& cols, double k) {
  Eigen::MatrixXcd design(static_cast<Eigen::Index>(cols.size()), 2);
  for (std::size_t s = 0; s < cols.size(); ++s) {
    const double r = sys.rho_points()[cols[s]];
    design(static_cast<Eigen::Index>(s), 0) = bessel_J(0.0, k * r);
    design(static_cast<Eigen::Index>(s), 1) = hankel_plus(0.0, k * r);
  }
  return design;
}

}  // namespace

std::pair<cplx, cplx> incident_window_fit(const ScatteringProblem& problem, const FaddeevSystem& sys, int nu, double k,
                                          const ExtractionOptions& opts) {
  const auto cols = window_columns(problem, sys, opts);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(cols.size()));
  const cplx phase = std::polar(1.0, nu * kPi / 2.0);
  for (std::size_t s = 0; s < cols.size(); ++s)
    f(static_cast<Eigen::Index>(s)) = phase * bessel_J(nu, k * sys.rho_points()[cols[s]]);
  const Eigen::VectorXcd c = window_design(sys, cols, k).colPivHouseholderQr().solve(f);
  return {c(0), c(0) + 2.0 * c(1)};
}

BreakupAmplitude extract_breakup(const ScatteringProblem& problem, const FaddeevSystem& sys, const Field& coeffs,
                                 int channel, const AsymptoticFit* fit, double q, double k,
                                 const ExtractionOptions& opts) {
  const double hi = opts.rho_window_hi * problem.rho_max();
  const auto cols = window_columns(problem, sys, opts);
  const Field vals = sys.values(coeffs);
  const int na = sys.n_alpha();
  const auto ns = static_cast<Eigen::Index>(cols.size());
  const auto qr = window_design(sys, cols, k).colPivHouseholderQr();

  BreakupAmplitude out;
  out.alpha = sys.alpha_points();
  out.T.resize(na);
  out.C.resize(na);
  const BoundState& phi = problem.bound_state();
  for (int a = 0; a < na; ++a) {
    const double al = out.alpha[a];
    Eigen::VectorXcd rhs(ns);
    for (Eigen::Index s = 0; s < ns; ++s) {
      const double r = sys.rho_points()[cols[s]];
      cplx v = vals(channel * na + a, cols[s]);
      if (fit) {
        const double ph = phi.value(r * std::cos(al));
        const double z = q * r * std::sin(al);
        v -= fit->c1 * ph * riccati_j(0, z) + fit->c2 * ph * riccati_h_plus(0, z);
      }
      rhs(s) = v;
    }
    const Eigen::VectorXcd c = qr.solve(rhs);
    out.C(a) = c(0);
    out.T(a) = c(1);
  }
  const double b = potential_range(phi, opts.b_range_threshold);
  const double y_max = std::sqrt(std::max(hi * hi - b * b, 0.0));
  out.alpha_c = std::atan2(y_max, b);
  return out;
}

ColumnExtraction extract_column(const ScatteringProblem& problem, const FaddeevSystem& sys, const Field& coeffs,
                                const IncomingState& incoming, const ExtractionOptions& opts) {
  const double e = sys.energy();
  const double q2 = e - problem.bound_energy();
  ColumnExtraction col;
  col.label = incoming.label;
  col.kind = incoming.kind;
  col.incident_channel = incoming.channel;
  const int bc = problem.physics().bound_channel;
  const double q = q2 > 0.0 ? std::sqrt(q2) : 0.0;
  const double k = e > 0.0 ? std::sqrt(e) : 0.0;

  if (q2 > 0.0) {
    const CartesianGrid grid = inscribed_grid(problem, opts);
    const auto f = resample_to_cartesian(sys, coeffs, grid.x, grid.y);
    Eigen::VectorXcd g = project_bound(f[bc], problem.bound_state(), grid.x, grid.wx);
    if (incoming.kind == IncomingKind::CylindricalWave && e > 0.0) {
      // The component cancels the bound-state projection of the incident
      // wave carried into the bound channel by the coupling; add it back so
      // that only the spurious regular part is left for c3.
      const double weight = (bc == incoming.channel ? 1.0 : 0.0) + sys.setup().arrangement_multiplicity *
                                                                      problem.physics().channels.w(bc, incoming.channel) *
                                                                      delves_beta(incoming.nu, problem.rotation_angle());
      Eigen::MatrixXcd chi(grid.x.size(), grid.y.size());
      for (std::size_t i = 0; i < grid.x.size(); ++i)
        for (std::size_t j = 0; j < grid.y.size(); ++j)
          chi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              weight * problem.incoming_value(incoming, incoming.channel, std::hypot(grid.x[i], grid.y[j]),
                                              std::atan2(grid.y[j], grid.x[i]));
      g += project_bound(chi, problem.bound_state(), grid.x, grid.wx);
    }
    if (e > 0.0) {
      std::function<double(double)> inc;
      if (incoming.kind == IncomingKind::CylindricalWave) {
        const int n = incoming.nu / 2 - 1;
        const double sc = incoming.scale;
        inc = [n, sc](double a) { return sc * delves({0, 0, n}, a); };
      } else {
        inc = [](double a) { return delves({0, 0, 0}, a); };
      }
      const auto [jf, hf] = projected_cylindrical(grid, problem.bound_state(), k, inc);
      col.fit = fit_plane_wave(grid.y, g, q, &jf, &hf, opts.max_condition);
    } else {
      col.fit = fit_plane_wave(grid.y, g, q, nullptr, nullptr, opts.max_condition);
    }
  }
  if (e > 0.0 && incoming.kind == IncomingKind::CylindricalWave)
    std::tie(col.incident_in, col.incident_out) = incident_window_fit(problem, sys, incoming.nu, k, opts);
  if (e > 0.0)
    for (int a = 0; a < sys.n_channels(); ++a)
      col.breakup.push_back(
          extract_breakup(problem, sys, coeffs, a, (a == bc && q2 > 0.0) ? &col.fit : nullptr, q, k, opts));
  return col;
}

AlphaQuadrature alpha_quadrature(const FaddeevSystem& sys) {
  AlphaQuadrature quad;
  quad.points = sys.alpha_points();
  quad.weights = sys.setup().alpha.collocation_weights();
  quad.channels = sys.n_channels();
  const Eigen::MatrixXd interp = sys.kernel() * sys.alpha_values().inverse();
  const int n = sys.n_alpha();
  quad.transform = Eigen::MatrixXd::Zero(quad.size(), quad.size());
  const auto& w = sys.setup().channels.w;
  const double mult = sys.setup().arrangement_multiplicity;
  for (int a = 0; a < quad.channels; ++a)
    for (int b = 0; b < quad.channels; ++b) quad.transform.block(a * n, b * n, n, n) = mult * w(a, b) * interp;
  return quad;
}

Eigen::VectorXcd incident_values(const ScatteringProblem& problem, const IncomingState& s,
                                 const AlphaQuadrature& quad) {
  (void)problem;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(quad.size());
  if (s.kind != IncomingKind::CylindricalWave) return v;
  for (int q = 0; q < quad.n(); ++q) v(s.channel * quad.n() + q) = s.scale * delves({0, 0, s.nu / 2 - 1}, quad.points[q]);
  return v;
}

bool ScatteringMatrix::partial() const {
  for (bool b : solved)
    if (!b) return true;
  return false;
}

ScatteringMatrix build_smatrix(const ScatteringProblem& problem, const FaddeevSystem& sys, double energy,
                               const std::vector<std::optional<ColumnExtraction>>& columns,
                               const ExtractionOptions& opts) {
  const double q2 = energy - problem.bound_energy();
  if (!(q2 > 0.0)) throw std::domain_error("no open channel below the bound-state threshold");
  const int nb = 1;
  const int nc = energy > 0.0 ? sys.n_channels() : 0;
  const int n = nb + nc;
  AlphaQuadrature quad = nc > 0 ? alpha_quadrature(sys) : AlphaQuadrature{};

  ScatteringMatrix out;
  out.energy = energy;
  out.solved.assign(n, false);
  std::vector<Eigen::VectorXcd> inc;
  for (int c = 0; c < nc; ++c) inc.push_back(incident_values(problem, problem.cylindrical_incoming(energy, c + 1), quad));
  out.incident = incident_matrix(nb, inc, quad);

  // Outgoing amplitudes per column (o_scalar: bound wave, o_func: stacked T_H)
  // and the regular bound-wave coefficient c1 that must be divided out.
  std::vector<cplx> o_scalar(n, 0.0), reg(n, 0.0), in(n, 1.0), out_inc(n, 1.0);
  std::vector<Eigen::VectorXcd> o_func(n, Eigen::VectorXcd::Zero(quad.size()));
  for (int a = 0; a < n && a < static_cast<int>(columns.size()); ++a) {
    if (!columns[a]) continue;
    const auto& col = *columns[a];
    out.solved[a] = true;
    o_scalar[a] = col.fit.c2;
    reg[a] = col.fit.c1;
    in[a] = col.incident_in;
    out_inc[a] = col.incident_out;
    for (int c = 0; c < nc && c < static_cast<int>(col.breakup.size()); ++c)
      o_func[a].segment(c * quad.n(), quad.n()) = col.breakup[c].T;
  }

  HybridMatrix S(nb, nc, quad);
  const cplx i(0.0, 1.0);
  const cplx denom = 1.0 + reg[0];
  for (int a = 0; a < n; ++a) {
    cplx ts = o_scalar[a];
    Eigen::VectorXcd tf = o_func[a];
    if (out.solved[0]) {
      if (a == 0) {
        ts /= denom;
        tf /= denom;
      } else {
        ts -= reg[a] / denom * o_scalar[0];
        tf -= reg[a] / denom * o_func[0];
      }
    }
    // Columns are scaled to unit incoming amplitude as seen on the fit window.
    S.scalar(a, 0) = ((a == 0 ? 1.0 : 0.0) + 2.0 * i * ts) / in[a];
    if (nc > 0) S.row_block(a) = (out_inc[a] * out.incident.row_block(a) + 2.0 * tf) / in[a];
  }

  if (nc > 0) {
    double to_cyl = 1.0;  // factor on (1+2) -> (1+1+1) entries; reciprocal on the transpose block
    if (opts.normalization == ExtractionOptions::Normalization::Flux) {
      to_cyl = std::sqrt((2.0 / kPi) / std::sqrt(q2));
    } else {
      const auto mu = reduced_masses(problem.physics().masses, 1);
      to_cyl = std::sqrt(mu.mu_spectator / mu.mu_3b);
    }
    S.row_block(0) *= to_cyl;
    for (int a = 1; a < n; ++a) S.scalar(a, 0) /= to_cyl;
  }
  out.S = std::move(S);
  return out;
}

Eigen::VectorXcd benchmark_breakup(const Eigen::VectorXcd& t) {
  const cplx factor = std::sqrt(2.0 / kPi) * std::polar(1.0, kPi / 4.0) / cplx(0.0, 2.0);
  return t * factor;
}

}  // namespace faddeev
