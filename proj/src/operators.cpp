#include "faddeev/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "faddeev/grids.hpp"
#include "faddeev/kernels.hpp"

namespace faddeev {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// Raw rho function 2K+1 (slope at rho_max) and its derivatives at the points.
Eigen::VectorXd raw_column(const SplineBasis1D& b, const std::vector<double>& pts, int raw, int order) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (const auto& [r, v] : b.raw_at(pts[p], order))
      if (r == raw) col(static_cast<Eigen::Index>(p)) = v;
  return col;
}

Eigen::MatrixXcd with_ext(const SplineBasis1D& b, const std::vector<double>& pts, int order) {
  const int n = b.size();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(pts.size()), n + 1);
  m.leftCols(n) = b.matrix(pts, order);
  m.col(n) = raw_column(b, pts, b.raw_size() - 1, order).cast<cplx>();
  return m;
}

}  // namespace

double jacobi_transform_swave(const std::function<double(double)>& h, double alpha, const MassSystem& ms, int i,
                              int j, int order) {
  const auto [u, w] = gauss_legendre(order);
  const double s_in = std::sin(2.0 * alpha);
  double sum = 0.0;
  for (int k = 0; k < order; ++k) {
    const CartPoint xy = rotate_arrangement(ms, i, j, PolarPoint{1.0, alpha}, u[k]);
    const double a2 = polar_from_cart(xy).alpha;
    const double s_out = std::sin(2.0 * a2);
    if (s_out <= 0.0) continue;
    sum += w[k] * s_in / s_out * h(a2);
  }
  return 0.5 * sum;
}

double delves_beta(int nu, double phi) { return 2.0 * std::sin(nu * phi) / (nu * std::sin(2.0 * phi)); }

AlphaWindow jacobi_window(double phi, double alpha) {
  return {std::abs(phi - alpha), kHalfPi - std::abs(kHalfPi - phi - alpha)};
}

Eigen::MatrixXd assemble_swave_kernel(const SplineBasis1D& alpha_basis, const std::vector<double>& alpha_points,
                                      double phi) {
  const auto n = static_cast<Eigen::Index>(alpha_points.size());
  Eigen::VectorXd lo(n), hi(n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const auto win = jacobi_window(phi, alpha_points[q]);
    lo(q) = win.lo;
    hi(q) = win.hi;
  }
  return kernels::omp::window_integrals(alpha_basis, lo, hi, 1.0 / std::sin(2.0 * phi));
}

FaddeevSystem::FaddeevSystem(Setup setup) : setup_(std::move(setup)) {
  const auto& s = setup_;
  n_ch_ = s.channels.size();
  if (n_ch_ == 0) throw std::invalid_argument("no channels");
  if (static_cast<int>(s.potentials.size()) != n_ch_ || static_cast<int>(s.boundary.size()) != n_ch_)
    throw std::invalid_argument("need one potential and one boundary condition per channel");
  if (!s.masses.all_equal()) throw std::invalid_argument("only identical particles are supported");
  for (const auto& c : s.channels.channels)
    if (c.ell != 0 || c.lambda != 0) throw std::invalid_argument("only s-wave channels are supported");

  rho_pts_ = s.rho_knots.collocation_points();
  alpha_pts_ = s.alpha.collocation_points();
  n_rho_ = static_cast<int>(rho_pts_.size());
  n_alpha_ = static_cast<int>(alpha_pts_.size());
  if (s.alpha.size() != n_alpha_) throw std::invalid_argument("alpha basis is not square on its collocation points");

  Eigen::VectorXd inv_rho(n_rho_);
  for (int p = 0; p < n_rho_; ++p) inv_rho(p) = 1.0 / rho_pts_[p];

  for (int a = 0; a < n_ch_; ++a) {
    rho_basis_.push_back(apply_rho_boundary(s.rho_knots, s.boundary[a].preconditioned));
    const auto& rb = rho_basis_.back();
    if (rb.size() != n_rho_) throw std::invalid_argument("rho basis is not square on its collocation points");
    Eigen::MatrixXcd r0 = with_ext(rb, rho_pts_, 0);
    Eigen::MatrixXcd r1 = with_ext(rb, rho_pts_, 1);
    Eigen::MatrixXcd r2 = with_ext(rb, rho_pts_, 2);
    a1_.push_back(-r2 - inv_rho.asDiagonal() * r1 - s.energy * r0);
    a2_.push_back(inv_rho.array().square().matrix().asDiagonal() * r0);
    r0_.push_back(std::move(r0));
  }

  sv_ = s.alpha.real_matrix(alpha_pts_, 0);
  const Eigen::MatrixXd sd2 = s.alpha.real_matrix(alpha_pts_, 2);
  for (int a = 0; a < n_ch_; ++a) {
    const auto& c = s.channels.channels[a];
    Eigen::VectorXd cent(n_alpha_);
    for (int q = 0; q < n_alpha_; ++q) {
      const double ca = std::cos(alpha_pts_[q]), sa = std::sin(alpha_pts_[q]);
      cent(q) = c.ell * (c.ell + 1) / (ca * ca) + c.lambda * (c.lambda + 1) / (sa * sa);
    }
    b2_.push_back(-sd2 + cent.asDiagonal() * sv_);
  }

  const double phi = rotation_angle(s.masses, 1, 2);
  kernel_ = assemble_swave_kernel(s.alpha, alpha_pts_, phi);
  w_kernel_ = Eigen::MatrixXd(n_block(), n_block());
  for (int a = 0; a < n_ch_; ++a)
    for (int b = 0; b < n_ch_; ++b)
      w_kernel_.block(a * n_alpha_, b * n_alpha_, n_alpha_, n_alpha_) =
          s.arrangement_multiplicity * s.channels.w(a, b) * kernel_;

  vtab_.resize(n_block(), n_rho_);
  for (int a = 0; a < n_ch_; ++a)
    for (int p = 0; p < n_rho_; ++p)
      for (int q = 0; q < n_alpha_; ++q)
        vtab_(a * n_alpha_ + q, p) = s.potentials[a](rho_pts_[p] * std::cos(alpha_pts_[q]));

  const Eigen::PartialPivLU<Eigen::MatrixXd> sv_lu(sv_);
  for (int a = 0; a < n_ch_; ++a) {
    const auto& per = s.boundary[a].per_alpha;
    if (per.empty()) {
      correction_.emplace_back();
      continue;
    }
    if (static_cast<int>(per.size()) != n_alpha_) throw std::invalid_argument("per-alpha boundary has wrong size");
    Eigen::VectorXcd d(n_alpha_);
    for (int q = 0; q < n_alpha_; ++q) d(q) = per[q] - s.boundary[a].preconditioned;
    if (d.cwiseAbs().maxCoeff() > 0.0) has_correction_ = true;
    Eigen::MatrixXcd ds = d.asDiagonal() * sv_.cast<cplx>();
    correction_.push_back(sv_lu.inverse().cast<cplx>() * ds);
  }
}

Field FaddeevSystem::extend(const Field& x) const {
  Field xe(n_block(), n_rho_ + 1);
  xe.leftCols(n_rho_) = x;
  for (int a = 0; a < n_ch_; ++a) {
    auto dst = xe.block(a * n_alpha_, n_rho_, n_alpha_, 1);
    if (correction_[a].size() == 0)
      dst.setZero();
    else
      dst = correction_[a] * x.block(a * n_alpha_, n_rho_ - 1, n_alpha_, 1);
  }
  return xe;
}

namespace {

// Per channel: Xa * M_a^T for the rho-side factor M.
Field rho_apply(const Field& xe, const std::vector<Eigen::MatrixXcd>& m, int n_alpha) {
  Field out(xe.rows(), m[0].rows());
  for (std::size_t a = 0; a < m.size(); ++a) {
    const auto rows = static_cast<Eigen::Index>(a) * n_alpha;
    out.middleRows(rows, n_alpha).noalias() = xe.middleRows(rows, n_alpha) * m[a].transpose();
  }
  return out;
}

}  // namespace

Field FaddeevSystem::apply_T_minus_E(const Field& x) const {
  const Field xe = extend(x);
  const Eigen::MatrixXcd sv = sv_.cast<cplx>();
  Field y = kernels::omp::block_diagonal_apply(sv, rho_apply(xe, a1_, n_alpha_), n_ch_);
  const Field t2 = rho_apply(xe, a2_, n_alpha_);
  for (int a = 0; a < n_ch_; ++a)
    y.middleRows(a * n_alpha_, n_alpha_).noalias() += b2_[a].cast<cplx>() * t2.middleRows(a * n_alpha_, n_alpha_);
  return y;
}

Field FaddeevSystem::apply_identity(const Field& x) const {
  return kernels::omp::block_diagonal_apply(sv_.cast<cplx>(), rho_apply(extend(x), r0_, n_alpha_), n_ch_);
}

Field FaddeevSystem::apply_V(const Field& x) const {
  Field y = Field::Zero(n_block(), n_rho_);
  kernels::omp::hadamard_accumulate(y, vtab_, apply_identity(x));
  return y;
}

Field FaddeevSystem::apply_kernel_only(const Field& x) const {
  return w_kernel_.cast<cplx>() * rho_apply(extend(x), r0_, n_alpha_);
}

Field FaddeevSystem::apply_K(const Field& x) const {
  Field y = Field::Zero(n_block(), n_rho_);
  kernels::omp::hadamard_accumulate(y, vtab_, apply_kernel_only(x));
  return y;
}

Field FaddeevSystem::apply(const Field& x) const {
  const Field xe = extend(x);
  const Eigen::MatrixXcd sv = sv_.cast<cplx>();
  const Field u = rho_apply(xe, r0_, n_alpha_);
  Field y = kernels::omp::block_diagonal_apply(sv, rho_apply(xe, a1_, n_alpha_), n_ch_);
  const Field t2 = rho_apply(xe, a2_, n_alpha_);
  for (int a = 0; a < n_ch_; ++a)
    y.middleRows(a * n_alpha_, n_alpha_).noalias() += b2_[a].cast<cplx>() * t2.middleRows(a * n_alpha_, n_alpha_);
  Field vu = kernels::omp::block_diagonal_apply(sv, u, n_ch_);
  vu.noalias() += w_kernel_.cast<cplx>() * u;
  kernels::omp::hadamard_accumulate(y, vtab_, vu);
  return y;
}

TensorSpline FaddeevSystem::channel_spline(const Field& x, int a) const {
  const Field xe = extend(x);
  const auto& rb = rho_basis_[a];
  const auto& ab = setup_.alpha;
  Eigen::MatrixXcd pr = Eigen::MatrixXcd::Zero(rb.raw_size(), n_rho_ + 1);
  for (int f = 0; f < rb.size(); ++f)
    for (const auto& t : rb.functions()[f]) pr(t.raw, f) += t.weight;
  pr(rb.raw_size() - 1, n_rho_) += 1.0;
  Eigen::MatrixXcd pa = Eigen::MatrixXcd::Zero(ab.raw_size(), n_alpha_);
  for (int f = 0; f < ab.size(); ++f)
    for (const auto& t : ab.functions()[f]) pa(t.raw, f) += t.weight;
  TensorSpline ts;
  ts.outer = setup_.rho_knots;
  ts.inner = ab;
  ts.raw = pa * xe.middleRows(a * n_alpha_, n_alpha_) * pr.transpose();
  return ts;
}

Eigen::VectorXcd FaddeevSystem::flatten(const Field& x) const {
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

Field FaddeevSystem::unflatten(const Eigen::Ref<const Eigen::VectorXcd>& v) const {
  if (v.size() != size()) throw std::invalid_argument("vector length does not match the system");
  return Eigen::Map<const Field>(v.data(), n_block(), n_rho_);
}

}  // namespace faddeev
