#include <algorithm>
#include <cmath>

#include "faddeev/kernels.hpp"
#include "faddeev/operators.hpp"
#include "faddeev/spline.hpp"

namespace faddeev::kernels::serial {

void hadamard_accumulate(Eigen::MatrixXcd& y, const Eigen::MatrixXd& v, const Eigen::MatrixXcd& u) {
  for (Eigen::Index n = 0; n < y.cols(); ++n)
    for (Eigen::Index m = 0; m < y.rows(); ++m) y(m, n) += v(m, n) * u(m, n);
}

void divide_by_sum(Eigen::MatrixXcd& x, const Eigen::VectorXcd& lambda, const Eigen::VectorXcd& gamma) {
  for (Eigen::Index n = 0; n < x.cols(); ++n)
    for (Eigen::Index m = 0; m < x.rows(); ++m) x(m, n) /= (lambda(m) + gamma(n));
}

Eigen::MatrixXcd block_diagonal_apply(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& x, int blocks) {
  const Eigen::Index b = m.rows(), c = m.cols();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(b * blocks, x.cols());
  for (int k = 0; k < blocks; ++k)
    for (Eigen::Index n = 0; n < x.cols(); ++n)
      for (Eigen::Index i = 0; i < b; ++i) {
        cplx s = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) s += m(i, j) * x(k * c + j, n);
        y(k * b + i, n) = s;
      }
  return y;
}

Eigen::MatrixXd window_integrals(const SplineBasis1D& basis, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                 double scale) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(lo.size(), basis.size());
  const auto& knots = basis.knots();
  const double g = 1.0 / std::sqrt(3.0);
  for (Eigen::Index q = 0; q < lo.size(); ++q)
    for (int f = 0; f < basis.size(); ++f)
      for (const auto& term : basis.functions()[f]) {
        const int k_lo = std::max(0, term.raw / 2 - 1), k_hi = std::min(basis.intervals() - 1, term.raw / 2);
        for (int k = k_lo; k <= k_hi; ++k) {
          const double s0 = std::max(lo(q), knots[k]), s1 = std::min(hi(q), knots[k + 1]);
          if (!(s1 > s0)) continue;
          const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
          for (double t : {mid - g * half, mid + g * half}) {
            const auto v = basis.raw_local(k, t, 0);
            const int r = term.raw - 2 * k;
            out(q, f) += scale * half * term.weight.real() * v[r];
          }
        }
      }
  return out;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// vec(X) -> vec([X, dX]) with the boundary correction in the extra column.
Eigen::MatrixXcd extension(const FaddeevSystem& sys) {
  const Eigen::Index nb = sys.n_block(), nr = sys.n_rho();
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(nb * (nr + 1), nb * nr);
  e.topRows(nb * nr).setIdentity();
  for (Eigen::Index j = 0; j < nb; ++j) {
    Field unit = Field::Zero(nb, nr);
    unit(j, nr - 1) = 1.0;
    const Field xe = sys.extend(unit);
    e.block(nb * nr, (nr - 1) * nb + j, nb, 1) = xe.col(nr);
  }
  return e;
}

Eigen::MatrixXcd selector(const FaddeevSystem& sys, int a) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(sys.n_block(), sys.n_block());
  s.block(a * sys.n_alpha(), a * sys.n_alpha(), sys.n_alpha(), sys.n_alpha()).setIdentity();
  return s;
}

Eigen::MatrixXcd block_diag(const FaddeevSystem& sys, const Eigen::MatrixXd& m, int a) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(sys.n_block(), sys.n_block());
  s.block(a * sys.n_alpha(), a * sys.n_alpha(), sys.n_alpha(), sys.n_alpha()) = m.cast<cplx>();
  return s;
}

Eigen::MatrixXcd assemble(const FaddeevSystem& sys, bool interactions) {
  const Eigen::Index nb = sys.n_block(), nr = sys.n_rho();
  Eigen::MatrixXcd ext_op = Eigen::MatrixXcd::Zero(nb * nr, nb * (nr + 1));
  Eigen::MatrixXcd inter = Eigen::MatrixXcd::Zero(nb * nr, nb * (nr + 1));
  const Eigen::MatrixXcd w = sys.coupled_kernel().cast<cplx>();
  for (int a = 0; a < sys.n_channels(); ++a) {
    const Eigen::MatrixXcd sv = block_diag(sys, sys.alpha_values(), a);
    ext_op += kron(sys.A1(a), sv) + kron(sys.A2(a), block_diag(sys, sys.alpha_operator(a), a));
    if (interactions) inter += kron(sys.R0(a), sv + w * selector(sys, a));
  }
  if (interactions) {
    const Eigen::MatrixXd& v = sys.potential_table();
    Eigen::VectorXcd dv(nb * nr);
    for (Eigen::Index p = 0; p < nr; ++p)
      for (Eigen::Index m = 0; m < nb; ++m) dv(p * nb + m) = v(m, p);
    ext_op += dv.asDiagonal() * inter;
  }
  return ext_op * extension(sys);
}

}  // namespace

Eigen::MatrixXcd dense_operator(const FaddeevSystem& sys) { return assemble(sys, true); }

Eigen::MatrixXcd dense_free_operator(const FaddeevSystem& sys) { return assemble(sys, false); }

}  // namespace faddeev::kernels::serial
