#include <omp.h>

#include <algorithm>
#include <cmath>

#include "faddeev/kernels.hpp"
#include "faddeev/spline.hpp"

namespace faddeev::kernels::omp {

void hadamard_accumulate(Eigen::MatrixXcd& y, const Eigen::MatrixXd& v, const Eigen::MatrixXcd& u) {
  const Eigen::Index cols = y.cols(), rows = y.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < cols; ++n)
    for (Eigen::Index m = 0; m < rows; ++m) y(m, n) += v(m, n) * u(m, n);
}

void divide_by_sum(Eigen::MatrixXcd& x, const Eigen::VectorXcd& lambda, const Eigen::VectorXcd& gamma) {
  const Eigen::Index cols = x.cols(), rows = x.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index n = 0; n < cols; ++n)
    for (Eigen::Index m = 0; m < rows; ++m) x(m, n) /= (lambda(m) + gamma(n));
}

Eigen::MatrixXcd block_diagonal_apply(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& x, int blocks) {
  const Eigen::Index b = m.rows();
  Eigen::MatrixXcd y(b * blocks, x.cols());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < blocks; ++k) y.middleRows(k * b, b).noalias() = m * x.middleRows(k * b, m.cols());
  return y;
}

Eigen::MatrixXd window_integrals(const SplineBasis1D& basis, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                 double scale) {
  const Eigen::Index nq = lo.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nq, basis.size());
  std::vector<std::vector<std::pair<int, double>>> users(basis.raw_size());
  for (int f = 0; f < basis.size(); ++f)
    for (const auto& t : basis.functions()[f]) users[t.raw].push_back({f, t.weight.real()});
  const auto& knots = basis.knots();
  const double g = 0.5 / std::sqrt(3.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double a = lo(q), b = hi(q);
    if (!(b > a)) continue;
    for (int k = 0; k < basis.intervals(); ++k) {
      const double s0 = std::max(a, knots[k]), s1 = std::min(b, knots[k + 1]);
      if (!(s1 > s0)) continue;
      const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
      for (double t : {mid - 2.0 * g * half, mid + 2.0 * g * half}) {
        const auto v = basis.raw_local(k, t, 0);
        for (int r = 0; r < 4; ++r)
          for (const auto& [f, w] : users[2 * k + r]) out(q, f) += scale * half * w * v[r];
      }
    }
  }
  return out;
}

}  // namespace faddeev::kernels::omp
