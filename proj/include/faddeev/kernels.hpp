#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// solver and a plain serial version kept as the reference for tests and the
// benchmark.

#include <Eigen/Dense>
#include <complex>

namespace faddeev {
class FaddeevSystem;
class SplineBasis1D;
}  // namespace faddeev

namespace faddeev::kernels {

using cplx = std::complex<double>;

namespace omp {

/// y += v .* u (elementwise).
void hadamard_accumulate(Eigen::MatrixXcd& y, const Eigen::MatrixXd& v, const Eigen::MatrixXcd& u);
/// x(m, n) /= (lambda(m) + gamma(n)).
void divide_by_sum(Eigen::MatrixXcd& x, const Eigen::VectorXcd& lambda, const Eigen::VectorXcd& gamma);
/// Same square matrix applied to each of `blocks` row blocks of x.
Eigen::MatrixXcd block_diagonal_apply(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& x, int blocks);
/// Integrals of every retained spline function over [lo_q, hi_q] for each q,
/// scaled by `scale`.
Eigen::MatrixXd window_integrals(const SplineBasis1D& basis, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                 double scale);

}  // namespace omp

namespace serial {

void hadamard_accumulate(Eigen::MatrixXcd& y, const Eigen::MatrixXd& v, const Eigen::MatrixXcd& u);
void divide_by_sum(Eigen::MatrixXcd& x, const Eigen::VectorXcd& lambda, const Eigen::VectorXcd& gamma);
Eigen::MatrixXcd block_diagonal_apply(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& x, int blocks);
Eigen::MatrixXd window_integrals(const SplineBasis1D& basis, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                 double scale);

/// Fully assembled (T + V + K - E 1) as a dense matrix, built from explicit
/// Kronecker products. Only for small grids.
Eigen::MatrixXcd dense_operator(const FaddeevSystem& sys);
/// Dense (T - E 1).
Eigen::MatrixXcd dense_free_operator(const FaddeevSystem& sys);

}  // namespace serial

}  // namespace faddeev::kernels
