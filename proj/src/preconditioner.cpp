#include "faddeev/preconditioner.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <sstream>

#include "faddeev/kernels.hpp"

namespace faddeev {

KroneckerPreconditioner::KroneckerPreconditioner(const FaddeevSystem& sys, double singular_tol)
    : n_alpha_(sys.n_alpha()), n_rho_(sys.n_rho()) {
  build(sys, {}, singular_tol);
}

KroneckerPreconditioner::KroneckerPreconditioner(const FaddeevSystem& sys, const SeparablePotential& extra,
                                                 double singular_tol)
    : n_alpha_(sys.n_alpha()), n_rho_(sys.n_rho()) {
  build(sys, extra, singular_tol);
}

void KroneckerPreconditioner::build(const FaddeevSystem& sys, const SeparablePotential& extra,
                                    double singular_tol) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> b1(sys.alpha_values());
  double smallest = std::numeric_limits<double>::infinity(), largest = 0.0;
  for (int a = 0; a < sys.n_channels(); ++a) {
    Block blk;
    Eigen::MatrixXd b2 = sys.alpha_operator(a);
    if (a < static_cast<int>(extra.alpha.size()) && extra.alpha[a].size())
      b2 += extra.alpha[a].asDiagonal() * sys.alpha_values();
    const Eigen::MatrixXd b1b2 = b1.solve(b2);
    Eigen::EigenSolver<Eigen::MatrixXd> eb(b1b2);
    if (eb.info() != Eigen::Success) throw SingularPencil("alpha eigendecomposition failed");
    blk.z = eb.eigenvectors();
    blk.lambda = eb.eigenvalues();
    const Eigen::PartialPivLU<Eigen::MatrixXcd> zlu(blk.z);
    blk.left = zlu.solve(b1.inverse().cast<cplx>());

    Eigen::MatrixXcd a1 = sys.A1(a).leftCols(n_rho_);
    if (a < static_cast<int>(extra.rho.size()) && extra.rho[a].size())
      a1 += extra.rho[a].cast<cplx>().asDiagonal() * sys.R0(a).leftCols(n_rho_);
    const Eigen::MatrixXcd a2 = sys.A2(a).leftCols(n_rho_);
    const Eigen::PartialPivLU<Eigen::MatrixXcd> a2lu(a2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ea(a2lu.solve(a1));
    if (ea.info() != Eigen::Success) throw SingularPencil("rho eigendecomposition failed");
    const Eigen::MatrixXcd p = ea.eigenvectors();
    blk.gamma = ea.eigenvalues();
    blk.pt = p.transpose();
    blk.right = Eigen::PartialPivLU<Eigen::MatrixXcd>(p).solve(a2lu.inverse()).transpose();

    for (Eigen::Index m = 0; m < blk.lambda.size(); ++m)
      for (Eigen::Index n = 0; n < blk.gamma.size(); ++n) {
        const double s = std::abs(blk.lambda(m) + blk.gamma(n));
        smallest = std::min(smallest, s);
        largest = std::max(largest, s);
      }
    blocks_.push_back(std::move(blk));
  }
  gap_ = smallest / largest;
  if (gap_ < singular_tol) {
    std::ostringstream msg;
    msg << "singular pencil: energy " << sys.energy() << " MeV coincides with a free eigenvalue (relative gap "
        << gap_ << ")";
    throw SingularPencil(msg.str());
  }
}

Field KroneckerPreconditioner::apply(const Field& y) const {
  Field x(y.rows(), y.cols());
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    const auto& b = blocks_[a];
    const auto rows = static_cast<Eigen::Index>(a) * n_alpha_;
    Eigen::MatrixXcd t = b.left * y.middleRows(rows, n_alpha_) * b.right;
    kernels::omp::divide_by_sum(t, b.lambda, b.gamma);
    x.middleRows(rows, n_alpha_).noalias() = b.z * (t * b.pt);
  }
  return x;
}

}  // namespace faddeev
