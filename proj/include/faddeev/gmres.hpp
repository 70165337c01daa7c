#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace faddeev {

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct GmresOptions {
  double tol = 1e-10;     // on ||b - A x|| / ||b||
  int max_iterations = 200;
  int restart = 0;        // 0: no restart
};

struct GmresResult {
  Eigen::VectorXcd x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals;  // relative, one per iteration (index 0 = initial)
  double relative_residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
};

class NotConverged : public std::runtime_error {
 public:
  NotConverged(const std::string& what, GmresResult r) : std::runtime_error(what), result(std::move(r)) {}
  GmresResult result;
};

/// Right-preconditioned GMRES: solves A M u = b and returns x = M u.
/// `precond` may be empty (identity). The residual recorded is the true
/// unpreconditioned one since right preconditioning leaves it unchanged.
GmresResult gmres(const LinearMap& op, const LinearMap& precond, const Eigen::VectorXcd& b,
                  const GmresOptions& opts = {}, const Eigen::VectorXcd* guess = nullptr);

}  // namespace faddeev
