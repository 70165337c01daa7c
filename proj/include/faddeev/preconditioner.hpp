#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "faddeev/operators.hpp"

namespace faddeev {

class SingularPencil : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact inverse of A1 (x) B1 + A2 (x) B2 (per channel block) through the
/// eigendecompositions of B1^-1 B2 and A2^-1 A1. The alpha-dependent
/// boundary correction is not included, so below breakup this is an
/// approximate inverse of T - E.
class KroneckerPreconditioner {
 public:
  /// Throws SingularPencil when some lambda_m + gamma_n is below
  /// `singular_tol` times the largest one.
  explicit KroneckerPreconditioner(const FaddeevSystem& sys, double singular_tol = 1e-13);
  /// Same, for T + u(rho) + c(alpha)/rho^2 - E per channel, with u at the rho
  /// and c at the alpha collocation points (folded into A1 and B2).
  struct SeparablePotential {
    std::vector<Eigen::VectorXd> rho, alpha;  // per channel; empty means zero
  };
  KroneckerPreconditioner(const FaddeevSystem& sys, const SeparablePotential& extra, double singular_tol = 1e-13);

  Field apply(const Field& y) const;

  /// Smallest |lambda_m + gamma_n| relative to the largest.
  double pencil_gap() const { return gap_; }

 private:
  void build(const FaddeevSystem& sys, const SeparablePotential& extra, double singular_tol);

  struct Block {
    Eigen::MatrixXcd left;   // Z^-1 B1^-1
    Eigen::MatrixXcd z;      // Z
    Eigen::MatrixXcd right;  // (P^-1 A2^-1)^T
    Eigen::MatrixXcd pt;     // P^T
    Eigen::VectorXcd lambda, gamma;
  };
  int n_alpha_ = 0, n_rho_ = 0;
  std::vector<Block> blocks_;
  double gap_ = 0.0;
};

}  // namespace faddeev
