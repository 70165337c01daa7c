#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "faddeev/channels.hpp"
#include "faddeev/kinematics.hpp"
#include "faddeev/spline.hpp"
#include "faddeev/twobody.hpp"

namespace faddeev {

using Field = Eigen::MatrixXcd;  // (channel x alpha-basis) rows, rho-basis columns

/// s-wave Jacobi transform of a function of alpha, by Gauss-Legendre
/// quadrature over the cosine u between x_i and y_i:
///   J[h](alpha) = 1/2 int du (x_i y_i)/(x_j y_j) h(alpha_j(u)).
/// Only (ell, lambda) = (0, 0) on both sides is supported.
double jacobi_transform_swave(const std::function<double(double)>& h, double alpha, const MassSystem& ms,
                              int i, int j, int order = 64);

/// Eigenvalue of sin(nu alpha) (even nu) under the s-wave transform.
double delves_beta(int nu, double phi);

/// The same transform reduced to an alpha' integral:
///   J[h](alpha) = 1/sin(2 phi) int_{|phi - alpha|}^{pi/2 - |pi/2 - phi - alpha|} h(alpha') dalpha'.
struct AlphaWindow {
  double lo;
  double hi;
};
AlphaWindow jacobi_window(double phi, double alpha);

/// Matrix k[q][m] = J[s_m](alpha_q) for retained alpha functions s_m, with
/// spline integrals done exactly (two-point Gauss per knot sub-interval).
Eigen::MatrixXd assemble_swave_kernel(const SplineBasis1D& alpha_basis, const std::vector<double>& alpha_points,
                                      double phi);

/// Per-channel radial boundary data at rho_max. `preconditioned` is the
/// alpha-independent log-derivative built into the rho basis; `per_alpha`
/// (size n_alpha, may be empty) is the actual alpha-dependent value at the
/// alpha collocation points.
struct RadialBoundary {
  cplx preconditioned;
  std::vector<cplx> per_alpha;
};


/// Collocated T, V, K and identity on a polar grid, in structured form:
///   T - E 1 = A1 (x) B1 + A2 (x) B2
/// over (rho basis) (x) (channel x alpha basis), plus the alpha-dependent
/// boundary correction carried by the raw slope function at rho_max.
class FaddeevSystem {
 public:
  struct Setup {
    SplineBasis1D rho_knots;  // unmodified rho spline (knots only)
    SplineBasis1D alpha;      // alpha basis with Dirichlet ends
    ChannelSet channels;
    std::vector<PairPotential> potentials;  // one per channel
    MassSystem masses;
    double energy = 0.0;
    std::vector<RadialBoundary> boundary;  // one per channel
    int arrangement_multiplicity = 2;      // identical particles: both other arrangements
  };

  explicit FaddeevSystem(Setup setup);

  int n_rho() const { return n_rho_; }
  int n_alpha() const { return n_alpha_; }
  int n_channels() const { return n_ch_; }
  int n_block() const { return n_ch_ * n_alpha_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(n_block()) * n_rho_; }
  double energy() const { return setup_.energy; }
  const Setup& setup() const { return setup_; }

  const std::vector<double>& rho_points() const { return rho_pts_; }
  const std::vector<double>& alpha_points() const { return alpha_pts_; }
  /// rho basis of channel a (with its boundary condition).
  const SplineBasis1D& rho_basis(int a) const { return rho_basis_[a]; }

  // Structured factors. rho side per channel: n_rho x (n_rho + 1), the extra
  // column being the raw slope function at rho_max.
  const Eigen::MatrixXcd& A1(int a) const { return a1_[a]; }
  const Eigen::MatrixXcd& A2(int a) const { return a2_[a]; }
  const Eigen::MatrixXcd& R0(int a) const { return r0_[a]; }
  const Eigen::MatrixXd& alpha_values() const { return sv_; }        // B1 block
  const Eigen::MatrixXd& alpha_operator(int a) const { return b2_[a]; }  // B2 block
  const Eigen::MatrixXd& kernel() const { return kernel_; }          // k (no recoupling)
  const Eigen::MatrixXd& coupled_kernel() const { return w_kernel_; }  // multiplicity * (w (x) k)
  const Eigen::MatrixXd& potential_table() const { return vtab_; }   // n_block x n_rho
  bool has_boundary_correction() const { return has_correction_; }

  /// Extended coefficients [X, dX] where dX is the slope coefficient the
  /// alpha-dependent boundary condition adds at rho_max.
  Field extend(const Field& x) const;

  // Operator actions, coefficient field -> values at collocation points.
  Field apply_T_minus_E(const Field& x) const;
  Field apply_identity(const Field& x) const;
  Field apply_V(const Field& x) const;
  /// V * (multiplicity * w (x) k) applied to x.
  Field apply_K(const Field& x) const;
  /// Kernel without the potential factor: values of multiplicity * (w (x) k) x.
  Field apply_kernel_only(const Field& x) const;
  Field apply(const Field& x) const;  // (T + V + K - E 1) x

  /// Values at (rho, alpha) collocation points of an extended field.
  Field values(const Field& x) const { return apply_identity(x); }

  /// Raw tensor coefficients for channel a (alpha raw x rho raw).
  TensorSpline channel_spline(const Field& x, int a) const;

  /// Flatten / unflatten between Field and a vector of length size().
  Eigen::VectorXcd flatten(const Field& x) const;
  Field unflatten(const Eigen::Ref<const Eigen::VectorXcd>& v) const;

 private:
  Setup setup_;
  int n_rho_ = 0, n_alpha_ = 0, n_ch_ = 0;
  std::vector<double> rho_pts_, alpha_pts_;
  std::vector<SplineBasis1D> rho_basis_;
  std::vector<Eigen::MatrixXcd> a1_, a2_, r0_;
  Eigen::MatrixXd sv_;
  std::vector<Eigen::MatrixXd> b2_;
  Eigen::MatrixXd kernel_, w_kernel_, vtab_;
  std::vector<Eigen::MatrixXcd> correction_;  // per channel: Sv^-1 diag(L - L0) Sv
  bool has_correction_ = false;
};

}  // namespace faddeev
