#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace faddeev {

using cplx = std::complex<double>;

/// Quadrature and recoupled Jacobi transform for functions of alpha in the
/// (1+1+1) block. Functions are stacked over the three-body channels:
/// values(c * n + q) is channel c at alpha point q.
struct AlphaQuadrature {
  std::vector<double> points;
  std::vector<double> weights;
  int channels = 0;
  /// Acts on stacked values: (J g)_k = sum_l multiplicity * w_kl * J1[g_l].
  Eigen::MatrixXd transform;

  int n() const { return static_cast<int>(points.size()); }
  int size() const { return channels * n(); }
  bool compatible(const AlphaQuadrature& o) const;
};

/// A matrix element: a complex number, or a stacked function of alpha.
struct HybridValue {
  bool is_function = false;
  cplx scalar = 0.0;
  Eigen::VectorXcd values;

  static HybridValue number(cplx z) { return {false, z, {}}; }
  static HybridValue function(Eigen::VectorXcd v) { return {true, 0.0, std::move(v)}; }
  HybridValue conj() const;
};

/// The pairing <a, b>: ordinary product for numbers, otherwise an integral
/// over alpha with the Jacobi transform applied to the second argument when
/// it is a function:
///   <g, d> = g d,  <g, f> = g int (f + J f),  <f, d> = d int f,
///   <f, g> = int f (g + J g).
cplx hybrid_inner(const HybridValue& a, const HybridValue& b, const AlphaQuadrature& quad);

/// Matrix of hybrid values. The first `n_bound` row/column indices are
/// (1+2) channels (entries in those columns are numbers); the remaining
/// ones are (1+1+1) channels. In the (1+1+1) block an entry of row a is the
/// stacked function over all three-body channels, so a three-body column is
/// represented by its channel index within the stack.
class HybridMatrix {
 public:
  HybridMatrix() = default;
  HybridMatrix(int n_bound, int n_cyl, AlphaQuadrature quad);

  int n_bound() const { return n_bound_; }
  int n_cyl() const { return n_cyl_; }
  int size() const { return n_bound_ + n_cyl_; }
  const AlphaQuadrature& quadrature() const { return quad_; }

  /// Entry (a, b) for a (1+2) column b.
  cplx& scalar(int a, int b) { return scalars_(a, b); }
  cplx scalar(int a, int b) const { return scalars_(a, b); }
  /// Values of entry (a, n_bound + c) at the alpha points.
  Eigen::Ref<Eigen::VectorXcd> function(int a, int c) { return funcs_[a].segment(c * quad_.n(), quad_.n()); }
  Eigen::VectorXcd function(int a, int c) const { return funcs_[a].segment(c * quad_.n(), quad_.n()); }
  /// Stacked three-body block of row a.
  const Eigen::VectorXcd& row_block(int a) const { return funcs_[a]; }
  Eigen::VectorXcd& row_block(int a) { return funcs_[a]; }

  HybridValue entry(int a, int b) const;

  HybridMatrix conj() const;

 private:
  int n_bound_ = 0, n_cyl_ = 0;
  AlphaQuadrature quad_;
  Eigen::MatrixXcd scalars_;
  std::vector<Eigen::VectorXcd> funcs_;
};

/// (A * B^dagger)_ab = sum over bound c of A_ac conj(B_bc) + <A_a,cyl, conj(B_b,cyl)>.
Eigen::MatrixXcd star_product_dagger(const HybridMatrix& a, const HybridMatrix& b);
/// (A * B^T)_ab with the same pairing, without conjugation.
Eigen::MatrixXcd star_product_transpose(const HybridMatrix& a, const HybridMatrix& b);
/// General star product of a matrix of hybrid values with another; rows
/// of `left` and columns of `right` are arbitrary, the inner index runs over
/// bound channels (numbers) and then the three-body block.
Eigen::MatrixXcd star_product(const std::vector<std::vector<HybridValue>>& left,
                              const std::vector<std::vector<HybridValue>>& right, const AlphaQuadrature& quad,
                              int n_bound);

/// Rescale so that <i, i> = 1; fails on non-positive self-pairing.
Eigen::VectorXcd normalize_incident(const Eigen::VectorXcd& stacked, const AlphaQuadrature& quad);

/// Incident-function matrix: 1 on (1+2) diagonal entries, i_c in the
/// three-body diagonal.
HybridMatrix incident_matrix(int n_bound, const std::vector<Eigen::VectorXcd>& incident, const AlphaQuadrature& quad);

struct DefectReport {
  double eta_u = 0.0;
  double eta_r = 0.0;
  Eigen::MatrixXcd unitarity_residual;  // 1 - S * S^dagger
  Eigen::MatrixXcd projected;           // I * S^T
};

double unitarity_defect(const HybridMatrix& s, Eigen::MatrixXcd* residual = nullptr);
double reciprocity_defect(const HybridMatrix& s, const HybridMatrix& incident, Eigen::MatrixXcd* projected = nullptr);
DefectReport defects(const HybridMatrix& s, const HybridMatrix& incident);

}  // namespace faddeev
