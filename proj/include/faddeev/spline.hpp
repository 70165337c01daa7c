#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace faddeev {

using cplx = std::complex<double>;

/// Cubic Hermite spline basis on a set of breakpoints.
///
/// Raw functions come in pairs per knot: index 2i is the value function of
/// knot i (1 at t_i, zero slope) and 2i+1 the slope function (zero value,
/// unit slope). The retained basis is a list of linear combinations of raw
/// functions, so boundary conditions are imposed by dropping or merging
/// raw functions.
class SplineBasis1D {
 public:
  struct Term {
    int raw;
    cplx weight;
  };
  using Function = std::vector<Term>;

  SplineBasis1D() = default;
  explicit SplineBasis1D(std::vector<double> knots);

  const std::vector<double>& knots() const { return knots_; }
  int intervals() const { return static_cast<int>(knots_.size()) - 1; }
  int raw_size() const { return 2 * static_cast<int>(knots_.size()); }
  int size() const { return static_cast<int>(functions_.size()); }
  const std::vector<Function>& functions() const { return functions_; }
  double lower() const { return knots_.front(); }
  double upper() const { return knots_.back(); }

  /// Interval index containing t; throws std::out_of_range outside [lower, upper].
  int find_interval(double t) const;

  /// Raw values on interval k: order 0, 1 or 2 derivative of raw functions
  /// 2k, 2k+1, 2k+2, 2k+3 at t.
  std::array<double, 4> raw_local(int k, double t, int order) const;

  /// Value (or derivative) of every raw function at t, as (index, value) pairs.
  std::array<std::pair<int, double>, 4> raw_at(double t, int order) const;

  /// Two Gauss-Legendre points per interval.
  std::vector<double> collocation_points() const;
  /// Matching weights so that sum w_i g(t_i) integrates cubics exactly per interval.
  std::vector<double> collocation_weights() const;

  /// Matrix M[p][f] = d^order/dt^order of retained function f at points[p].
  Eigen::MatrixXcd matrix(const std::vector<double>& points, int order) const;
  Eigen::MatrixXd real_matrix(const std::vector<double>& points, int order) const;

  /// Remove the retained function consisting of raw function `raw` alone.
  void drop_raw(int raw);
  /// Replace the value and slope functions of the last knot by v + L s, so
  /// that retained expansions carry log-derivative L at the upper end.
  void merge_tail(cplx log_derivative);
  /// Index of the retained function that contains raw function `raw`, or -1.
  int index_of_raw(int raw) const;

  /// Map retained coefficients to raw coefficients.
  Eigen::VectorXcd raw_coefficients(const Eigen::Ref<const Eigen::VectorXcd>& coeffs) const;

  /// Evaluate an expansion with retained coefficients at t.
  cplx evaluate(const Eigen::Ref<const Eigen::VectorXcd>& coeffs, double t, int order = 0) const;
  /// Evaluate an expansion given raw coefficients.
  cplx evaluate_raw(const Eigen::Ref<const Eigen::VectorXcd>& raw, double t, int order = 0) const;

 private:
  std::vector<double> knots_;
  std::vector<Function> functions_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Tensor-product expansion f(r, a) = sum_nm c[n][m] r_n(r) s_m(a) with raw
/// coefficients stored as raw_a x raw_r (column per radial raw function).
struct TensorSpline {
  SplineBasis1D outer;  // first coordinate (e.g. rho)
  SplineBasis1D inner;  // second coordinate (e.g. alpha)
  Eigen::MatrixXcd raw;  // inner.raw_size() x outer.raw_size()

  cplx operator()(double outer_t, double inner_t) const;
  bool contains(double outer_t, double inner_t) const;
};

}  // namespace faddeev
