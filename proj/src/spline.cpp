#include "faddeev/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace faddeev {

SplineBasis1D::SplineBasis1D(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw std::invalid_argument("spline basis needs at least two knots");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i] > knots_[i - 1])) throw std::invalid_argument("spline knots must be strictly increasing");
  functions_.reserve(raw_size());
  for (int r = 0; r < raw_size(); ++r) functions_.push_back({{r, 1.0}});
}

int SplineBasis1D::find_interval(double t) const {
  const double lo = knots_.front(), hi = knots_.back();
  const double slack = 1e-12 * (hi - lo);
  if (t < lo - slack || t > hi + slack) throw std::out_of_range("point outside spline extent");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  int k = static_cast<int>(it - knots_.begin()) - 1;
  return std::clamp(k, 0, intervals() - 1);
}

std::array<double, 4> SplineBasis1D::raw_local(int k, double t, int order) const {
  const double h = knots_[k + 1] - knots_[k];
  const double s = (t - knots_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  switch (order) {
    case 0:
      return {2 * s3 - 3 * s2 + 1, (s3 - 2 * s2 + s) * h, -2 * s3 + 3 * s2, (s3 - s2) * h};
    case 1:
      return {(6 * s2 - 6 * s) / h, 3 * s2 - 4 * s + 1, (-6 * s2 + 6 * s) / h, 3 * s2 - 2 * s};
    case 2:
      return {(12 * s - 6) / (h * h), (6 * s - 4) / h, (-12 * s + 6) / (h * h), (6 * s - 2) / h};
    default:
      throw std::invalid_argument("derivative order must be 0, 1 or 2");
  }
}

std::array<std::pair<int, double>, 4> SplineBasis1D::raw_at(double t, int order) const {
  const int k = find_interval(t);
  const auto v = raw_local(k, t, order);
  return {{{2 * k, v[0]}, {2 * k + 1, v[1]}, {2 * k + 2, v[2]}, {2 * k + 3, v[3]}}};
}

std::vector<double> SplineBasis1D::collocation_points() const {
  std::vector<double> pts;
  pts.reserve(2 * intervals());
  const double g = 0.5 / std::sqrt(3.0);
  for (int k = 0; k < intervals(); ++k) {
    const double mid = 0.5 * (knots_[k] + knots_[k + 1]);
    const double h = knots_[k + 1] - knots_[k];
    pts.push_back(mid - g * h);
    pts.push_back(mid + g * h);
  }
  return pts;
}

std::vector<double> SplineBasis1D::collocation_weights() const {
  std::vector<double> w;
  w.reserve(2 * intervals());
  for (int k = 0; k < intervals(); ++k) {
    const double h = knots_[k + 1] - knots_[k];
    w.push_back(0.5 * h);
    w.push_back(0.5 * h);
  }
  return w;
}

Eigen::MatrixXcd SplineBasis1D::matrix(const std::vector<double>& points, int order) const {
  // raw -> retained lookup (a raw function can feed at most two retained ones)
  std::vector<std::vector<std::pair<int, cplx>>> users(raw_size());
  for (int f = 0; f < size(); ++f)
    for (const auto& term : functions_[f]) users[term.raw].push_back({f, term.weight});

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(points.size()), size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (const auto& [raw, val] : raw_at(points[p], order))
      for (const auto& [f, w] : users[raw]) m(static_cast<Eigen::Index>(p), f) += w * val;
  }
  return m;
}

Eigen::MatrixXd SplineBasis1D::real_matrix(const std::vector<double>& points, int order) const {
  return matrix(points, order).real();
}

void SplineBasis1D::drop_raw(int raw) {
  auto it = std::find_if(functions_.begin(), functions_.end(), [raw](const Function& f) {
    return f.size() == 1 && f.front().raw == raw;
  });
  if (it == functions_.end()) throw std::invalid_argument("raw function not retained on its own");
  functions_.erase(it);
}

void SplineBasis1D::merge_tail(cplx log_derivative) {
  const int v = raw_size() - 2, s = raw_size() - 1;
  drop_raw(v);
  drop_raw(s);
  functions_.push_back({{v, 1.0}, {s, log_derivative}});
}

int SplineBasis1D::index_of_raw(int raw) const {
  for (int f = 0; f < size(); ++f)
    for (const auto& term : functions_[f])
      if (term.raw == raw) return f;
  return -1;
}

Eigen::VectorXcd SplineBasis1D::raw_coefficients(const Eigen::Ref<const Eigen::VectorXcd>& coeffs) const {
  if (coeffs.size() != size()) throw std::invalid_argument("coefficient vector size mismatch");
  Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(raw_size());
  for (int f = 0; f < size(); ++f)
    for (const auto& term : functions_[f]) raw(term.raw) += term.weight * coeffs(f);
  return raw;
}

cplx SplineBasis1D::evaluate(const Eigen::Ref<const Eigen::VectorXcd>& coeffs, double t, int order) const {
  return evaluate_raw(raw_coefficients(coeffs), t, order);
}

cplx SplineBasis1D::evaluate_raw(const Eigen::Ref<const Eigen::VectorXcd>& raw, double t, int order) const {
  cplx sum = 0.0;
  for (const auto& [r, v] : raw_at(t, order)) sum += raw(r) * v;
  return sum;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jm(i, i - 1) = b;
    jm(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
  return {x, w};
}

cplx TensorSpline::operator()(double outer_t, double inner_t) const {
  const auto ro = outer.raw_at(outer_t, 0);
  const auto ri = inner.raw_at(inner_t, 0);
  cplx sum = 0.0;
  for (const auto& [n, vn] : ro)
    for (const auto& [m, vm] : ri) sum += raw(m, n) * (vn * vm);
  return sum;
}

bool TensorSpline::contains(double outer_t, double inner_t) const {
  return outer_t >= outer.lower() && outer_t <= outer.upper() && inner_t >= inner.lower() &&
         inner_t <= inner.upper();
}

}  // namespace faddeev
