#include "faddeev/sanalysis.hpp"

#include <cmath>
#include <stdexcept>

namespace faddeev {

bool AlphaQuadrature::compatible(const AlphaQuadrature& o) const {
  if (channels != o.channels || points.size() != o.points.size()) return false;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(points[i] - o.points[i]) > 1e-14 || std::abs(weights[i] - o.weights[i]) > 1e-14) return false;
  return (transform - o.transform).cwiseAbs().maxCoeff() <= 1e-12;
}

HybridValue HybridValue::conj() const {
  HybridValue out = *this;
  out.scalar = std::conj(scalar);
  if (is_function) out.values = values.conjugate();
  return out;
}

namespace {

cplx integrate(const Eigen::VectorXcd& f, const AlphaQuadrature& quad) {
  cplx sum = 0.0;
  const int n = quad.n();
  for (Eigen::Index i = 0; i < f.size(); ++i) sum += quad.weights[i % n] * f(i);
  return sum;
}

void check(const HybridValue& v, const AlphaQuadrature& quad) {
  if (v.is_function && v.values.size() != quad.size())
    throw std::invalid_argument("alpha function does not match the quadrature grid");
}

}  // namespace

cplx hybrid_inner(const HybridValue& a, const HybridValue& b, const AlphaQuadrature& quad) {
  check(a, quad);
  check(b, quad);
  if (!a.is_function && !b.is_function) return a.scalar * b.scalar;
  if (!b.is_function) return b.scalar * integrate(a.values, quad);
  const Eigen::VectorXcd gj = b.values + quad.transform.cast<cplx>() * b.values;
  if (!a.is_function) return a.scalar * integrate(gj, quad);
  return integrate(a.values.cwiseProduct(gj), quad);
}

HybridMatrix::HybridMatrix(int n_bound, int n_cyl, AlphaQuadrature quad)
    : n_bound_(n_bound), n_cyl_(n_cyl), quad_(std::move(quad)) {
  if (n_cyl_ > 0 && quad_.channels != n_cyl_)
    throw std::invalid_argument("three-body block size does not match the quadrature channels");
  scalars_ = Eigen::MatrixXcd::Zero(size(), n_bound_);
  funcs_.assign(size(), Eigen::VectorXcd::Zero(n_cyl_ > 0 ? quad_.size() : 0));
}

HybridValue HybridMatrix::entry(int a, int b) const {
  if (b < n_bound_) return HybridValue::number(scalars_(a, b));
  return HybridValue::function(function(a, b - n_bound_));
}

HybridMatrix HybridMatrix::conj() const {
  HybridMatrix out = *this;
  out.scalars_ = scalars_.conjugate();
  for (auto& f : out.funcs_) f = f.conjugate();
  return out;
}

Eigen::MatrixXcd star_product(const std::vector<std::vector<HybridValue>>& left,
                              const std::vector<std::vector<HybridValue>>& right, const AlphaQuadrature& quad,
                              int n_bound) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(left.size()),
                                                static_cast<Eigen::Index>(right.size()));
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (left[a].size() != right[b].size()) throw std::invalid_argument("star product: inner dimensions differ");
      cplx sum = 0.0;
      for (std::size_t c = 0; c < left[a].size(); ++c) {
        const auto& x = left[a][c];
        const auto& y = right[b][c];
        if (static_cast<int>(c) < n_bound && (x.is_function || y.is_function))
          throw std::invalid_argument("star product: function in a (1+2) position");
        sum += hybrid_inner(x, y, quad);
      }
      out(a, b) = sum;
    }
  return out;
}

namespace {

std::vector<HybridValue> row(const HybridMatrix& m, int a, bool conj) {
  std::vector<HybridValue> r;
  for (int c = 0; c < m.n_bound(); ++c) r.push_back(HybridValue::number(conj ? std::conj(m.scalar(a, c)) : m.scalar(a, c)));
  if (m.n_cyl() > 0) r.push_back(HybridValue::function(conj ? m.row_block(a).conjugate() : m.row_block(a)));
  return r;
}

Eigen::MatrixXcd star_rows(const HybridMatrix& a, const HybridMatrix& b, bool conj) {
  if (a.n_bound() != b.n_bound() || a.n_cyl() != b.n_cyl()) throw std::invalid_argument("star product: shape mismatch");
  if (a.n_cyl() > 0 && !a.quadrature().compatible(b.quadrature()))
    throw std::invalid_argument("star product: mismatched quadrature grids");
  std::vector<std::vector<HybridValue>> l, r;
  for (int i = 0; i < a.size(); ++i) l.push_back(row(a, i, false));
  for (int i = 0; i < b.size(); ++i) r.push_back(row(b, i, conj));
  return star_product(l, r, a.quadrature(), a.n_bound());
}

}  // namespace

Eigen::MatrixXcd star_product_dagger(const HybridMatrix& a, const HybridMatrix& b) { return star_rows(a, b, true); }

Eigen::MatrixXcd star_product_transpose(const HybridMatrix& a, const HybridMatrix& b) {
  return star_rows(a, b, false);
}

Eigen::VectorXcd normalize_incident(const Eigen::VectorXcd& stacked, const AlphaQuadrature& quad) {
  const HybridValue v = HybridValue::function(stacked);
  const cplx self = hybrid_inner(v, v, quad);
  if (!(std::abs(self) > 0.0) || self.real() <= 0.0)
    throw std::domain_error("incident function has zero or negative flux");
  return stacked / std::sqrt(self);
}

HybridMatrix incident_matrix(int n_bound, const std::vector<Eigen::VectorXcd>& incident, const AlphaQuadrature& quad) {
  HybridMatrix m(n_bound, static_cast<int>(incident.size()), quad);
  for (int a = 0; a < n_bound; ++a) m.scalar(a, a) = 1.0;
  for (std::size_t c = 0; c < incident.size(); ++c) m.row_block(n_bound + static_cast<int>(c)) = incident[c];
  return m;
}

double unitarity_defect(const HybridMatrix& s, Eigen::MatrixXcd* residual) {
  const Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(s.size(), s.size()) - star_product_dagger(s, s);
  if (residual) *residual = r;
  return r.norm();
}

double reciprocity_defect(const HybridMatrix& s, const HybridMatrix& incident, Eigen::MatrixXcd* projected) {
  const Eigen::MatrixXcd p = star_product_transpose(incident, s);
  if (projected) *projected = p;
  const double denom = (p + p.transpose()).norm();
  return denom > 0.0 ? (p - p.transpose()).norm() / denom : 0.0;
}

DefectReport defects(const HybridMatrix& s, const HybridMatrix& incident) {
  DefectReport d;
  d.eta_u = unitarity_defect(s, &d.unitarity_residual);
  d.eta_r = reciprocity_defect(s, incident, &d.projected);
  return d;
}

}  // namespace faddeev
