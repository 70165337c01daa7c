#include "faddeev/gmres.hpp"

#include <cmath>

namespace faddeev {

namespace {

using cplx = std::complex<double>;

void givens(cplx a, cplx b, cplx& c, cplx& s) {
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

GmresResult gmres(const LinearMap& op, const LinearMap& precond, const Eigen::VectorXcd& b, const GmresOptions& opts,
                  const Eigen::VectorXcd* guess) {
  const auto n = b.size();
  GmresResult res;
  res.x = guess ? *guess : Eigen::VectorXcd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x.setZero();
    res.converged = true;
    res.residuals.push_back(0.0);
    return res;
  }
  const auto M = [&](const Eigen::VectorXcd& v) { return precond ? precond(v) : v; };
  const int m_max = opts.restart > 0 ? opts.restart : opts.max_iterations;

  Eigen::VectorXcd r = b - (guess ? op(res.x) : Eigen::VectorXcd::Zero(n));
  double beta = r.norm();
  res.residuals.push_back(beta / bnorm);
  if (beta / bnorm <= opts.tol) {
    res.converged = true;
    return res;
  }

  while (res.iterations < opts.max_iterations) {
    std::vector<Eigen::VectorXcd> v;
    v.reserve(m_max + 1);
    v.push_back(r / beta);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m_max + 1, m_max);
    std::vector<cplx> cs(m_max), sn(m_max);
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m_max + 1);
    g(0) = beta;
    int j = 0;
    for (; j < m_max && res.iterations < opts.max_iterations; ++j) {
      Eigen::VectorXcd w = op(M(v[j]));
      for (int i = 0; i <= j; ++i) {
        h(i, j) = v[i].dot(w);
        w -= h(i, j) * v[i];
      }
      // one reorthogonalisation pass keeps the basis clean at tight tolerances
      for (int i = 0; i <= j; ++i) {
        const cplx c = v[i].dot(w);
        h(i, j) += c;
        w -= c * v[i];
      }
      h(j + 1, j) = w.norm();
      for (int i = 0; i < j; ++i) {
        const cplx t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -std::conj(sn[i]) * h(i, j) + std::conj(cs[i]) * h(i + 1, j);
        h(i, j) = t;
      }
      givens(h(j, j), h(j + 1, j), cs[j], sn[j]);
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      g(j + 1) = -std::conj(sn[j]) * g(j);
      g(j) = cs[j] * g(j);
      ++res.iterations;
      res.residuals.push_back(std::abs(g(j + 1)) / bnorm);
      const bool done = res.residuals.back() <= opts.tol;
      const double hn = std::real(w.norm());
      if (done || hn == 0.0) {
        ++j;
        break;
      }
      v.push_back(w / hn);
    }
    const Eigen::VectorXcd y =
        h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < j; ++i) u += y(i) * v[i];
    res.x += M(u);
    r = b - op(res.x);
    beta = r.norm();
    res.residuals.back() = beta / bnorm;
    if (beta / bnorm <= opts.tol) {
      res.converged = true;
      break;
    }
    if (opts.restart <= 0) {
      if (res.iterations >= opts.max_iterations) break;
    }
  }
  return res;
}

}  // namespace faddeev
