#include <cmath>
#include <numbers>

#include "doctest.h"
#include "faddeev/grids.hpp"
#include "faddeev/kinematics.hpp"
#include "faddeev/specfun.hpp"
#include "faddeev/twobody.hpp"

using namespace faddeev;

namespace {

BoundState deuteron() {
  const double tx = tau_factors(MassSystem::equal(41.47), 1).tau_x;
  return solve_bound_states(PairPotential{{{1438.72, 3.11}, {-626.885, 1.55}}, tx}, 0, TwoBodyGrid{}).at(0);
}

// Interpolant of f through its values and slopes at the knots.
Eigen::VectorXcd hermite_data(const SplineBasis1D& b, const std::function<double(double)>& f,
                              const std::function<double(double)>& df) {
  Eigen::VectorXcd raw(b.raw_size());
  for (std::size_t i = 0; i < b.knots().size(); ++i) {
    raw(2 * i) = f(b.knots()[i]);
    raw(2 * i + 1) = df(b.knots()[i]);
  }
  return raw;
}

}  // namespace

TEST_CASE("rho grid") {
  const auto g = build_rho_grid(10.0, 128);
  const auto& k = g.knots();
  CHECK(k.size() == 65);
  CHECK(k.front() == 0.0);
  CHECK(k.back() == 10.0);
  for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i] > k[i - 1]);
  CHECK(k[1] - k[0] < 0.5 * (k.back() - k[k.size() - 2]));  // denser at small rho
  CHECK(g.collocation_points().size() == 128);
  CHECK_THROWS(build_rho_grid(10.0, 127));
  CHECK_THROWS(build_rho_grid(-1.0, 128));
  CHECK_THROWS(build_rho_grid(10.0, 6));
  // Deterministic construction.
  CHECK(build_rho_grid(23.4, 500).knots() == build_rho_grid(23.4, 500).knots());
}

TEST_CASE("alpha grid") {
  const double pi2 = std::numbers::pi / 2;
  const auto uniform = build_alpha_grid(32, std::nullopt, 10.0);
  for (std::size_t i = 0; i < uniform.knots().size(); ++i)
    CHECK(uniform.knots()[i] == doctest::Approx(pi2 * i / 16).epsilon(1e-15));

  const auto d = deuteron();
  const auto pot = PairPotential{{{1438.72, 3.11}, {-626.885, 1.55}}, tau_factors(MassSystem::equal(41.47), 1).tau_x};
  const double rho_max = 60.0 * std::sqrt(tau_factors(MassSystem::equal(41.47), 1).tau_x *
                                          tau_factors(MassSystem::equal(41.47), 1).tau_y);
  const auto g = build_alpha_grid(64, alpha_grid_hint(d, pot), rho_max);
  CHECK(g.knots().front() == 0.0);
  CHECK(g.knots().back() == doctest::Approx(pi2).epsilon(1e-15));
  // At least 8 knots where rho_max cos(alpha) lies inside the deuteron.
  const double b = potential_range(d, 1e-3);
  int inside = 0;
  for (double a : g.knots())
    if (rho_max * std::cos(a) < b) ++inside;
  CHECK(inside >= 8);
  CHECK(g.knots() == build_alpha_grid(64, alpha_grid_hint(d, pot), rho_max).knots());
  CHECK_THROWS(build_alpha_grid(15, std::nullopt, 1.0));
}

TEST_CASE("cubic exactness of the tensor spline") {
  SplineBasis1D outer({0.0, 0.3, 0.7, 1.6, 2.0});
  SplineBasis1D inner({0.0, 0.2, 0.9, 1.2});
  TensorSpline t{outer, inner, Eigen::MatrixXcd(inner.raw_size(), outer.raw_size())};
  // f(r, a) = r^3 a^2: raw(2i + p, 2j + q) = d^p/da^p d^q/dr^q f at the knots.
  for (std::size_t i = 0; i < inner.knots().size(); ++i)
    for (std::size_t j = 0; j < outer.knots().size(); ++j) {
      const double a = inner.knots()[i], r = outer.knots()[j];
      t.raw(2 * i, 2 * j) = r * r * r * a * a;
      t.raw(2 * i, 2 * j + 1) = 3 * r * r * a * a;
      t.raw(2 * i + 1, 2 * j) = 2 * r * r * r * a;
      t.raw(2 * i + 1, 2 * j + 1) = 6 * r * r * a;
    }
  for (double r : {0.05, 0.5, 1.1, 1.99})
    for (double a : {0.01, 0.4, 1.0, 1.19}) CHECK(std::abs(t(r, a) - r * r * r * a * a) < 1e-12);
  CHECK(t.contains(1.0, 1.0));
  CHECK_FALSE(t.contains(2.1, 0.5));
}

TEST_CASE("value functions are one at their knot and zero at the others") {
  SplineBasis1D b({0.0, 0.5, 1.5, 2.0});
  for (int f = 0; f < b.raw_size(); f += 2) {
    Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(b.raw_size());
    raw(f) = 1.0;
    for (std::size_t i = 0; i < b.knots().size(); ++i)
      CHECK(std::abs(b.evaluate_raw(raw, b.knots()[i]) - (2 * static_cast<int>(i) == f ? 1.0 : 0.0)) < 1e-15);
  }
  CHECK_THROWS_AS(b.find_interval(2.5), std::out_of_range);
}

TEST_CASE("interpolation error is fourth order") {
  const auto f = [](double t) { return std::sin(3 * t) * std::exp(-t); };
  const auto df = [](double t) { return (3 * std::cos(3 * t) - std::sin(3 * t)) * std::exp(-t); };
  double prev = 0.0;
  for (int n : {8, 16, 32, 64}) {
    std::vector<double> k(n + 1);
    for (int i = 0; i <= n; ++i) k[i] = 2.0 * i / n;
    SplineBasis1D b(k);
    const auto raw = hermite_data(b, f, df);
    double err = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 2.0 * i / 1000;
      err = std::max(err, std::abs(b.evaluate_raw(raw, t).real() - f(t)));
    }
    if (prev > 0.0) CHECK(std::log2(prev / err) > 3.7);
    prev = err;
  }
}

TEST_CASE("boundary conditions remove one function each") {
  auto b = build_rho_grid(5.0, 16);
  const int n0 = b.size();
  auto c = apply_rho_boundary(b, cplx(0.0, 1.0));
  CHECK(c.size() == n0 - 2);  // regularity at 0 and the merged tail
  auto a = apply_alpha_dirichlet(build_alpha_grid(16, std::nullopt, 1.0));
  CHECK(a.size() == build_alpha_grid(16, std::nullopt, 1.0).size() - 2);
  CHECK(a.collocation_points().size() == static_cast<std::size_t>(a.size()));
  CHECK(c.collocation_points().size() == static_cast<std::size_t>(c.size()));
  CHECK_THROWS(apply_rho_boundary(b, cplx(std::nan(""), 0.0)));
}

namespace {

// Solve -f'' - k^2 f = 0 on the rho grid with f(0) = h+(0) and the outgoing
// log-derivative built into the basis; return the relative L2 error against
// h+(k x).
double hankel_collocation_error(int n_rho, double k) {
  SplineBasis1D b = build_rho_grid(60.0 * std::sqrt(tau_factors(MassSystem::equal(41.47), 1).tau_x *
                                                    tau_factors(MassSystem::equal(41.47), 1).tau_y),
                                   n_rho);
  const double x1 = b.upper();
  b.merge_tail(k * riccati_h_plus_prime(0, k * x1) / riccati_h_plus(0, k * x1));
  const auto pts = b.collocation_points();
  const int nf = b.size();
  Eigen::MatrixXcd a(nf, nf);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nf);
  a.topRows(nf - 1) = -b.matrix(pts, 2) - k * k * b.matrix(pts, 0);
  a.row(nf - 1) = b.matrix({0.0}, 0);
  rhs(nf - 1) = riccati_h_plus(0, 0.0);
  const Eigen::VectorXcd c = a.partialPivLu().solve(rhs);
  double err = 0.0, norm = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = x1 * i / 4000;
    const cplx exact = riccati_h_plus(0, k * x);
    err += std::norm(b.evaluate(c, x) - exact);
    norm += std::norm(exact);
  }
  return std::sqrt(err / norm);
}

}  // namespace

TEST_CASE("outgoing boundary condition reproduces the Riccati-Hankel solution") {
  // Desk resolution (n_rho = 128 on 60 fm).
  CHECK(hankel_collocation_error(128, 0.5) < 1e-6);
  // Fourth order under refinement at a shorter wavelength.
  CHECK(hankel_collocation_error(128, 1.0) / hankel_collocation_error(256, 1.0) > 12.0);
}

TEST_CASE("knot dump") {
  const auto csv = knots_csv(SplineBasis1D({0.0, 0.25, 1.0}));
  CHECK(csv == "index,knot\n0,0\n1,0.25\n2,1\n");
}
