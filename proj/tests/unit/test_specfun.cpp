#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "doctest.h"
#include "faddeev/spline.hpp"
#include "faddeev/specfun.hpp"

using namespace faddeev;

TEST_CASE("Riccati functions against spherical Bessel functions") {
  CHECK(riccati_j(0, std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  for (int l = 0; l <= 5; ++l)
    for (double z : {0.05, 0.7, 3.0, 10.0, 42.0}) {
      CHECK(riccati_j(l, z) == doctest::Approx(oracle::riccati_j(l, z)).epsilon(1e-10).scale(1e-12));
      CHECK(riccati_n(l, z) == doctest::Approx(-oracle::riccati_y(l, z)).epsilon(1e-10));
    }
}

TEST_CASE("outgoing Riccati-Hankel function") {
  for (double z : {0.1, 1.0, 7.5, 100.0}) {
    CHECK(std::abs(riccati_h_plus(0, z)) == doctest::Approx(1.0).epsilon(1e-14));
    const cplx expected = std::exp(cplx(0.0, z));
    CHECK(std::abs(riccati_h_plus(0, z) - expected) < 1e-14);
  }
  CHECK(riccati_h_plus(0, 0.0) == cplx(1.0, 0.0));
  CHECK_THROWS_AS(riccati_h_plus(0, -0.5), std::domain_error);
  CHECK_THROWS_AS(riccati_h_plus(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(riccati_h_plus(1, -1.0), std::domain_error);
}

TEST_CASE("Wronskian of j and h+ is constant") {
  // With h+ = n + i j and n_0 = cos z, j h+' - j' h+ = j n' - j' n = -1.
  for (int l : {0, 2, 4})
    for (double z : {1.0, 10.0, 25.0}) {
      const cplx w = riccati_j(l, z) * riccati_h_plus_prime(l, z) - riccati_j_prime(l, z) * riccati_h_plus(l, z);
      CHECK(std::abs(w - cplx(-1.0, 0.0)) < 1e-11);
    }
}

TEST_CASE("Riccati functions solve the free radial equation") {
  const double h = 1e-2;
  for (int l : {0, 1, 3})
    for (double z : {2.0, 9.0}) {
      const auto f = [l](double t) { return riccati_h_plus(l, t); };
      const cplx d2 = (-f(z + 2 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h) - f(z - 2 * h)) / (12 * h * h);
      const cplx residual = -d2 + (l * (l + 1.0) / (z * z) - 1.0) * f(z);
      CHECK(std::abs(residual) < 1e-6 * std::max(1.0, std::abs(f(z))));
    }
}

TEST_CASE("cylindrical functions against Boost") {
  CHECK(bessel_J(0.0, 0.0) == 1.0);
  for (double nu : {0.0, 0.5, 1.0, 2.0, 4.3, 8.0})
    for (double z : {0.1, 1.0, 5.5, 20.0, 80.0}) {
      CHECK(bessel_J(nu, z) == doctest::Approx(oracle::bessel_j(nu, z)).epsilon(1e-10).scale(1e-12));
      CHECK(bessel_Y(nu, z) == doctest::Approx(oracle::bessel_y(nu, z)).epsilon(1e-10).scale(1e-12));
      CHECK(hankel_plus(nu, z).imag() == doctest::Approx(oracle::bessel_y(nu, z)).epsilon(1e-10).scale(1e-12));
    }
  CHECK_THROWS_AS(hankel_plus(0.0, 0.0), std::domain_error);
}

TEST_CASE("Hankel function asymptotics") {
  const double z = 100.0;
  const cplx asym = std::sqrt(2.0 / (std::numbers::pi * z)) * std::exp(cplx(0.0, z - std::numbers::pi / 4));
  CHECK(std::abs(hankel_plus(0.0, z) - asym) / std::abs(asym) < 1e-2);
  for (double nu : {2.0, 4.0, 2.5}) {
    const double zz = 2e4;
    const cplx ratio = hankel_plus(nu, zz) / hankel_plus(0.0, zz);
    CHECK(std::abs(ratio - std::exp(cplx(0.0, -nu * std::numbers::pi / 2))) < 1e-3);
  }
}

TEST_CASE("derivatives of cylindrical functions") {
  const double h = 1e-5;
  for (double nu : {0.0, 2.0, 3.5})
    for (double z : {0.8, 6.0}) {
      CHECK(bessel_J_prime(nu, z) == doctest::Approx((bessel_J(nu, z + h) - bessel_J(nu, z - h)) / (2 * h)).epsilon(1e-7));
      const cplx fd = (hankel_plus(nu, z + h) - hankel_plus(nu, z - h)) / (2 * h);
      CHECK(std::abs(hankel_plus_prime(nu, z) - fd) < 1e-7 * std::abs(fd));
    }
}

TEST_CASE("Jacobi polynomials") {
  CHECK(jacobi_poly(0, 0.3, 0.7, 0.2) == 1.0);
  for (double t : {-1.0, -0.4, 0.0, 0.5, 1.0}) CHECK(jacobi_poly(1, 0, 0, t) == doctest::Approx(t).epsilon(1e-15));
  CHECK(jacobi_poly(5, 0.5, 1.5, 0.3) == doctest::Approx(oracle::jacobi_sum(5, 0.5, 1.5, 0.3)).epsilon(1e-12));
  CHECK(oracle::jacobi_sum(5, 0.5, 1.5, 0.3) == doctest::Approx(0.5180175).epsilon(1e-12));
  for (int n = 0; n <= 8; ++n)
    for (double t : {-0.9, 0.1, 0.77})
      CHECK(jacobi_poly(n, 2.5, 0.5, t) == doctest::Approx(oracle::jacobi_sum(n, 2.5, 0.5, t)).epsilon(1e-11).scale(1e-12));
}

TEST_CASE("Delves functions") {
  const double pi = std::numbers::pi;
  CHECK(delves({0, 0, 0}, pi / 4) == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-14));
  for (int n = 0; n <= 4; ++n) {
    const double scale = delves({0, 0, n}, 0.3) / std::sin(2 * (n + 1) * 0.3);
    for (double a : {0.1, 0.5, 0.9, 1.3}) CHECK(delves({0, 0, n}, a) == doctest::Approx(scale * std::sin(2 * (n + 1) * a)).epsilon(1e-12));
  }
  for (const DelvesIndex idx : {DelvesIndex{0, 0, 3}, DelvesIndex{1, 0, 2}, DelvesIndex{2, 3, 1}}) {
    CHECK(std::abs(delves(idx, 0.0)) < 1e-14);
    CHECK(std::abs(delves(idx, pi / 2)) < 1e-14);
  }
  CHECK(DelvesIndex{1, 2, 3}.nu() == 11);
}

TEST_CASE("Delves functions are orthonormal") {
  const auto [x, w] = gauss_legendre(80);
  for (const auto [l, lam] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{2, 1}}) {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
      for (int m = 0; m <= 10; ++m) {
        double s = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) {
          const double a = std::numbers::pi / 4 * (x[q] + 1.0);
          s += std::numbers::pi / 4 * w[q] * delves({l, lam, n}, a) * delves({l, lam, m}, a);
        }
        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Delves functions solve the hyperangular equation") {
  const double h = 1e-4;
  for (const DelvesIndex idx : {DelvesIndex{0, 0, 0}, DelvesIndex{0, 0, 2}, DelvesIndex{1, 0, 1}, DelvesIndex{1, 2, 0}})
    for (double a : {0.4, 0.8, 1.2}) {
      const double d = delves(idx, a);
      const double d2 = (delves(idx, a + h) - 2 * d + delves(idx, a - h)) / (h * h);
      const double c = std::cos(a), s = std::sin(a);
      const double lhs = -d2 + idx.ell * (idx.ell + 1.0) / (c * c) * d + idx.lambda * (idx.lambda + 1.0) / (s * s) * d;
      CHECK(lhs == doctest::Approx(idx.nu() * idx.nu() * d).epsilon(1e-5).scale(1e-5));
      CHECK(delves_second_derivative(idx, a) == doctest::Approx(d2).epsilon(1e-5).scale(1e-5));
    }
}
