#include "faddeev/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace faddeev {

namespace {

void require_positive(double z, const char* what) {
  if (!(z > 0.0)) throw std::domain_error(std::string(what) + ": argument must be > 0");
}

}  // namespace

double riccati_j(int ell, double z) {
  if (ell < 0) throw std::domain_error("riccati_j: ell must be >= 0");
  if (z == 0.0) return 0.0;
  if (ell == 0) return std::sin(z);
  return z * std::sph_bessel(static_cast<unsigned>(ell), z);
}

double riccati_n(int ell, double z) {
  if (ell < 0) throw std::domain_error("riccati_n: ell must be >= 0");
  if (ell == 0) {
    if (z < 0.0) throw std::domain_error("riccati_n: argument must be >= 0");
    return std::cos(z);
  }
  require_positive(z, "riccati_n");
  return -z * std::sph_neumann(static_cast<unsigned>(ell), z);
}

double riccati_j_prime(int ell, double z) {
  if (ell == 0) return std::cos(z);
  // u_l' = u_{l-1} - l u_l / z
  if (z == 0.0) return 0.0;
  return riccati_j(ell - 1, z) - ell * riccati_j(ell, z) / z;
}

cplx riccati_h_plus(int ell, double z) {
  if (ell == 0) {
    if (z < 0.0) throw std::domain_error("riccati_h_plus: argument must be >= 0");
    return std::polar(1.0, z);
  }
  require_positive(z, "riccati_h_plus");
  return {riccati_n(ell, z), riccati_j(ell, z)};
}

cplx riccati_h_plus_prime(int ell, double z) {
  if (ell == 0) {
    if (z < 0.0) throw std::domain_error("riccati_h_plus_prime: argument must be >= 0");
    return cplx(0.0, 1.0) * std::polar(1.0, z);
  }
  require_positive(z, "riccati_h_plus_prime");
  return riccati_h_plus(ell - 1, z) - static_cast<double>(ell) * riccati_h_plus(ell, z) / z;
}

double bessel_J(double nu, double z) {
  if (nu < 0.0) throw std::domain_error("bessel_J: order must be >= 0");
  if (z < 0.0) throw std::domain_error("bessel_J: argument must be >= 0");
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return std::cyl_bessel_j(nu, z);
}

double bessel_Y(double nu, double z) {
  if (nu < 0.0) throw std::domain_error("bessel_Y: order must be >= 0");
  require_positive(z, "bessel_Y");
  return std::cyl_neumann(nu, z);
}

cplx hankel_plus(double nu, double z) {
  require_positive(z, "hankel_plus");
  return {bessel_J(nu, z), bessel_Y(nu, z)};
}

double bessel_J_prime(double nu, double z) {
  if (nu == 0.0) return -bessel_J(1.0, z);
  // C_nu' = C_{nu-1} - nu C_nu / z holds for real nu > 0.
  if (z == 0.0 && nu >= 1.0) return nu == 1.0 ? 0.5 : 0.0;
  require_positive(z, "bessel_J_prime");
  return std::cyl_bessel_j(nu - 1.0, z) - nu * bessel_J(nu, z) / z;
}

cplx hankel_plus_prime(double nu, double z) {
  require_positive(z, "hankel_plus_prime");
  if (nu == 0.0) return -hankel_plus(1.0, z);
  const cplx lower{std::cyl_bessel_j(nu - 1.0, z), std::cyl_neumann(nu - 1.0, z)};
  return lower - nu * hankel_plus(nu, z) / z;
}

double jacobi_poly(int n, double a, double b, double t) {
  if (n < 0) throw std::domain_error("jacobi_poly: degree must be >= 0");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (a - b + (a + b + 2.0) * t);
  for (int k = 2; k <= n; ++k) {
    const double kk = k;
    const double s = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (a * a - b * b);
    const double c3 = (s - 2.0) * (s - 1.0) * s;
    const double c4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
    const double p2 = ((c2 + c3 * t) * p1 - c4 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double delves_norm(const DelvesIndex& idx) {
  const double a = idx.lambda + 0.5;
  const double b = idx.ell + 0.5;
  const int n = idx.n;
  // Jacobi weight norm h_n, and the substitution t = cos(2 alpha) contributes 2^-(l+lambda+3).
  const double log_h = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
                       std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                       std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0);
  const double log_int = log_h - (idx.ell + idx.lambda + 3) * std::log(2.0);
  return std::exp(-0.5 * log_int);
}

double delves(const DelvesIndex& idx, double alpha) {
  if (idx.ell < 0 || idx.lambda < 0 || idx.n < 0) throw std::domain_error("delves: negative index");
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return delves_norm(idx) * std::pow(c, idx.ell + 1) * std::pow(s, idx.lambda + 1) *
         jacobi_poly(idx.n, idx.lambda + 0.5, idx.ell + 0.5, std::cos(2.0 * alpha));
}

double delves_second_derivative(const DelvesIndex& idx, double alpha) {
  if (idx.ell == 0 && idx.lambda == 0) {
    // D = sqrt(4/pi) sin(nu alpha) for the s-wave family.
    const double nu = idx.nu();
    return -nu * nu * 2.0 / std::sqrt(std::numbers::pi) * std::sin(nu * alpha);
  }
  const double h = 1e-4;
  return (delves(idx, alpha + h) - 2.0 * delves(idx, alpha) + delves(idx, alpha - h)) / (h * h);
}

}  // namespace faddeev
