#pragma once

// Reference computations that share no code with the library: Boost.Math
// special functions, explicit sums, adaptive quadrature and shooting.

#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

double bessel_j(double nu, double z);
double bessel_y(double nu, double z);
/// z j_l(z) and z y_l(z) from the spherical functions.
double riccati_j(int ell, double z);
double riccati_y(int ell, double z);

/// P_n^{(a,b)}(t) from the explicit binomial sum.
double jacobi_sum(int n, double a, double b, double t);

/// Equal-mass s-wave Jacobi transform from one arrangement to another,
/// evaluated as the u-average over the angle between the Jacobi vectors:
///   J[h](alpha) = (x y / 2) int_{-1}^{1} du h(alpha') / (x' y')
/// with rho = 1, x = cos(alpha), y = sin(alpha), adaptive Gauss-Kronrod.
double jacobi_transform(const std::function<double(double)>& h, double alpha);

/// Delves eigenvalue of sin(nu alpha) under jacobi_transform, as the ratio
/// at several angles (returns the mean; `spread` gets max deviation).
double delves_beta(int nu, double* spread = nullptr);

/// Pair potential in fm: sum s_i exp(-mu_i r) / r.
struct Yukawa {
  std::vector<std::pair<double, double>> terms;
  double operator()(double r) const;
};

/// S-wave bound state energies (MeV) of -hbar2/m u'' + V u = E u in the
/// relative coordinate (reduced mass m/2), by Numerov shooting with node
/// counting and bisection. Empty when there is none.
std::vector<double> bound_energies(const Yukawa& v, double hbar2_over_m, double r_max = 40.0, int steps = 400000);

}  // namespace oracle
