#pragma once

#include <complex>

namespace faddeev {

using cplx = std::complex<double>;

// Riccati-Bessel functions, z * j_l(z) and friends. The outgoing function is
// h+ = n + i j with n_0 = cos z, so h+_0 = exp(iz) and f = j + T h+ gives
// S = 1 + 2iT.
double riccati_j(int ell, double z);
double riccati_n(int ell, double z);
double riccati_j_prime(int ell, double z);
cplx riccati_h_plus(int ell, double z);
cplx riccati_h_plus_prime(int ell, double z);

// Cylindrical functions of real order nu >= 0.
double bessel_J(double nu, double z);
double bessel_Y(double nu, double z);
cplx hankel_plus(double nu, double z);
/// d/dz H+_nu(z)
cplx hankel_plus_prime(double nu, double z);
double bessel_J_prime(double nu, double z);

/// P_n^{(a,b)}(t) by the three-term recurrence.
double jacobi_poly(int n, double a, double b, double t);

struct DelvesIndex {
  int ell = 0;
  int lambda = 0;
  int n = 0;
  int nu() const { return ell + lambda + 2 * (n + 1); }
};

/// Unit-L2-normalised Delves function on [0, pi/2].
double delves(const DelvesIndex& idx, double alpha);
/// Second derivative in alpha, by differentiating the closed form for
/// ell = lambda = 0 and by central differences otherwise.
double delves_second_derivative(const DelvesIndex& idx, double alpha);
/// Normalisation constant N of the Delves function.
double delves_norm(const DelvesIndex& idx);

}  // namespace faddeev
