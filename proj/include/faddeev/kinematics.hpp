#pragma once

#include <array>

namespace faddeev {

/// Three particle masses. Energies are MeV, lengths fm, hbar = 1, so a mass
/// carries units of MeV^-1 fm^-2 (m = 1 / (hbar^2/m)).
struct MassSystem {
  double m1 = 1.0;
  double m2 = 1.0;
  double m3 = 1.0;

  MassSystem() = default;
  MassSystem(double a, double b, double c);

  /// Three equal masses m = 1 / hbar2_over_m.
  static MassSystem equal(double hbar2_over_m);

  double mass(int i) const;  // i in {1,2,3}
  double total() const { return m1 + m2 + m3; }
  bool all_equal(double rel_tol = 1e-14) const;
};

struct ReducedMasses {
  double mu_pair;       // mu_jk
  double mu_spectator;  // mu_i,jk
  double mu_3b;         // sqrt(prod m / sum m)
};

struct TauFactors {
  double tau_x;
  double tau_y;
};

struct PolarPoint {
  double rho = 0.0;
  double alpha = 0.0;
};

struct CartPoint {
  double x = 0.0;
  double y = 0.0;
};

ReducedMasses reduced_masses(const MassSystem& ms, int i);
TauFactors tau_factors(const MassSystem& ms, int i);

PolarPoint polar_from_cart(CartPoint p);
CartPoint cart_from_polar(PolarPoint p);

/// Linear map between mass-scaled Jacobi vectors of arrangement i and j:
///   x_j = a * x_i + b * y_i,   y_j = c * x_i + d * y_i
/// The matrix is orthogonal, which is what makes rho arrangement-independent.
struct RotationCoefficients {
  double a, b, c, d;
};

RotationCoefficients rotation_coefficients(const MassSystem& ms, int i, int j);

/// Norms (x_j, y_j) for Jacobi norms (x_i, y_i) with u = cos(angle(x_i, y_i)).
CartPoint rotate_arrangement(const MassSystem& ms, int i, int j, CartPoint p, double u);
CartPoint rotate_arrangement(const MassSystem& ms, int i, int j, PolarPoint p, double u);

/// Kinematic rotation angle phi in (0, pi/2]: |a| = cos(phi), |b| = sin(phi).
/// Equal masses give pi/3.
double rotation_angle(const MassSystem& ms, int i, int j);

}  // namespace faddeev
