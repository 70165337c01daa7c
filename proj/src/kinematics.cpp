#include "faddeev/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace faddeev {

namespace {

void check_index(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("arrangement index must be 1, 2 or 3");
}

// (j, k) following i cyclically.
std::array<int, 2> partners(int i) {
  return {i % 3 + 1, (i + 1) % 3 + 1};
}

}  // namespace

MassSystem::MassSystem(double a, double b, double c) : m1(a), m2(b), m3(c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw std::invalid_argument("masses must be strictly positive");
}

MassSystem MassSystem::equal(double hbar2_over_m) {
  if (!(hbar2_over_m > 0.0)) throw std::invalid_argument("hbar^2/m must be positive");
  const double m = 1.0 / hbar2_over_m;
  return {m, m, m};
}

double MassSystem::mass(int i) const {
  check_index(i);
  return i == 1 ? m1 : (i == 2 ? m2 : m3);
}

bool MassSystem::all_equal(double rel_tol) const {
  const double s = std::abs(m1);
  return std::abs(m1 - m2) <= rel_tol * s && std::abs(m1 - m3) <= rel_tol * s;
}

ReducedMasses reduced_masses(const MassSystem& ms, int i) {
  check_index(i);
  const auto [j, k] = partners(i);
  const double mi = ms.mass(i), mj = ms.mass(j), mk = ms.mass(k);
  const double sum = mi + mj + mk;
  return {mj * mk / (mj + mk), mi * (mj + mk) / sum, std::sqrt(mi * mj * mk / sum)};
}

TauFactors tau_factors(const MassSystem& ms, int i) {
  const auto r = reduced_masses(ms, i);
  return {std::sqrt(2.0 * r.mu_pair), std::sqrt(2.0 * r.mu_spectator)};
}

PolarPoint polar_from_cart(CartPoint p) {
  const double rho = std::hypot(p.x, p.y);
  // atan2 keeps alpha = pi/2 at x = 0 and alpha = 0 at y = 0; the origin maps to alpha = 0.
  const double alpha = (rho == 0.0) ? 0.0 : std::atan2(p.y, p.x);
  return {rho, alpha};
}

CartPoint cart_from_polar(PolarPoint p) {
  return {p.rho * std::cos(p.alpha), p.rho * std::sin(p.alpha)};
}

RotationCoefficients rotation_coefficients(const MassSystem& ms, int i, int j) {
  check_index(i);
  check_index(j);
  if (i == j) return {1.0, 0.0, 0.0, 1.0};

  // Express particle positions (centre of mass at the origin) through the
  // Jacobi vectors of arrangement i, then read off those of arrangement j.
  const auto pos = [&](double xi, double yi) {
    const auto [j_, k_] = partners(i);
    const auto ti = tau_factors(ms, i);
    const double mi = ms.mass(i), mj = ms.mass(j_), mk = ms.mass(k_);
    const double rjk = xi / ti.tau_x;   // r_j - r_k
    const double ri_c = yi / ti.tau_y;  // r_i - R_jk
    // R_jk = centre of pair; total centre of mass at 0: mi r_i + (mj+mk) R_jk = 0.
    const double Rjk = -mi * ri_c / (mi + mj + mk);
    std::array<double, 4> r{};
    r[i] = Rjk + ri_c;
    r[j_] = Rjk + mk / (mj + mk) * rjk;
    r[k_] = Rjk - mj / (mj + mk) * rjk;
    return r;
  };
  const auto jacobi = [&](const std::array<double, 4>& r) {
    const auto [jj, kk] = partners(j);
    const auto tj = tau_factors(ms, j);
    const double mj = ms.mass(jj), mk = ms.mass(kk);
    const double xj = tj.tau_x * (r[jj] - r[kk]);
    const double yj = tj.tau_y * (r[j] - (mj * r[jj] + mk * r[kk]) / (mj + mk));
    return std::array<double, 2>{xj, yj};
  };
  const auto ex = jacobi(pos(1.0, 0.0));
  const auto ey = jacobi(pos(0.0, 1.0));
  return {ex[0], ey[0], ex[1], ey[1]};
}

CartPoint rotate_arrangement(const MassSystem& ms, int i, int j, CartPoint p, double u) {
  if (!(std::abs(u) <= 1.0)) throw std::domain_error("angle cosine u must lie in [-1, 1]");
  const auto r = rotation_coefficients(ms, i, j);
  const double xy = p.x * p.y * u;
  const double xj2 = r.a * r.a * p.x * p.x + r.b * r.b * p.y * p.y + 2.0 * r.a * r.b * xy;
  const double yj2 = r.c * r.c * p.x * p.x + r.d * r.d * p.y * p.y + 2.0 * r.c * r.d * xy;
  return {std::sqrt(std::max(xj2, 0.0)), std::sqrt(std::max(yj2, 0.0))};
}

CartPoint rotate_arrangement(const MassSystem& ms, int i, int j, PolarPoint p, double u) {
  return rotate_arrangement(ms, i, j, cart_from_polar(p), u);
}

double rotation_angle(const MassSystem& ms, int i, int j) {
  const auto r = rotation_coefficients(ms, i, j);
  return std::atan2(std::abs(r.b), std::abs(r.a));
}

}  // namespace faddeev
