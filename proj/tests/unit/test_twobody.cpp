#include <cmath>

#include "../oracles.hpp"
#include "doctest.h"
#include "faddeev/kinematics.hpp"
#include "faddeev/twobody.hpp"

using namespace faddeev;

namespace {

const double kHbar2 = 41.47;
double tau_x() { return tau_factors(MassSystem::equal(kHbar2), 1).tau_x; }
PairPotential singlet() { return {{{1438.72, 3.11}, {-513.968, 1.55}}, tau_x()}; }
PairPotential triplet() { return {{{1438.72, 3.11}, {-626.885, 1.55}}, tau_x()}; }

}  // namespace

TEST_CASE("Yukawa potentials") {
  const oracle::Yukawa v1{{{1438.72, 3.11}, {-513.968, 1.55}}};
  CHECK(singlet().at_fm(1.0) == doctest::Approx(v1(1.0)).epsilon(1e-14));
  CHECK(singlet().at_fm(1.0) == doctest::Approx(-44.9203801446).epsilon(1e-10));
  for (double r : {0.3, 1.0, 2.5, 7.0}) {
    CHECK(triplet().at_fm(r) - singlet().at_fm(r) == doctest::Approx(-112.917 * std::exp(-1.55 * r) / r).epsilon(1e-12));
    CHECK(singlet()(r * tau_x()) == doctest::Approx(singlet().at_fm(r)).epsilon(1e-14));
  }
  CHECK(std::abs(singlet().at_fm(200.0)) < 1e-100);
  CHECK_THROWS_AS(singlet()(0.0), std::domain_error);
  CHECK_THROWS_AS(singlet()(-1.0), std::domain_error);
}

TEST_CASE("deuteron binding energy") {
  const auto states = solve_bound_states(triplet(), 0, TwoBodyGrid{});
  REQUIRE(states.size() == 1);
  const double shooting = oracle::bound_energies({{{1438.72, 3.11}, {-626.885, 1.55}}}, kHbar2).at(0);
  CHECK(shooting == doctest::Approx(-2.2306876).epsilon(1e-7));
  CHECK(std::abs(states[0].energy() - (-2.2306)) < 1e-3);
  CHECK(std::abs(states[0].energy() - shooting) < 1e-4);
  CHECK(states[0].nodes() == 0);
}

TEST_CASE("no bound state without binding") {
  CHECK(oracle::bound_energies({{{1438.72, 3.11}, {-513.968, 1.55}}}, kHbar2).empty());
  CHECK(solve_bound_states(singlet(), 0, TwoBodyGrid{}).empty());
  CHECK(solve_bound_states(PairPotential{{}, tau_x()}, 0, TwoBodyGrid{}).empty());
}

TEST_CASE("bound state normalisation, origin and tail") {
  const auto d = solve_bound_states(triplet(), 0, TwoBodyGrid{}).at(0);
  CHECK(d.value(0.0) == 0.0);
  const auto [t, v] = kinetic_and_potential(d, triplet());
  CHECK(t + v == doctest::Approx(d.energy()).epsilon(1e-6));
  // Unit norm by composite Simpson on the spline part plus the analytic tail.
  const int n = 20000;
  const double xm = d.x_max();
  double norm = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = xm * i / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    norm += w * d.value(x) * d.value(x);
  }
  norm *= xm / n / 3.0;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
  // Exponential decay with kappa = sqrt(-E) well inside the spline region.
  const double x1 = 0.3 * xm, x2 = 0.5 * xm;
  const double slope = std::log(d.value(x2) / d.value(x1)) / (x2 - x1);
  CHECK(slope == doctest::Approx(-d.kappa()).epsilon(1e-2));
}

TEST_CASE("bound state is stable under grid refinement") {
  TwoBodyGrid fine;
  fine.intervals = 600;
  const double e0 = solve_bound_states(triplet(), 0, TwoBodyGrid{}).at(0).energy();
  const double e1 = solve_bound_states(triplet(), 0, fine).at(0).energy();
  CHECK(std::abs(e1 - e0) < 1e-4);
}

TEST_CASE("potential range") {
  const auto d = solve_bound_states(triplet(), 0, TwoBodyGrid{}).at(0);
  const double b3 = potential_range(d, 1e-3), b2 = potential_range(d, 1e-2), b1 = potential_range(d, 0.5);
  CHECK(b3 > b2);
  CHECK(b2 > b1);
  CHECK(b3 < d.x_max());
  // Threshold 1 gives the position of the maximum.
  double xmax = 0.0, vmax = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = d.x_max() * i / 20000;
    if (std::abs(d.value(x)) > vmax) {
      vmax = std::abs(d.value(x));
      xmax = x;
    }
  }
  CHECK(potential_range(d, 1.0) == doctest::Approx(xmax).epsilon(1e-12));
  CHECK_THROWS(potential_range(d, 0.0));
}
