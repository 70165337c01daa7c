// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "faddeev/config.hpp"
#include "faddeev/driver.hpp"
#include "faddeev/kinematics.hpp"
#include "faddeev/specfun.hpp"

using namespace faddeev;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen oracle values (tests/oracle_values.cpp, Gauss-Kronrod quadrature).
constexpr double kBeta2 = 1.000000000000000;
constexpr double kBeta4 = -0.5;
constexpr double kPaperDeuteron = -2.2306;

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double elapsed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig config(const std::string& name) { return load_config(std::string(FADDEEV_CONFIG_DIR) + "/" + name); }

RunConfig with_grid(RunConfig cfg, double extent, int n_rho, int n_alpha) {
  cfg.grid.rho_extent_fm = extent;
  cfg.grid.n_rho = n_rho;
  cfg.grid.n_alpha = n_alpha;
  return cfg;
}

struct TimedRun {
  EnergyRun run;
  double seconds = 0.0;
};

TimedRun timed(const ScatteringProblem& p, const RunConfig& cfg, double e) {
  TimedRun t;
  t.seconds = elapsed([&] { t.run = run_energy(p, cfg, e); });
  return t;
}

double unitarity_11(const EnergyRun& r) {
  const double s = std::abs(r.smatrix->S.scalar(0, 0));
  return std::abs(1.0 - s * s);
}

// Breakup amplitude of a column, all channels, linearly interpolated onto
// fixed angles.
Eigen::VectorXcd sample_breakup(const ColumnExtraction& col, const std::vector<double>& at) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(col.breakup.size() * at.size()));
  Eigen::Index k = 0;
  for (const auto& b : col.breakup)
    for (double a : at) {
      std::size_t i = 1;
      while (i + 1 < b.alpha.size() && b.alpha[i] < a) ++i;
      const double t = (a - b.alpha[i - 1]) / (b.alpha[i] - b.alpha[i - 1]);
      out(k++) = (1.0 - t) * b.T(static_cast<Eigen::Index>(i - 1)) + t * b.T(static_cast<Eigen::Index>(i));
    }
  return out;
}

void criterion1() {
  const auto ph = Physics::nd_benchmark();
  std::vector<BoundState> states;
  const double t = elapsed([&] { states = solve_bound_states(ph.potentials[ph.bound_channel], 0, ph.two_body); });
  const bool ok = states.size() == 1 && std::abs(states[0].energy() - kPaperDeuteron) <= 1e-3 && t < 10.0;
  verdict(1, ok,
          (states.empty() ? std::string("no bound state") : fmt("E_d = %.7f MeV", states[0].energy())) +
              fmt(" (paper -2.2306, tol 1e-3), %.2f s (< 10 s)", t));
}

void criterion2() {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> logm(std::log(0.1), std::log(10.0));
  double worst = 0.0;
  const double t = elapsed([&] {
    for (int n = 0; n < 1000; ++n) {
      const MassSystem ms(std::exp(logm(gen)), std::exp(logm(gen)), std::exp(logm(gen)));
      for (int i = 1; i <= 3; ++i) {
        const auto tau = tau_factors(ms, i);
        const double mu = reduced_masses(ms, i).mu_3b;
        worst = std::max(worst, std::abs(tau.tau_x * tau.tau_y - 2.0 * mu) / (2.0 * mu));
      }
    }
  });
  verdict(2, worst <= 1e-12, fmt("max relative |tau_x tau_y - 2 mu_3B| = %.2e over 1000 triples x 3 arrangements", worst) +
                                 fmt(" (tol 1e-12), %.3f s", t));
}

void criterion3(const RunConfig& desk) {
  const double phi = kPi / 3;
  double worst = 0.0;
  const double t = elapsed([&] {
    const auto basis = apply_alpha_dirichlet(build_alpha_grid(64, std::nullopt, 1.0));
    const auto pts = basis.collocation_points();
    const Eigen::MatrixXd interp = assemble_swave_kernel(basis, pts, phi) * basis.real_matrix(pts, 0).inverse();
    for (const auto& [nu, beta] : {std::pair{2, kBeta2}, std::pair{4, kBeta4}}) {
      Eigen::VectorXd d(static_cast<Eigen::Index>(pts.size()));
      for (std::size_t q = 0; q < pts.size(); ++q) d(static_cast<Eigen::Index>(q)) = delves({0, 0, nu / 2 - 1}, pts[q]);
      const Eigen::VectorXd jd = interp * d;
      const double big = d.cwiseAbs().maxCoeff();
      for (Eigen::Index q = 0; q < d.size(); ++q)
        if (std::abs(d(q)) >= 0.1 * big) worst = std::max(worst, std::abs(jd(q) - beta * d(q)) / std::abs(beta * d(q)));
    }
  });
  // Same property on the deuteron-adapted desk grid, for information.
  const ScatteringProblem prob(desk.physics, desk.grid);
  const auto sys = prob.system(-1.0);
  const Eigen::MatrixXd interp = sys.kernel() * sys.alpha_values().inverse();
  double adapted = 0.0;
  for (const auto& [nu, beta] : {std::pair{2, kBeta2}, std::pair{4, kBeta4}}) {
    Eigen::VectorXd d(sys.n_alpha());
    for (int q = 0; q < sys.n_alpha(); ++q) d(q) = delves({0, 0, nu / 2 - 1}, sys.alpha_points()[q]);
    const Eigen::VectorXd jd = interp * d;
    for (Eigen::Index q = 0; q < d.size(); ++q)
      if (std::abs(d(q)) >= 0.1 * d.cwiseAbs().maxCoeff())
        adapted = std::max(adapted, std::abs(jd(q) - beta * d(q)) / std::abs(beta * d(q)));
  }
  verdict(3, worst < 1e-4 && t < 1.0,
          fmt("nu = 2, 4 on uniform n_alpha = 64: max pointwise relative deviation %.2e (tol 1e-4)", worst) +
              fmt(", %.3f s (< 1 s)", t) + fmt("; deuteron-adapted desk grid: %.2e (info)", adapted));
}

void criterion4(const RunConfig& desk, const RunConfig& full) {
  bool ok = true;
  std::string detail;
  for (const auto& [cfg, tol, name] : {std::tuple{desk, 1e-3, "desk"}, std::tuple{full, 1e-4, "full"}}) {
    RunConfig c = cfg;
    c.incoming = {IncomingSelector{}};
    const ScatteringProblem prob(c.physics, c.grid);
    detail += std::string(name) + ":";
    for (double e : {-2.0, -1.0, -0.5}) {
      const auto r = timed(prob, c, e);
      if (!r.run.ok()) {
        ok = false;
        detail += fmt(" E=%g failed;", e);
        continue;
      }
      const double d = unitarity_11(r.run);
      const bool pass = d <= tol && (cfg.grid.n_rho != desk.grid.n_rho || r.seconds < 120.0);
      ok = ok && pass;
      detail += fmt(" E=%g", e) + fmt(" |1-|S11|^2|=%.2e", d) + fmt(" (%.1f s)", r.seconds) + (pass ? "" : " !") + ";";
    }
    detail += fmt(" tol %.0e. ", tol);
  }
  verdict(4, ok, detail);
}

void criterion7(const RunConfig& desk) {
  const ScatteringProblem prob(desk.physics, desk.grid);
  const double e = -1.0;
  const auto sys = prob.system(e);
  const Field rhs = prob.build_rhs(sys, prob.nd_incoming(e));
  const KroneckerPreconditioner pc(sys);
  SolverOptions with = desk.solver;
  with.throw_on_failure = false;
  const auto a = solve(sys, rhs, with, &pc);
  SolverOptions without = with;
  without.precondition = false;
  without.gmres.max_iterations = 1000;
  const auto b = solve(sys, rhs, without);
  const double ratio = static_cast<double>(b.iterations) / std::max(1, a.iterations);
  const bool ok = a.converged && a.iterations <= 50 && ratio >= 10.0;
  verdict(7, ok,
          fmt("desk E = -1: preconditioned %.0f iterations (limit 50)", a.iterations) +
              fmt(", unpreconditioned %.0f", b.iterations) + (b.converged ? "" : fmt(" without converging (residual %.2e)", b.residual)) +
              fmt(", ratio >= %.1f (limit 10)", ratio) + fmt(", tol %.0e", with.gmres.tol));
}

void criterion8(double e_d) {
  const double a = elab_to_cm(14.1, e_d), b = elab_to_cm(4.0, e_d);
  const bool exact = a == e_d + 2.0 / 3.0 * 14.1 && b == e_d + 2.0 / 3.0 * 4.0;
  // The paper prints two decimals; 0.4360 is shown there truncated, 7.1693 rounded.
  const auto printed = [](double v, double paper) {
    return std::abs(std::round(v * 100.0) / 100.0 - paper) < 1e-9 || std::abs(std::trunc(v * 100.0) / 100.0 - paper) < 1e-9;
  };
  const bool ok = exact && printed(a, 7.17) && printed(b, 0.43);
  verdict(8, ok, fmt("E_lab 14.1 -> %.4f MeV (paper 7.17)", a) + fmt(", 4 -> %.4f MeV (paper 0.43)", b) +
                     fmt(", E = E_d + (2/3) E_lab exactly with E_d = %.6f; matched to the printed two decimals", e_d));
}

}  // namespace

int main() {
  const RunConfig desk = config("desk.ini");
  const RunConfig production = config("production.ini");

  criterion1();
  criterion2();
  criterion3(desk);
  criterion4(desk, production);

  // Production runs above breakup, shared by criteria 5, 6 and 9.
  const ScatteringProblem prod(production.physics, production.grid);
  std::map<double, TimedRun> runs;
  for (double el : {4.0, 14.1}) {
    runs[el] = timed(prod, production, elab_to_cm(el, prod.bound_energy()));
    std::printf("  production E_lab = %g MeV: %.0f s\n", el, runs[el].seconds);
  }

  {
    bool ok = true;
    int checked = 0;
    double worst_c3 = 0.0, worst_c = 0.0;
    for (const auto& [el, r] : runs)
      for (const auto& c : r.run.columns) {
        if (!c.converged || !c.extraction) {
          ok = false;
          continue;
        }
        ++checked;
        const auto& x = *c.extraction;
        double col_c = 0.0;
        for (const auto& b : x.breakup) col_c = std::max(col_c, b.regular_ratio());
        std::printf("  E_lab %g %s: |c3|/|c2| = %.2e, |C|/|T| = %.2e\n", el, c.selector.str().c_str(),
                    x.fit.c3_ratio(), col_c);
        worst_c3 = std::max(worst_c3, x.fit.c3_ratio());
        worst_c = std::max(worst_c, col_c);
      }
    ok = ok && checked > 0 && worst_c3 < 1e-2 && worst_c < 5e-2;
    verdict(5, ok, fmt("%.0f converged above-breakup columns", checked) + fmt(": max |c3|/|c2| = %.2e (tol 1e-2)", worst_c3) +
                       fmt(", max_alpha<alpha_c |C|/|T| = %.2e (tol 5e-2)", worst_c));
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& [el, r] : runs) {
      if (!r.run.defects) {
        ok = false;
        detail += fmt("E_lab %g: no complete S-matrix; ", el);
        continue;
      }
      const auto& d = *r.run.defects;
      ok = ok && d.eta_u <= 3e-2 && d.eta_r <= 3e-2;
      detail += fmt("E_lab %g:", el) + fmt(" eta_U = %.2e", d.eta_u) + fmt(", eta_R = %.2e; ", d.eta_r);
    }
    verdict(6, ok, detail + "tol 3e-2");
  }

  criterion7(desk);
  criterion8(prod.bound_energy());

  {
    // Three refinement levels at fixed extent, E_lab = 14.1, nd column.
    RunConfig base = production;
    base.incoming = {IncomingSelector{}};
    const double e = elab_to_cm(14.1, prod.bound_energy());
    const std::vector<std::pair<int, int>> levels{{250, 128}, {376, 192}, {500, 256}};
    std::vector<cplx> s11;
    std::vector<ColumnExtraction> cols;
    bool ok = true;
    for (const auto& [nr, na] : levels) {
      EnergyRun r;
      if (nr == production.grid.n_rho && na == production.grid.n_alpha) {
        r = runs[14.1].run;
      } else {
        const RunConfig c = with_grid(base, base.grid.rho_extent_fm, nr, na);
        const ScatteringProblem p(c.physics, c.grid);
        r = run_energy(p, c, e);
      }
      if (!r.ok() || r.columns.empty() || !r.columns[0].extraction) {
        ok = false;
        break;
      }
      cols.push_back(*r.columns[0].extraction);
      s11.push_back(r.smatrix->S.scalar(0, 0));
    }
    std::string detail;
    if (ok && cols.size() == 3) {
      double alpha_c = kPi / 2;
      for (const auto& c : cols)
        for (const auto& b : c.breakup) alpha_c = std::min(alpha_c, b.alpha_c);
      std::vector<double> at;
      for (int k = 0; k < 24; ++k) at.push_back(0.1 + (alpha_c - 0.15) * k / 23.0);
      const Eigen::VectorXcd t0 = sample_breakup(cols[0], at), t1 = sample_breakup(cols[1], at),
                             t2 = sample_breakup(cols[2], at);
      const double ds1 = std::abs(s11[1] - s11[0]), ds2 = std::abs(s11[2] - s11[1]);
      const double dt1 = (t1 - t0).norm() / t2.norm(), dt2 = (t2 - t1).norm() / t2.norm();
      // Endpoint zeros of the finest breakup amplitude, and the regular part beyond alpha_c.
      double first = 0.0, last = 0.0, peak = 0.0, c_in = 0.0, c_out = 0.0, t_in = 0.0;
      for (const auto& b : cols[2].breakup) {
        peak = std::max(peak, b.T.cwiseAbs().maxCoeff());
        first = std::max(first, std::abs(b.T(0)));
        last = std::max(last, std::abs(b.T(b.T.size() - 1)));
        for (std::size_t i = 0; i < b.alpha.size(); ++i) {
          const auto k = static_cast<Eigen::Index>(i);
          if (b.alpha[i] > b.alpha_c) {
            c_out = std::max(c_out, std::abs(b.C(k)));
          } else {
            c_in = std::max(c_in, std::abs(b.C(k)));
            t_in = std::max(t_in, std::abs(b.T(k)));
          }
        }
      }
      const bool endpoints = first < 5e-2 * peak && last < 5e-2 * peak;
      ok = ds2 < ds1 && dt2 < dt1 && endpoints;
      detail = fmt("|dS11| %.2e", ds1) + fmt(" -> %.2e", ds2) + fmt(", |dT|/|T| %.2e", dt1) + fmt(" -> %.2e", dt2) +
               fmt("; |T| at first/last alpha %.2e", first / peak) + fmt("/%.2e of max", last / peak) +
               fmt("; max|C|/max|T| below alpha_c %.2e", t_in > 0 ? c_in / t_in : 0.0) +
               fmt(", beyond alpha_c %.2e (degradation, reported)", t_in > 0 ? c_out / t_in : 0.0) +
               fmt(", alpha_c = %.4f", alpha_c);
    } else {
      detail = "a refinement level failed to produce an nd column";
    }
    verdict(9, ok, "E_lab 14.1, n_rho x n_alpha = 250x128, 376x192, 500x256: " + detail);
  }

  std::printf("%d criteria failed\n", failures);
  return failures;
}
