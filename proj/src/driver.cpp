#include "faddeev/driver.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>

namespace faddeev {

namespace {

namespace fs = std::filesystem;

bool column_open(const IncomingSelector& s, double energy, double bound_energy) {
  return s.bound ? energy > bound_energy : energy > 0.0;
}

void check_selector(const IncomingSelector& s, int n_channels) {
  if (!s.bound && s.n > n_channels)
    throw std::invalid_argument("incoming state " + s.str() + " is beyond the " + std::to_string(n_channels) +
                                " three-body channels");
}

void write_config(const RunConfig& cfg) { write_text(fs::path(cfg.output) / "config.ini", render_config(cfg)); }

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

json column_summary(const ColumnRun& c) {
  json j;
  j["column"] = c.selector.str();
  j["iterations"] = c.iterations;
  j["residual"] = c.residual;
  j["converged"] = c.converged;
  if (c.extraction) {
    j["c3_ratio"] = c.extraction->fit.c3_ratio();
    double worst = 0.0;
    for (const auto& b : c.extraction->breakup) worst = std::max(worst, b.regular_ratio());
    j["breakup_ratio"] = worst;
  }
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

json scatter_summary(const EnergyRun& run) {
  json j;
  j["energy_cm"] = run.energy;
  j["energy_lab"] = run.energy_lab;
  j["columns"] = json::array();
  for (const auto& c : run.columns) j["columns"].push_back(column_summary(c));
  if (run.defects) j["defects"] = {{"eta_u", run.defects->eta_u}, {"eta_r", run.defects->eta_r}};
  if (!run.error.empty()) j["error"] = run.error;
  return j;
}

void write_energy_files(const EnergyRun& run, double bound_energy, const fs::path& dir, const std::string& stem) {
  if (run.smatrix) write_text(dir / (stem + ".json"), dump_json(smatrix_to_json(*run.smatrix, bound_energy)));
  for (const auto& c : run.columns)
    if (c.extraction && !c.extraction->breakup.empty())
      write_text(dir / (stem + "_breakup_" + (c.selector.bound ? std::string("nd") : "nnp" + std::to_string(c.selector.n)) +
                        ".csv"),
                 breakup_csv(*c.extraction));
}

}  // namespace

EnergyRun run_energy(const ScatteringProblem& problem, const RunConfig& cfg, double energy) {
  EnergyRun run;
  run.energy = energy;
  run.energy_lab = cm_to_elab(energy, problem.bound_energy());
  try {
    const FaddeevSystem sys = problem.system(energy);
    std::optional<KroneckerPreconditioner> pc;
    if (cfg.solver.precondition) pc.emplace(sys);
    SolverOptions opts = cfg.solver;
    opts.throw_on_failure = false;

    const int n_ch = sys.n_channels();
    const int n_cols = energy > 0.0 ? 1 + n_ch : 1;
    std::vector<std::optional<ColumnExtraction>> columns(n_cols);
    for (const auto& sel : cfg.incoming) {
      check_selector(sel, n_ch);
      if (!column_open(sel, energy, problem.bound_energy())) continue;
      ColumnRun col;
      col.selector = sel;
      try {
        const IncomingState in = sel.bound ? problem.nd_incoming(energy) : problem.cylindrical_incoming(energy, sel.n);
        const SolveResult r = solve(sys, problem.build_rhs(sys, in), opts, pc ? &*pc : nullptr);
        col.iterations = r.iterations;
        col.residual = r.residual;
        col.converged = r.converged;
        col.history = r.history;
        if (!r.converged) throw std::runtime_error("GMRES did not converge (residual " + format_double(r.residual) + ")");
        col.extraction = extract_column(problem, sys, r.coefficients, in, cfg.extraction);
        columns[sel.bound ? 0 : sel.n] = col.extraction;
      } catch (const std::exception& e) {
        col.error = e.what();
      }
      run.columns.push_back(std::move(col));
    }
    run.smatrix = build_smatrix(problem, sys, energy, columns, cfg.extraction);
    if (!run.smatrix->partial()) run.defects = defects(run.smatrix->S, run.smatrix->incident);
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

std::vector<json> diagnostics(const EnergyRun& run) {
  std::vector<json> out;
  for (const auto& c : run.columns) {
    json j;
    j["energy_cm"] = run.energy;
    j["energy_lab"] = run.energy_lab;
    j["column"] = c.selector.str();
    j["iterations"] = c.iterations;
    j["residual"] = c.residual;
    j["converged"] = c.converged;
    j["history"] = c.history;
    if (!c.error.empty()) j["error"] = c.error;
    out.push_back(std::move(j));
  }
  if (!run.error.empty()) out.push_back({{"energy_cm", run.energy}, {"error", run.error}});
  return out;
}

std::vector<double> scan_energies(const RunConfig& cfg, double bound_energy) {
  std::vector<double> out = cfg.energies;
  for (double e : cfg.lab_energies) out.push_back(elab_to_cm(e, bound_energy));
  for (double e : cfg.scan.points()) out.push_back(cfg.scan.lab ? elab_to_cm(e, bound_energy) : e);
  return out;
}

int cmd_bound(const RunConfig& cfg, std::ostream& log) {
  const Physics& ph = cfg.physics;
  json report;
  report["channels"] = json::array();
  std::string csv = "channel,x,r_fm,phi\n";
  for (int a = 0; a < ph.channels.size(); ++a) {
    const auto& ch = ph.channels.channels[a];
    const auto states = solve_bound_states(ph.potentials[a], ch.ell, ph.two_body);
    json entry{{"name", ch.name}, {"energies", json::array()}};
    if (states.empty()) {
      log << ch.name << ": no bound state\n";
    }
    for (const auto& s : states) {
      log << ch.name << ": E = " << std::setprecision(7) << s.energy() << " MeV (" << s.nodes() << " nodes)\n";
      entry["energies"].push_back(s.energy());
    }
    if (!states.empty()) {
      const auto& s = states.front();
      const double tx = ph.potentials[a].tau_x;
      const int samples = 600;
      for (int i = 1; i <= samples; ++i) {
        const double x = s.x_max() * i / samples;
        csv += ch.name + ',' + format_double(x) + ',' + format_double(x / tx) + ',' + format_double(s.value(x)) + '\n';
      }
    }
    report["channels"].push_back(entry);
  }
  write_config(cfg);
  write_text(fs::path(cfg.output) / "bound.json", dump_json(report));
  write_text(fs::path(cfg.output) / "bound_states.csv", csv);
  return 0;
}

int cmd_scatter(const RunConfig& cfg, std::optional<double> energy, std::optional<double> lab_energy,
                std::ostream& log) {
  const ScatteringProblem problem(cfg.physics, cfg.grid);
  const double ed = problem.bound_energy();
  double e = 0.0;
  if (energy) e = *energy;
  else if (lab_energy) e = elab_to_cm(*lab_energy, ed);
  else {
    RunConfig listed = cfg;
    listed.scan = {};
    const auto all = scan_energies(listed, ed);
    if (all.size() != 1) {
      log << "error: scatter needs exactly one energy (--energy, --elab, or one entry in [run])\n";
      return 2;
    }
    e = all.front();
  }
  if (e == 0.0) {
    log << "error: E = 0 (breakup threshold) is not supported\n";
    return 2;
  }
  for (const auto& sel : cfg.incoming) {
    check_selector(sel, cfg.physics.channels.size());
    if (!column_open(sel, e, ed)) {
      log << "error: incoming state " << sel.str() << " is closed at E = " << e << " MeV\n";
      return 2;
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  const EnergyRun run = run_energy(problem, cfg, e);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path out(cfg.output);
  write_config(cfg);
  std::string lines;
  for (const auto& d : diagnostics(run)) lines += dump_json(d, 0);
  write_text(out / "diagnostics.jsonl", lines);
  write_energy_files(run, ed, out, "smatrix");
  write_text(out / "summary.json", dump_json(scatter_summary(run)));

  log << "E = " << std::setprecision(10) << e << " MeV (E_lab = " << run.energy_lab << " MeV), " << std::setprecision(3)
      << secs << " s\n";
  for (const auto& c : run.columns) {
    log << "  " << c.selector.str() << ": " << c.iterations << " iterations, residual " << c.residual;
    if (!c.error.empty()) log << ", error: " << c.error;
    log << '\n';
  }
  if (!run.error.empty()) {
    log << "error: " << run.error << '\n';
    return 1;
  }
  if (!run.smatrix->solved.at(0)) return 1;
  const cplx s11 = run.smatrix->S.scalar(0, 0);
  log << std::setprecision(10) << "  S11 = " << s11.real() << (s11.imag() < 0 ? " - " : " + ") << std::abs(s11.imag())
      << "i, |S11| = " << std::abs(s11) << '\n';
  if (run.defects) log << "  eta_U = " << run.defects->eta_u << ", eta_R = " << run.defects->eta_r << '\n';
  for (const auto& c : run.columns)
    if (!c.error.empty()) return 1;
  return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& log) {
  const ScatteringProblem problem(cfg.physics, cfg.grid);
  const double ed = problem.bound_energy();
  const std::vector<double> energies = scan_energies(cfg, ed);
  if (energies.empty()) {
    log << "error: no energies to scan\n";
    return 2;
  }
  for (double e : energies)
    if (e == 0.0 || !(e > ed)) {
      log << "error: scan energy " << e << " MeV is at the breakup threshold or below the bound state\n";
      return 2;
    }
  const fs::path out(cfg.output);
  write_config(cfg);

  std::vector<EnergyRun> runs(energies.size());
  const int n = static_cast<int>(energies.size());
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
  for (int i = 0; i < n; ++i) runs[i] = run_energy(problem, cfg, energies[i]);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::string csv = "index,energy_cm,energy_lab,S11_re,S11_im,abs_S11,eta_u,eta_r,iterations,status\n";
  std::string lines;
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const EnergyRun& run = runs[i];
    for (const auto& d : diagnostics(run)) lines += dump_json(d, 0);
    const std::string stem = "smatrix_" + std::to_string(i);
    write_energy_files(run, ed, out / "energies", stem);
    int iterations = 0;
    std::string status = "ok";
    for (const auto& c : run.columns) {
      iterations = std::max(iterations, c.iterations);
      if (!c.error.empty()) status = "column_failed";
    }
    if (!run.error.empty()) status = "failed";
    if (status != "ok") {
      ++failures;
      log << "E = " << run.energy << " MeV: " << (run.error.empty() ? "a column failed" : run.error) << '\n';
    }
    const cplx s11 = run.smatrix ? run.smatrix->S.scalar(0, 0) : cplx(nan, nan);
    csv += std::to_string(i) + ',' + csv_number(run.energy) + ',' + csv_number(run.energy_lab) + ',' +
           csv_number(s11.real()) + ',' + csv_number(s11.imag()) + ',' + csv_number(std::abs(s11)) + ',' +
           csv_number(run.defects ? run.defects->eta_u : nan) + ',' + csv_number(run.defects ? run.defects->eta_r : nan) +
           ',' + std::to_string(iterations) + ',' + status + '\n';
  }
  write_text(out / "scan.csv", csv);
  write_text(out / "diagnostics.jsonl", lines);
  log << n - failures << " of " << n << " energies solved\n";
  return failures == n ? 1 : 0;
}

int cmd_defects(const std::vector<fs::path>& files, const fs::path& out, std::ostream& log) {
  if (files.empty()) {
    log << "error: no S-matrix files given\n";
    return 2;
  }
  std::string csv = "file,energy_cm,eta_u,eta_r,stored_eta_u,stored_eta_r\n";
  json report = json::array();
  std::optional<std::vector<double>> points;
  for (const auto& f : files) {
    json j;
    try {
      j = json::parse(read_text(f));
    } catch (const json::exception& e) {
      log << "error: " << f.string() << ": not valid JSON (" << e.what() << ")\n";
      return 1;
    } catch (const std::exception& e) {
      log << "error: " << e.what() << '\n';
      return 1;
    }
    ScatteringMatrix s;
    try {
      s = smatrix_from_json(j);
    } catch (const std::exception& e) {
      log << "error: " << f.string() << ": " << e.what() << '\n';
      return 1;
    }
    const auto& q = s.S.quadrature();
    if (s.S.n_cyl() > 0) {
      if (points && *points != q.points) {
        log << "error: " << f.string() << ": alpha grid differs from the previous files\n";
        return 1;
      }
      points = q.points;
    }
    if (s.partial()) {
      log << "error: " << f.string() << ": S-matrix has unsolved columns\n";
      return 1;
    }
    const DefectReport d = defects(s.S, s.incident);
    const double su = j.contains("defects") ? j["defects"].value("eta_u", std::nan("")) : std::nan("");
    const double sr = j.contains("defects") ? j["defects"].value("eta_r", std::nan("")) : std::nan("");
    csv += f.string() + ',' + csv_number(s.energy) + ',' + csv_number(d.eta_u) + ',' + csv_number(d.eta_r) + ',' +
           csv_number(su) + ',' + csv_number(sr) + '\n';
    report.push_back({{"file", f.string()}, {"energy_cm", s.energy}, {"eta_u", d.eta_u}, {"eta_r", d.eta_r}});
    log << f.string() << ": E = " << s.energy << " MeV, eta_U = " << d.eta_u << ", eta_R = " << d.eta_r << '\n';
  }
  write_text(out / "defects.csv", csv);
  write_text(out / "defects.json", dump_json(report));
  return 0;
}

}  // namespace faddeev
