#include "faddeev/config.hpp"

#include <algorithm>
#include <boost/algorithm/string.hpp>
#include <climits>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace faddeev {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
};

// section -> key -> entry; the empty key holds the header line
using Table = std::map<std::string, std::map<std::string, Entry>>;

Table tokenize(const std::string& text, const std::string& origin) {
  Table table;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find_first_of("#;"));
    boost::algorithm::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(origin, line, "unterminated section header");
      section = boost::algorithm::trim_copy(s.substr(1, s.size() - 2));
      if (section.empty()) throw ConfigError(origin, line, "empty section name");
      if (table.count(section)) throw ConfigError(origin, line, "section [" + section + "] appears twice");
      table[section][""] = {"", line};
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(origin, line, "expected 'key = value'");
    if (section.empty()) throw ConfigError(origin, line, "key outside of any section");
    const std::string key = boost::algorithm::trim_copy(s.substr(0, eq));
    const std::string value = boost::algorithm::trim_copy(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, line, "missing key");
    auto& sec = table[section];
    if (sec.count(key)) throw ConfigError(origin, line, "key '" + key + "' repeated in [" + section + "]");
    sec[key] = {value, line};
  }
  return table;
}

class Reader {
 public:
  Reader(const Table& t, std::string origin) : table_(t), origin_(std::move(origin)) {}

  bool has(const std::string& sec, const std::string& key) const {
    auto s = table_.find(sec);
    return s != table_.end() && s->second.count(key);
  }
  int line(const std::string& sec, const std::string& key) const { return entry(sec, key).line; }
  [[noreturn]] void fail(const std::string& sec, const std::string& key, const std::string& msg) const {
    throw ConfigError(origin_, has(sec, key) ? line(sec, key) : 0, "[" + sec + "] " + key + ": " + msg);
  }

  void number(const std::string& sec, const std::string& key, double& out) {
    if (!take(sec, key)) return;
    out = to_double(sec, key, entry(sec, key).value);
  }
  void integer(const std::string& sec, const std::string& key, int& out) {
    if (!take(sec, key)) return;
    const std::string& v = entry(sec, key).value;
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(v, &used);
    } catch (const std::exception&) {
      fail(sec, key, "expected an integer, got '" + v + "'");
    }
    if (used != v.size() || x < INT32_MIN || x > INT32_MAX) fail(sec, key, "expected an integer, got '" + v + "'");
    out = static_cast<int>(x);
  }
  void boolean(const std::string& sec, const std::string& key, bool& out) {
    if (!take(sec, key)) return;
    const std::string v = boost::algorithm::to_lower_copy(entry(sec, key).value);
    if (v == "true" || v == "yes" || v == "1") out = true;
    else if (v == "false" || v == "no" || v == "0") out = false;
    else fail(sec, key, "expected true or false, got '" + v + "'");
  }
  void text(const std::string& sec, const std::string& key, std::string& out) {
    if (!take(sec, key)) return;
    out = entry(sec, key).value;
  }
  void numbers(const std::string& sec, const std::string& key, std::vector<double>& out) {
    if (!take(sec, key)) return;
    out.clear();
    for (const auto& w : words(entry(sec, key).value)) out.push_back(to_double(sec, key, w));
  }
  std::vector<std::string> words_of(const std::string& sec, const std::string& key) {
    if (!take(sec, key)) return {};
    return words(entry(sec, key).value);
  }

  // Report the earliest unknown section or key.
  void reject_unknown(const std::vector<std::string>& sections) const {
    const Entry* first = nullptr;
    std::string msg;
    for (const auto& [sec, keys] : table_) {
      const bool known = std::find(sections.begin(), sections.end(), sec) != sections.end() ||
                         boost::algorithm::starts_with(sec, "potential.");
      for (const auto& [key, e] : keys) {
        const bool bad = key.empty() ? !known : !used_.count(sec + "\n" + key);
        if (bad && (!first || e.line < first->line)) {
          first = &e;
          msg = key.empty() ? "unknown section [" + sec + "]" : "unknown key '" + key + "' in [" + sec + "]";
        }
      }
    }
    if (first) throw ConfigError(origin_, first->line, msg);
  }
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [sec, keys] : table_)
      if (boost::algorithm::starts_with(sec, prefix)) out.push_back(sec);
    return out;
  }

 private:
  const Entry& entry(const std::string& sec, const std::string& key) const { return table_.at(sec).at(key); }
  bool take(const std::string& sec, const std::string& key) {
    if (!has(sec, key)) return false;
    used_.insert(sec + "\n" + key);
    return true;
  }
  double to_double(const std::string& sec, const std::string& key, const std::string& v) const {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      fail(sec, key, "expected a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x)) fail(sec, key, "expected a finite number, got '" + v + "'");
    return x;
  }
  static std::vector<std::string> words(const std::string& v) {
    std::vector<std::string> out;
    boost::algorithm::split(out, v, boost::algorithm::is_any_of(" \t,"), boost::algorithm::token_compress_on);
    out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
    return out;
  }

  const Table& table_;
  std::string origin_;
  std::set<std::string> used_;
};

int find_channel(const ChannelSet& cs, const std::string& name) {
  for (int i = 0; i < cs.size(); ++i)
    if (cs.channels[i].name == name) return i;
  return -1;
}

void require(bool ok, Reader& r, const std::string& sec, const std::string& key, const std::string& msg) {
  if (!ok) r.fail(sec, key, msg);
}

}  // namespace

ConfigError::ConfigError(const std::string& origin, int line, const std::string& message)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

IncomingSelector IncomingSelector::parse(const std::string& text) {
  if (text == "nd") return {};
  if (boost::algorithm::starts_with(text, "nnp:")) {
    const std::string n = text.substr(4);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == n.size() && !n.empty() && v >= 1) return {false, v};
  }
  throw std::invalid_argument("incoming state must be 'nd' or 'nnp:n' with n >= 1, got '" + text + "'");
}

std::string IncomingSelector::str() const { return bound ? "nd" : "nnp:" + std::to_string(n); }

std::vector<double> ScanRange::points() const {
  std::vector<double> out;
  if (!active()) return out;
  const double slack = std::abs(step) * 1e-6;
  for (int i = 0;; ++i) {
    const double e = from + i * step;
    if (step > 0 ? e > to + slack : e < to - slack) break;
    out.push_back(e);
  }
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  const Table table = tokenize(text, origin);
  Reader r(table, origin);
  RunConfig cfg;

  // physics
  r.number("physics", "hbar2_over_m", cfg.hbar2_over_m);
  require(cfg.hbar2_over_m > 0.0, r, "physics", "hbar2_over_m", "must be positive");
  r.numbers("physics", "masses", cfg.mass_ratios);
  require(cfg.mass_ratios.size() == 3, r, "physics", "masses", "expected three mass ratios");
  for (double m : cfg.mass_ratios) require(m > 0.0, r, "physics", "masses", "masses must be positive");
  require(std::abs(cfg.mass_ratios[0] - cfg.mass_ratios[1]) <= 1e-14 * cfg.mass_ratios[0] &&
              std::abs(cfg.mass_ratios[0] - cfg.mass_ratios[2]) <= 1e-14 * cfg.mass_ratios[0],
          r, "physics", "masses", "the s-wave solver needs three equal masses");
  std::string channels = "nd_doublet";
  r.text("physics", "channels", channels);
  require(channels == "nd_doublet", r, "physics", "channels", "only 'nd_doublet' is available");
  std::string bound = "triplet";
  r.text("physics", "bound_channel", bound);

  Physics& ph = cfg.physics;
  ph.masses = MassSystem(cfg.mass_ratios[0] / cfg.hbar2_over_m, cfg.mass_ratios[1] / cfg.hbar2_over_m,
                         cfg.mass_ratios[2] / cfg.hbar2_over_m);
  ph.channels = ChannelSet::nd_doublet();
  const int found = find_channel(ph.channels, bound);
  require(found >= 0, r, "physics", "bound_channel", "no channel named '" + bound + "'");
  ph.bound_channel = found;
  const double tx = tau_factors(ph.masses, 1).tau_x;
  for (auto& p : ph.potentials) p.tau_x = tx;
  for (const auto& sec : r.sections_with_prefix("potential.")) {
    const std::string name = sec.substr(10);
    const int c = find_channel(ph.channels, name);
    if (c < 0) throw ConfigError(origin, r.line(sec, ""), "[" + sec + "]: no channel named '" + name + "'");
    std::vector<double> yuk;
    r.numbers(sec, "yukawa", yuk);
    require(!yuk.empty() && yuk.size() % 2 == 0, r, sec, "yukawa", "expected pairs 'strength range'");
    PairPotential pot;
    pot.tau_x = tx;
    for (std::size_t i = 0; i < yuk.size(); i += 2) {
      require(yuk[i + 1] > 0.0, r, sec, "yukawa", "ranges must be positive");
      pot.terms.push_back({yuk[i], yuk[i + 1]});
    }
    ph.potentials[c] = pot;
  }

  // two-body grid
  r.number("twobody", "r_max_fm", ph.two_body.r_max_fm);
  require(ph.two_body.r_max_fm > 0.0, r, "twobody", "r_max_fm", "must be positive");
  r.integer("twobody", "intervals", ph.two_body.intervals);
  require(ph.two_body.intervals >= 8, r, "twobody", "intervals", "must be at least 8");

  // discretization
  GridSpec& g = cfg.grid;
  r.number("grid", "rho_extent_fm", g.rho_extent_fm);
  require(g.rho_extent_fm > 0.0, r, "grid", "rho_extent_fm", "must be positive");
  r.integer("grid", "n_rho", g.n_rho);
  require(g.n_rho >= 8 && g.n_rho % 2 == 0, r, "grid", "n_rho", "must be even and at least 8");
  r.integer("grid", "n_alpha", g.n_alpha);
  require(g.n_alpha >= 16 && g.n_alpha % 2 == 0, r, "grid", "n_alpha", "must be even and at least 16");
  r.number("grid", "rho_first_step", g.rho_shape.first_step_fraction);
  require(g.rho_shape.first_step_fraction > 0.0 && g.rho_shape.first_step_fraction <= 1.0, r, "grid",
          "rho_first_step", "must be in (0, 1]");
  r.number("grid", "rho_geometric_fraction", g.rho_shape.geometric_fraction);
  require(g.rho_shape.geometric_fraction > 0.0 && g.rho_shape.geometric_fraction <= 1.0, r, "grid",
          "rho_geometric_fraction", "must be in (0, 1]");
  r.number("grid", "alpha_uniform_fraction", g.alpha_shape.uniform_fraction);
  require(g.alpha_shape.uniform_fraction >= 0.05 && g.alpha_shape.uniform_fraction <= 1.0, r, "grid",
          "alpha_uniform_fraction", "must be in [0.05, 1]");
  r.number("grid", "alpha_smoothing", g.alpha_shape.smoothing);
  require(g.alpha_shape.smoothing >= 0.0, r, "grid", "alpha_smoothing", "must be non-negative");

  // solver
  SolverOptions& so = cfg.solver;
  r.number("solver", "tolerance", so.gmres.tol);
  require(so.gmres.tol > 0.0 && so.gmres.tol < 1.0, r, "solver", "tolerance", "must be in (0, 1)");
  r.integer("solver", "max_iterations", so.gmres.max_iterations);
  require(so.gmres.max_iterations >= 1, r, "solver", "max_iterations", "must be positive");
  r.integer("solver", "restart", so.gmres.restart);
  require(so.gmres.restart >= 0, r, "solver", "restart", "must be 0 (no restart) or positive");
  r.boolean("solver", "precondition", so.precondition);

  // extraction
  ExtractionOptions& ex = cfg.extraction;
  std::vector<double> win{ex.rho_window_lo, ex.rho_window_hi};
  r.numbers("extraction", "rho_window", win);
  require(win.size() == 2 && 0.0 < win[0] && win[0] < win[1] && win[1] < 1.0, r, "extraction", "rho_window",
          "expected 'lo hi' with 0 < lo < hi < 1");
  ex.rho_window_lo = win[0];
  ex.rho_window_hi = win[1];
  win = {ex.y_window_lo, ex.y_window_hi};
  r.numbers("extraction", "y_window", win);
  require(win.size() == 2 && 0.0 < win[0] && win[0] < win[1] && win[1] <= 1.0, r, "extraction", "y_window",
          "expected 'lo hi' with 0 < lo < hi <= 1");
  ex.y_window_lo = win[0];
  ex.y_window_hi = win[1];
  r.integer("extraction", "y_samples", ex.y_samples);
  require(ex.y_samples >= 8, r, "extraction", "y_samples", "must be at least 8");
  r.integer("extraction", "x_intervals", ex.x_intervals);
  require(ex.x_intervals >= 4, r, "extraction", "x_intervals", "must be at least 4");
  r.number("extraction", "x_range_threshold", ex.x_range_threshold);
  require(ex.x_range_threshold > 0.0 && ex.x_range_threshold < 1.0, r, "extraction", "x_range_threshold",
          "must be in (0, 1)");
  r.number("extraction", "alpha_c_threshold", ex.b_range_threshold);
  require(ex.b_range_threshold > 0.0 && ex.b_range_threshold < 1.0, r, "extraction", "alpha_c_threshold",
          "must be in (0, 1)");
  r.number("extraction", "c3_gate", ex.gate);
  r.number("extraction", "breakup_gate", ex.breakup_gate);
  r.number("extraction", "max_condition", ex.max_condition);
  require(ex.max_condition > 1.0, r, "extraction", "max_condition", "must exceed 1");
  std::string norm = "flux";
  r.text("extraction", "normalization", norm);
  if (norm == "flux") ex.normalization = ExtractionOptions::Normalization::Flux;
  else if (norm == "reduced_mass") ex.normalization = ExtractionOptions::Normalization::ReducedMass;
  else r.fail("extraction", "normalization", "expected 'flux' or 'reduced_mass', got '" + norm + "'");

  // run
  r.numbers("run", "energies", cfg.energies);
  for (double e : cfg.energies) require(e != 0.0, r, "run", "energies", "E = 0 (breakup threshold) is excluded");
  r.numbers("run", "lab_energies", cfg.lab_energies);
  for (double e : cfg.lab_energies) require(e > 0.0, r, "run", "lab_energies", "must be positive");
  std::vector<double> scan;
  r.numbers("run", "scan", scan);
  if (!scan.empty()) {
    require(scan.size() == 3 && scan[2] != 0.0 && (scan[1] - scan[0]) * scan[2] >= 0.0, r, "run", "scan",
            "expected 'from to step' with a step pointing from 'from' to 'to'");
    cfg.scan = {scan[0], scan[1], scan[2], false};
  }
  std::string scale = "cm";
  r.text("run", "scan_scale", scale);
  require(scale == "cm" || scale == "lab", r, "run", "scan_scale", "expected 'cm' or 'lab'");
  cfg.scan.lab = scale == "lab";
  for (double e : cfg.scan.points())
    require(e != 0.0, r, "run", "scan", "scan hits E = 0 (breakup threshold) exactly");
  if (r.has("run", "incoming")) {
    cfg.incoming.clear();
    const int line = r.line("run", "incoming");
    for (const auto& w : r.words_of("run", "incoming")) {
      try {
        cfg.incoming.push_back(IncomingSelector::parse(w));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(origin, line, std::string("[run] incoming: ") + e.what());
      }
    }
    require(!cfg.incoming.empty(), r, "run", "incoming", "no incoming state given");
  }
  r.text("run", "output", cfg.output);
  require(!cfg.output.empty(), r, "run", "output", "must not be empty");
  r.integer("run", "workers", cfg.workers);
  require(cfg.workers >= 1, r, "run", "workers", "must be at least 1");

  r.reject_unknown({"physics", "twobody", "grid", "solver", "extraction", "run"});
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& ph = c.physics;
  os << "[physics]\n"
     << "hbar2_over_m = " << fmt(c.hbar2_over_m) << '\n'
     << "masses = " << fmt_list(c.mass_ratios) << '\n'
     << "channels = nd_doublet\n"
     << "bound_channel = " << ph.channels.channels[ph.bound_channel].name << "\n\n";
  for (int a = 0; a < ph.channels.size(); ++a) {
    std::vector<double> yuk;
    for (const auto& t : ph.potentials[a].terms) {
      yuk.push_back(t.strength);
      yuk.push_back(t.range);
    }
    os << "[potential." << ph.channels.channels[a].name << "]\n"
       << "yukawa = " << fmt_list(yuk) << "\n\n";
  }
  os << "[twobody]\n"
     << "r_max_fm = " << fmt(ph.two_body.r_max_fm) << '\n'
     << "intervals = " << ph.two_body.intervals << "\n\n";
  const auto& g = c.grid;
  os << "[grid]\n"
     << "rho_extent_fm = " << fmt(g.rho_extent_fm) << '\n'
     << "n_rho = " << g.n_rho << '\n'
     << "n_alpha = " << g.n_alpha << '\n'
     << "rho_first_step = " << fmt(g.rho_shape.first_step_fraction) << '\n'
     << "rho_geometric_fraction = " << fmt(g.rho_shape.geometric_fraction) << '\n'
     << "alpha_uniform_fraction = " << fmt(g.alpha_shape.uniform_fraction) << '\n'
     << "alpha_smoothing = " << fmt(g.alpha_shape.smoothing) << "\n\n";
  const auto& so = c.solver;
  os << "[solver]\n"
     << "tolerance = " << fmt(so.gmres.tol) << '\n'
     << "max_iterations = " << so.gmres.max_iterations << '\n'
     << "restart = " << so.gmres.restart << '\n'
     << "precondition = " << (so.precondition ? "true" : "false") << "\n\n";
  const auto& ex = c.extraction;
  os << "[extraction]\n"
     << "rho_window = " << fmt(ex.rho_window_lo) << ' ' << fmt(ex.rho_window_hi) << '\n'
     << "y_window = " << fmt(ex.y_window_lo) << ' ' << fmt(ex.y_window_hi) << '\n'
     << "y_samples = " << ex.y_samples << '\n'
     << "x_intervals = " << ex.x_intervals << '\n'
     << "x_range_threshold = " << fmt(ex.x_range_threshold) << '\n'
     << "alpha_c_threshold = " << fmt(ex.b_range_threshold) << '\n'
     << "c3_gate = " << fmt(ex.gate) << '\n'
     << "breakup_gate = " << fmt(ex.breakup_gate) << '\n'
     << "max_condition = " << fmt(ex.max_condition) << '\n'
     << "normalization = "
     << (ex.normalization == ExtractionOptions::Normalization::Flux ? "flux" : "reduced_mass") << "\n\n";
  os << "[run]\n";
  if (!c.energies.empty()) os << "energies = " << fmt_list(c.energies) << '\n';
  if (!c.lab_energies.empty()) os << "lab_energies = " << fmt_list(c.lab_energies) << '\n';
  if (c.scan.active()) {
    os << "scan = " << fmt(c.scan.from) << ' ' << fmt(c.scan.to) << ' ' << fmt(c.scan.step) << '\n'
       << "scan_scale = " << (c.scan.lab ? "lab" : "cm") << '\n';
  }
  os << "incoming =";
  for (const auto& s : c.incoming) os << ' ' << s.str();
  os << '\n'
     << "output = " << c.output << '\n'
     << "workers = " << c.workers << '\n';
  return os.str();
}

}  // namespace faddeev
