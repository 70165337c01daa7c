#include "faddeev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace faddeev {

namespace {

void dump(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const std::string sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of numbers stay on one line.
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured()) flat = false;
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += pad;
        dump(e, indent, depth + 1, out);
        first = false;
      }
      if (!flat) out += close;
      out += ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        out += pad + json(it.key()).dump() + sep;
        dump(it.value(), indent, depth + 1, out);
        first = false;
      }
      out += close + '}';
      return;
    }
    default:
      out += j.dump();
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::runtime_error(std::string("S-matrix file: missing '") + key + "'");
  return j.at(key);
}

std::vector<double> doubles(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw std::runtime_error(std::string("S-matrix file: '") + key + "' is not an array");
  return a.get<std::vector<double>>();
}

json hybrid_to_json(const HybridMatrix& m) {
  json scalars = json::array(), blocks = json::array();
  for (int a = 0; a < m.size(); ++a) {
    json row = json::array();
    for (int b = 0; b < m.n_bound(); ++b) row.push_back(to_json(m.scalar(a, b)));
    scalars.push_back(row);
    json block = json::array();
    if (m.n_cyl() > 0)
      for (const auto& z : m.row_block(a)) block.push_back(to_json(z));
    blocks.push_back(block);
  }
  return {{"scalars", scalars}, {"functions", blocks}};
}

HybridMatrix hybrid_from_json(const json& j, int n_bound, int n_cyl, const AlphaQuadrature& quad) {
  HybridMatrix m(n_bound, n_cyl, quad);
  const json& scalars = field(j, "scalars");
  const json& blocks = field(j, "functions");
  if (!scalars.is_array() || !blocks.is_array() || static_cast<int>(scalars.size()) != m.size() ||
      static_cast<int>(blocks.size()) != m.size())
    throw std::runtime_error("S-matrix file: matrix has the wrong number of rows");
  for (int a = 0; a < m.size(); ++a) {
    if (static_cast<int>(scalars[a].size()) != n_bound)
      throw std::runtime_error("S-matrix file: scalar row of the wrong length");
    for (int b = 0; b < n_bound; ++b) m.scalar(a, b) = complex_from_json(scalars[a][b]);
    const auto want = n_cyl > 0 ? static_cast<std::size_t>(quad.size()) : 0u;
    if (blocks[a].size() != want) throw std::runtime_error("S-matrix file: function block of the wrong length");
    for (std::size_t k = 0; k < want; ++k) m.row_block(a)(static_cast<Eigen::Index>(k)) = complex_from_json(blocks[a][k]);
  }
  return m;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  out += '\n';
  return out;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::runtime_error("S-matrix file: complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json smatrix_to_json(const ScatteringMatrix& s, double bound_energy) {
  const AlphaQuadrature& q = s.S.quadrature();
  json transform = json::array();
  for (Eigen::Index r = 0; r < q.transform.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < q.transform.cols(); ++c) row.push_back(q.transform(r, c));
    transform.push_back(row);
  }
  const DefectReport d = defects(s.S, s.incident);
  json out;
  out["energy_cm"] = s.energy;
  out["energy_lab"] = cm_to_elab(s.energy, bound_energy);
  out["bound_energy"] = bound_energy;
  out["n_bound"] = s.S.n_bound();
  out["n_cyl"] = s.S.n_cyl();
  out["solved"] = s.solved;
  out["quadrature"] = {{"channels", q.channels}, {"points", q.points}, {"weights", q.weights}, {"transform", transform}};
  out["S"] = hybrid_to_json(s.S);
  out["incident"] = hybrid_to_json(s.incident);
  out["defects"] = {{"eta_u", d.eta_u}, {"eta_r", d.eta_r}};
  return out;
}

ScatteringMatrix smatrix_from_json(const json& j) {
  ScatteringMatrix s;
  s.energy = field(j, "energy_cm").get<double>();
  const int n_bound = field(j, "n_bound").get<int>();
  const int n_cyl = field(j, "n_cyl").get<int>();
  if (n_bound < 0 || n_cyl < 0 || n_bound + n_cyl == 0) throw std::runtime_error("S-matrix file: empty matrix");
  const json& qj = field(j, "quadrature");
  AlphaQuadrature q;
  q.channels = field(qj, "channels").get<int>();
  q.points = doubles(qj, "points");
  q.weights = doubles(qj, "weights");
  if (q.points.size() != q.weights.size()) throw std::runtime_error("S-matrix file: points and weights differ in length");
  const json& t = field(qj, "transform");
  const int n = q.size();
  if (!t.is_array() || static_cast<int>(t.size()) != n) throw std::runtime_error("S-matrix file: transform has the wrong size");
  q.transform.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (!t[r].is_array() || static_cast<int>(t[r].size()) != n)
      throw std::runtime_error("S-matrix file: transform row of the wrong length");
    for (int c = 0; c < n; ++c) q.transform(r, c) = t[r][c].get<double>();
  }
  s.S = hybrid_from_json(field(j, "S"), n_bound, n_cyl, q);
  s.incident = hybrid_from_json(field(j, "incident"), n_bound, n_cyl, q);
  s.solved = field(j, "solved").get<std::vector<bool>>();
  if (static_cast<int>(s.solved.size()) != n_bound + n_cyl)
    throw std::runtime_error("S-matrix file: 'solved' has the wrong length");
  return s;
}

std::string breakup_csv(const ColumnExtraction& col) {
  std::string out = "channel,alpha,beyond_alpha_c,T_re,T_im,C_re,C_im,A_re,A_im\n";
  for (std::size_t c = 0; c < col.breakup.size(); ++c) {
    const auto& b = col.breakup[c];
    const Eigen::VectorXcd a = benchmark_breakup(b.T);
    for (std::size_t i = 0; i < b.alpha.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out += std::to_string(c) + ',' + format_double(b.alpha[i]) + ',' + (b.alpha[i] > b.alpha_c ? "1" : "0") + ',' +
             format_double(b.T(k).real()) + ',' + format_double(b.T(k).imag()) + ',' + format_double(b.C(k).real()) +
             ',' + format_double(b.C(k).imag()) + ',' + format_double(a(k).real()) + ',' + format_double(a(k).imag()) +
             '\n';
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace faddeev
