#include "cvgme/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace cvgme::io {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int mode_index(const json& v, int n_modes) {
  if (!v.is_number_integer()) bad("mode labels must be integers");
  const int m = v.get<int>();
  if (m < 1 || m > n_modes) bad("mode label " + std::to_string(m) + " out of range");
  return m - 1;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of numbers");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad("expected an array of numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

int n_modes_of(const json& j) {
  const json& n = field(j, "n_modes");
  if (!n.is_number_integer() || n.get<int>() < 1) bad("n_modes must be a positive integer");
  return n.get<int>();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) bad("matrix entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

json to_json(const CovarianceMatrix& gamma) {
  return {{"n_modes", gamma.n_modes()}, {"ordering", "xpxp"},
          {"matrix", matrix_to_json(gamma.matrix())}};
}

CovarianceMatrix cm_from_json(const json& j) {
  const int n = n_modes_of(j);
  const json& ord = field(j, "ordering");
  if (!ord.is_string() || ord.get<std::string>() != "xpxp") bad("ordering must be \"xpxp\"");
  const Matrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != 2 * n || m.cols() != 2 * n) bad("matrix must be 2N x 2N");
  return CovarianceMatrix(m);
}

json to_json(const TreeSpec& tree) {
  json edges = json::array();
  for (auto [a, b] : tree.edges) edges.push_back({a + 1, b + 1});
  return {{"n_modes", tree.n_modes}, {"edges", edges}};
}

TreeSpec tree_from_json(const json& j) {
  TreeSpec t;
  t.n_modes = n_modes_of(j);
  const json& edges = field(j, "edges");
  if (!edges.is_array()) bad("edges must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) bad("each edge must be a pair of mode labels");
    t.edges.emplace_back(mode_index(e[0], t.n_modes), mode_index(e[1], t.n_modes));
  }
  return t;
}

json to_json(const Witness& w) {
  json blind = json::array();
  for (auto [a, b] : w.blind_blocks) blind.push_back({a + 1, b + 1});
  return {{"n_modes", w.n_modes}, {"matrix", matrix_to_json(w.z)}, {"blind_blocks", blind}};
}

Witness witness_from_json(const json& j) {
  const int n = n_modes_of(j);
  const Matrix z = matrix_from_json(field(j, "matrix"));
  if (z.rows() != 2 * n || z.cols() != 2 * n) bad("witness matrix must be 2N x 2N");
  std::vector<ModePair> blind;
  if (j.contains("blind_blocks")) {
    for (const auto& e : j.at("blind_blocks")) {
      if (!e.is_array() || e.size() != 2) bad("blind block must be a pair of mode labels");
      blind.push_back(make_pair_sorted(mode_index(e[0], n), mode_index(e[1], n)));
    }
  }
  Witness w;
  w.n_modes = n;
  w.z = z;
  w.blind_blocks = blind;
  for (auto [a, b] : blind) {
    if (!w.z.block<2, 2>(2 * a, 2 * b).isZero(0.0) || !w.z.block<2, 2>(2 * b, 2 * a).isZero(0.0)) {
      bad("declared blind block is not zero");
    }
  }
  return w;
}

json to_json(const CircuitSpec& c) {
  json elements = json::array();
  for (const auto& e : c.elements) {
    switch (e.kind) {
      case CircuitElement::Kind::Squeezer:
        elements.push_back({{"type", "squeezer"}, {"mode", e.mode + 1}, {"s", e.s},
                            {"quadrature", e.squeeze_x ? "x" : "p"}});
        break;
      case CircuitElement::Kind::Sign:
        elements.push_back({{"type", "sign"}, {"mode", e.mode + 1}});
        break;
      case CircuitElement::Kind::BeamSplitter:
        elements.push_back({{"type", "bs"},
                            {"modes", {e.bs.modes.first + 1, e.bs.modes.second + 1}},
                            {"t", e.bs.t},
                            {"variant", to_string(e.bs.variant)}});
        break;
      case CircuitElement::Kind::Displace:
        elements.push_back({{"type", "displace"}, {"alpha", vector_to_json(e.alpha)},
                            {"beta", vector_to_json(e.beta)}, {"var", e.var}});
        break;
    }
  }
  return {{"n_modes", c.n_modes}, {"inputs", vector_to_json(c.inputs)}, {"elements", elements}};
}

CircuitSpec circuit_from_json(const json& j) {
  CircuitSpec c;
  c.n_modes = n_modes_of(j);
  c.inputs = j.contains("inputs") ? vector_from_json(j.at("inputs")) : Vector::Ones(c.n_modes);
  const json& els = field(j, "elements");
  if (!els.is_array()) bad("elements must be an array");
  for (const auto& e : els) {
    const json& type = field(e, "type");
    if (!type.is_string()) bad("element type must be a string");
    const std::string t = type.get<std::string>();
    if (t == "squeezer") {
      CircuitElement x;
      x.kind = CircuitElement::Kind::Squeezer;
      x.mode = mode_index(field(e, "mode"), c.n_modes);
      x.s = field(e, "s").get<double>();
      const std::string q = e.value("quadrature", "x");
      if (q != "x" && q != "p") bad("squeezer quadrature must be \"x\" or \"p\"");
      x.squeeze_x = q == "x";
      c.elements.push_back(x);
    } else if (t == "sign") {
      c.elements.push_back(CircuitElement::sign(mode_index(field(e, "mode"), c.n_modes)));
    } else if (t == "bs") {
      const json& modes = field(e, "modes");
      if (!modes.is_array() || modes.size() != 2) bad("bs needs two modes");
      BeamSplitter bs;
      bs.modes = {mode_index(modes[0], c.n_modes), mode_index(modes[1], c.n_modes)};
      bs.t = field(e, "t").get<double>();
      bs.variant = bs_variant_from_string(e.value("variant", "plain"));
      c.elements.push_back(CircuitElement::beam_splitter(bs));
    } else if (t == "displace") {
      c.elements.push_back(CircuitElement::displace(vector_from_json(field(e, "alpha")),
                                                    vector_from_json(field(e, "beta")),
                                                    field(e, "var").get<double>()));
    } else {
      bad("unknown element type '" + t + "'");
    }
  }
  c.validate();
  return c;
}

json to_json(const SearchTrace& t) {
  json iters = json::array();
  for (const auto& r : t.records) {
    json rec = {{"witness_value", r.witness_value},
                {"step1_value", r.step1_value},
                {"step1_status", sdp::to_string(r.step1_status)},
                {"step2_status", sdp::to_string(r.step2_status)}};
    if (r.gamma.size() > 0) rec["gamma"] = to_json(CovarianceMatrix(r.gamma));
    iters.push_back(rec);
  }
  json out = {{"seed", t.seed},
              {"gamma0", to_json(CovarianceMatrix(t.gamma0))},
              {"iterations", iters},
              {"completed", t.completed},
              {"success", t.success},
              {"message", t.message}};
  if (t.completed) {
    out["final"] = {{"gamma", to_json(CovarianceMatrix(t.gamma))},
                    {"witness", to_json(t.witness)},
                    {"value", t.value},
                    {"ppt", t.ppt}};
  }
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace cvgme::io
