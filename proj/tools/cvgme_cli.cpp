#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cvgme/circuit.hpp"
#include "cvgme/json_io.hpp"
#include "cvgme/reference_checks.hpp"
#include "cvgme/search.hpp"
#include "cvgme/witness.hpp"

using namespace cvgme;
using io::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string out;
  bool debug = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--tol", c.tol, "Detection / feasibility tolerance");
  sub->add_option("--out", c.out, "Write the JSON result here instead of stdout");
  sub->add_flag("--debug", c.debug, "Per-iteration solver log as JSON lines on stderr");
}

void emit(const Common& c, const json& j) {
  if (c.out.empty()) std::cout << j.dump(2) << '\n';
  else io::write_file(c.out, j);
}

WitnessOptions witness_options(const Common& c) {
  WitnessOptions o;
  o.tol = c.tol;
  if (c.debug) {
    o.sdp.on_iteration = [](const sdp::IterationInfo& i) {
      std::cerr << json{{"iter", i.iteration}, {"pobj", i.primal_objective},
                        {"dobj", i.dual_objective}, {"pres", i.primal_residual},
                        {"dres", i.dual_residual}, {"gap", i.gap}, {"mu", i.mu},
                        {"tau", i.tau}, {"kappa", i.kappa}, {"step", i.step}}
                       .dump()
                << '\n';
    };
  }
  return o;
}

TreeSpec load_tree(const std::string& arg) {
  if (std::filesystem::exists(arg)) return io::tree_from_json(io::read_file(arg));
  return tree_preset(arg);
}

// "A|BC", "AB|CD" or a comma list of 1-based modes on one side.
Bipartition parse_partition(const std::string& s, int n) {
  std::vector<int> members;
  const auto bar = s.find('|');
  if (bar != std::string::npos) {
    for (char ch : s.substr(0, bar)) {
      if (ch < 'A' || ch >= 'A' + n) throw std::invalid_argument("bad partition '" + s + "'");
      members.push_back(ch - 'A');
    }
  } else {
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) members.push_back(std::stoi(tok) - 1);
  }
  return Bipartition(n, members);
}

json ppt_json(const CovarianceMatrix& g) {
  json pairs = json::array();
  for (int i = 0; i < g.n_modes(); ++i)
    for (int j = i + 1; j < g.n_modes(); ++j)
      pairs.push_back({{"modes", {i + 1, j + 1}},
                       {"label", mode_label(i) + mode_label(j)},
                       {"epsilon", ppt_min_eigenvalue(g, i, j)}});
  return pairs;
}

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json stage_json(const ReckStage& st) {
  json bs = json::array();
  for (const auto& b : st.splitters)
    bs.push_back({{"variant", to_string(b.variant)},
                  {"modes", {b.modes.first + 1, b.modes.second + 1}},
                  {"t", b.t}});
  return {{"splitters", bs}, {"left_signs", st.left}, {"right_signs", st.right},
          {"middle_signs", st.middle},
          {"residual", st.residual}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian multipartite entanglement witnesses from minimal marginals"};
  app.require_subcommand(1);
  Common c;
  std::string cm_path, tree_arg = "chain3", partition, circuit_path;
  int validate_samples = 0, restarts = 1, iterations = 10, modes = 3;
  bool simplified = false;
  double resolution = 0.005;

  auto* check = app.add_subcommand("check", "Physicality of a covariance matrix");
  auto* ppt = app.add_subcommand("ppt", "PPT eigenvalue of every two-mode marginal");
  auto* sep = app.add_subcommand("separability", "Bipartite separability SDP");
  auto* wit = app.add_subcommand("witness", "Optimal GME witness blind outside a tree");
  auto* srch = app.add_subcommand("search", "Alternating witness/state search");
  auto* dec = app.add_subcommand("decompose", "Compile a 3-mode CM into an optical circuit");
  auto* sim = app.add_subcommand("simulate", "Covariance matrix produced by a circuit");
  auto* noise = app.add_subcommand("noise-scan", "Largest detectable thermal noise");
  auto* verify = app.add_subcommand("verify-paper", "Run the embedded reference checks");

  for (auto* s : {check, ppt, sep, wit, dec, noise})
    s->add_option("--cm", cm_path, "Covariance matrix JSON")->required()->check(CLI::ExistingFile);
  for (auto* s : app.get_subcommands({})) add_common(s, c);
  sep->add_option("--partition", partition, "e.g. A|BC or 1,2")->required();
  wit->add_option("--tree", tree_arg, "Preset (chain3, chain4, tshape4, none) or tree JSON");
  wit->add_option("--validate", validate_samples, "Check on this many biseparable samples");
  noise->add_option("--tree", tree_arg, "Preset or tree JSON");
  noise->add_option("--resolution", resolution, "Bisection resolution");
  srch->add_option("--modes", modes, "Number of modes");
  srch->add_option("--tree", tree_arg, "Preset or tree JSON");
  srch->add_option("--iterations", iterations, "Alternations per restart");
  srch->add_option("--restarts", restarts, "Independent restarts (seeds seed, seed+1, ...)");
  dec->add_flag("--simplified", simplified, "Vacuum inputs plus a correlated displacement");
  sim->add_option("--circuit", circuit_path, "Circuit JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--restarts", restarts, "Search restarts (0 skips the search check)")
      ->default_val(20);

  CLI11_PARSE(app, argc, argv);

  try {
    auto load_cm = [&] { return io::cm_from_json(io::read_file(cm_path)); };

    if (check->parsed()) {
      const auto g = load_cm();
      const auto r = check_physical(g, c.tol);
      emit(c, {{"physical", r.is_physical}, {"min_eigenvalue", r.min_eig},
               {"phase_free", g.is_phase_free(c.tol)}});
    } else if (ppt->parsed()) {
      emit(c, {{"pairs", ppt_json(load_cm())}});
    } else if (sep->parsed()) {
      const auto g = load_cm();
      const auto pi = parse_partition(partition, g.n_modes());
      const auto r = separability_test(g, pi, witness_options(c));
      emit(c, {{"partition", pi.label()}, {"x_e", r.x_e}, {"separable", r.separable},
               {"status", sdp::to_string(r.status)}});
    } else if (wit->parsed()) {
      const auto g = load_cm();
      std::optional<TreeSpec> tree;
      if (tree_arg != "none") tree = load_tree(tree_arg);
      const auto r = gme_witness(g, tree, witness_options(c));
      json out = {{"value", r.value}, {"detected", r.value < -c.tol},
                  {"status", sdp::to_string(r.status)}, {"iterations", r.raw.iterations},
                  {"witness", io::to_json(r.witness)}};
      if (validate_samples > 0) {
        const auto v = validate_witness(r.witness, validate_samples, c.seed);
        out["validation"] = {{"samples", validate_samples}, {"violations", v.violations},
                             {"worst", v.worst}};
      }
      emit(c, out);
    } else if (srch->parsed()) {
      SearchConfig cfg;
      cfg.n_modes = modes;
      cfg.tree = load_tree(tree_arg);
      cfg.iterations = iterations;
      cfg.seed = c.seed;
      const auto traces = search_restarts(cfg, restarts, witness_options(c));
      json all = json::array();
      for (const auto& t : traces) all.push_back(io::to_json(t));
      const int best = best_trace(traces);
      emit(c, {{"best", best >= 0 ? json(best) : json(nullptr)}, {"traces", all}});
    } else if (dec->parsed()) {
      const auto cc = compile(load_cm(), simplified);
      json out = {{"simplified", cc.simplified},
                  {"nu", vec_json(cc.nu)},
                  {"squeezing", vec_json(cc.squeezing)},
                  {"squeezing_db", vec_json(cc.squeezing_db)},
                  {"residual", cc.residual},
                  {"circuit", io::to_json(cc.circuit)},
                  {"rounded", io::to_json(cc.rounded)}};
      if (cc.u_stage) out["u_stage"] = stage_json(*cc.u_stage);
      if (cc.v_stage) out["v_stage"] = stage_json(*cc.v_stage);
      if (simplified) {
        out["displacement"] = {{"alpha", vec_json(cc.alpha)}, {"beta", vec_json(cc.beta)},
                               {"var", cc.var}};
      }
      emit(c, out);
    } else if (sim->parsed()) {
      // also takes the whole decompose report
      json doc = io::read_file(circuit_path);
      if (doc.contains("circuit")) doc = doc["circuit"];
      emit(c, io::to_json(simulate(io::circuit_from_json(doc))));
    } else if (noise->parsed()) {
      const auto scan = noise_tolerance(load_cm(), load_tree(tree_arg), resolution,
                                        witness_options(c));
      json ev = json::array();
      for (auto [p, v] : scan.evaluations) ev.push_back({{"p", p}, {"value", v}});
      emit(c, {{"p", scan.p}, {"evaluations", ev}});
    } else if (verify->parsed()) {
      const auto rep = reference::verify_all(restarts, c.seed);
      for (const auto& i : rep.items) {
        std::cerr << (i.passed ? "PASS " : "FAIL ") << '[' << i.criterion << "] " << i.name
                  << ": " << i.measured << " (expected " << i.expected << ")\n";
      }
      emit(c, reference::to_json(rep));
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
