#include "cvgme/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvgme {

void SearchConfig::validate() const {
  if (n_modes < 2) throw std::invalid_argument("search: n_modes must be >= 2");
  if (tree.n_modes != n_modes) {
    throw std::invalid_argument("search: tree size does not match n_modes");
  }
  const auto check = validate_tree(tree);
  if (!check.valid) throw std::invalid_argument("search: invalid tree: " + check.reason);
  if (iterations < 1) throw std::invalid_argument("search: iterations must be >= 1");
  if (!(diag_lo >= 1.0)) throw std::invalid_argument("search: diag_lo must be >= 1");
  if (!(diag_hi > diag_lo)) throw std::invalid_argument("search: diag_hi must exceed diag_lo");
  if (!(min_eig_floor > 0.0 && min_eig_floor < 1.0)) {
    throw std::invalid_argument("search: min_eig_floor must lie in (0, 1)");
  }
}

CovarianceMatrix random_pure_phase_free(int n_modes, std::mt19937_64& rng) {
  if (n_modes < 1) throw std::invalid_argument("random_pure_phase_free: n_modes must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix a(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i)
    for (int j = 0; j < n_modes; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // sign fix makes Q Haar distributed
  for (int j = 0; j < n_modes; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  Vector d(n_modes);
  const double lo = std::log(1.0 / 3.0), hi = std::log(3.0);
  for (int i = 0; i < n_modes; ++i) d(i) = std::exp(lo + (hi - lo) * unit(rng));
  const Matrix g = q.transpose() * d.asDiagonal() * q;
  const Matrix ginv = q.transpose() * d.cwiseInverse().asDiagonal() * q;
  return CovarianceMatrix(interleave(0.5 * (g + g.transpose()), 0.5 * (ginv + ginv.transpose())));
}

CovarianceMatrix random_pure_phase_free(int n_modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_phase_free(n_modes, rng);
}

Step2Result step2_sdp(const Witness& z, const SearchConfig& cfg,
                      const sdp::Options& opts) {
  cfg.validate();
  const int modes = cfg.n_modes;
  if (z.n_modes != modes) throw std::invalid_argument("step2_sdp: witness size mismatch");
  const int n = 2 * modes;
  const Matrix om = omega(modes);

  sdp::LmiProblem lmi;
  // var_of(a, b): variable for gamma(a, b), a and b of equal parity.
  std::vector<std::vector<int>> var_of(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; b += 2) var_of[a][b] = var_of[b][a] = lmi.add_variable();

  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; b += 2) {
      const double w = (a == b ? 1.0 : 2.0) * 0.5 * (z.z(a, b) + z.z(b, a));
      if (w != 0.0) lmi.add_objective(var_of[a][b], w);
    }

  const int heis = lmi.add_block(2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; b += 2) {
      lmi.add_coefficient(heis, var_of[a][b], a, b, 1.0);
      lmi.add_coefficient(heis, var_of[a][b], n + a, n + b, 1.0);
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (om(r, c) != 0.0) lmi.add_constant(heis, n + r, c, om(r, c));

  const Matrix om2 = omega(2);
  for (int j = 0; j < modes; ++j) {
    for (int k = j + 1; k < modes; ++k) {
      const int blk = lmi.add_block(8);
      const int idx[4] = {2 * j, 2 * j + 1, 2 * k, 2 * k + 1};
      const double sgn[4] = {1.0, -1.0, 1.0, 1.0};
      for (int la = 0; la < 4; ++la)
        for (int lb = la; lb < 4; ++lb) {
          const int v = var_of[idx[la]][idx[lb]];
          if (v < 0) continue;
          const double s = sgn[la] * sgn[lb];
          lmi.add_coefficient(blk, v, la, lb, s);
          lmi.add_coefficient(blk, v, 4 + la, 4 + lb, s);
        }
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (om2(r, c) != 0.0) lmi.add_constant(blk, 4 + r, c, om2(r, c));
    }
  }

  const int floor_blk = lmi.add_block(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; b += 2) lmi.add_coefficient(floor_blk, var_of[a][b], a, b, 1.0);
    lmi.add_constant(floor_blk, a, a, -cfg.min_eig_floor);
  }
  for (int a = 0; a < n; ++a) {
    const int lo = lmi.add_block(1);
    lmi.add_coefficient(lo, var_of[a][a], 0, 0, 1.0);
    lmi.add_constant(lo, 0, 0, -cfg.diag_lo);
    const int hi = lmi.add_block(1);
    lmi.add_coefficient(hi, var_of[a][a], 0, 0, -1.0);
    lmi.add_constant(hi, 0, 0, cfg.diag_hi);
  }

  const auto res = lmi.solve(opts);
  Step2Result out;
  out.status = res.status;
  if (res.status == sdp::Status::MaxIterations && res.raw.gap <= 1e-6 &&
      res.raw.primal_residual <= 1e-6 && res.raw.dual_residual <= 1e-6) {
    out.status = sdp::Status::Optimal;
  }
  Matrix g = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; b += 2) g(a, b) = g(b, a) = res.y(var_of[a][b]);
  out.gamma = CovarianceMatrix(g);
  out.objective = res.value;
  return out;
}

double step2_violation(const CovarianceMatrix& gamma, const SearchConfig& cfg) {
  double v = 0.0;
  v = std::max(v, -check_physical(gamma).min_eig);
  for (int j = 0; j < gamma.n_modes(); ++j)
    for (int k = j + 1; k < gamma.n_modes(); ++k)
      v = std::max(v, -ppt_min_eigenvalue(gamma, j, k));
  for (int a = 0; a < gamma.dim(); ++a) {
    v = std::max(v, cfg.diag_lo - gamma(a, a));
    v = std::max(v, gamma(a, a) - cfg.diag_hi);
    for (int b = 0; b < gamma.dim(); ++b)
      if ((a + b) % 2 == 1) v = std::max(v, std::abs(gamma(a, b)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma.matrix(), Eigen::EigenvaluesOnly);
  v = std::max(v, cfg.min_eig_floor - es.eigenvalues()(0));
  return v;
}

SearchTrace search(const SearchConfig& cfg, const WitnessOptions& opts) {
  cfg.validate();
  SearchTrace trace;
  trace.seed = cfg.seed;
  CovarianceMatrix gamma = random_pure_phase_free(cfg.n_modes, cfg.seed);
  trace.gamma0 = gamma.matrix();

  for (int it = 0; it < cfg.iterations; ++it) {
    const WitnessResult w = gme_witness(gamma, cfg.tree, opts);
    SearchRecord rec;
    rec.step1_status = w.status;
    rec.step1_value = w.value;
    if (w.status != sdp::Status::Optimal) {
      trace.message = "step 1 failed at iteration " + std::to_string(it) + ": " +
                      sdp::to_string(w.status);
      trace.records.push_back(rec);
      break;
    }
    const Step2Result s2 = step2_sdp(w.witness, cfg, opts.sdp);
    rec.step2_status = s2.status;
    if (s2.status != sdp::Status::Optimal) {
      trace.message = "step 2 failed at iteration " + std::to_string(it) + ": " +
                      sdp::to_string(s2.status);
      trace.records.push_back(rec);
      break;
    }
    rec.gamma = s2.gamma.matrix();
    rec.witness_value = evaluate_witness(s2.gamma, w.witness);
    trace.records.push_back(rec);
    gamma = s2.gamma;
    if (it > 0) {
      const double prev = trace.records[it - 1].witness_value;
      if (std::abs(prev - rec.witness_value) < 1e-6) break;
    }
  }
  trace.gamma = gamma.matrix();
  if (!trace.message.empty()) return trace;

  // Final witness on the last state.
  const CovarianceMatrix& last = gamma;
  WitnessResult fin;
  try {
    fin = gme_witness(last, cfg.tree, opts);
  } catch (const std::invalid_argument& e) {
    trace.message = e.what();
    return trace;
  }
  trace.witness = fin.witness;
  trace.value = fin.value;
  for (int j = 0; j < cfg.n_modes; ++j)
    for (int k = j + 1; k < cfg.n_modes; ++k)
      trace.ppt.push_back(ppt_min_eigenvalue(last, j, k));
  trace.completed = trace.message.empty() && fin.status == sdp::Status::Optimal;
  const bool ppt_ok =
      std::all_of(trace.ppt.begin(), trace.ppt.end(), [](double e) { return e >= -1e-7; });
  trace.success = trace.completed && trace.value < -1e-4 && ppt_ok;
  return trace;
}

std::vector<SearchTrace> search_restarts(const SearchConfig& cfg, int restarts,
                                         const WitnessOptions& opts, bool parallel) {
  cfg.validate();
  if (restarts < 1) throw std::invalid_argument("search_restarts: restarts must be >= 1");
  std::vector<SearchTrace> out(restarts);
  auto body = [&](int r) {
    SearchConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(r);
    try {
      out[r] = search(c, opts);
    } catch (const std::exception& e) {
      out[r].seed = c.seed;
      out[r].message = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < restarts; ++r) body(r);
  } else {
    for (int r = 0; r < restarts; ++r) body(r);
  }
  return out;
}

int best_trace(const std::vector<SearchTrace>& traces) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(traces.size()); ++i) {
    const auto& t = traces[i];
    if (!t.completed) continue;
    if (best < 0) {
      best = i;
      continue;
    }
    const auto& b = traces[best];
    if (t.success != b.success ? t.success : t.value < b.value) best = i;
  }
  return best;
}

}  // namespace cvgme
