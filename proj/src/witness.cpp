#include "cvgme/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cvgme/search.hpp"

namespace cvgme {

namespace {

void require_physical(const CovarianceMatrix& gamma, const char* who) {
  if (!check_physical(gamma).is_physical) {
    throw std::invalid_argument(std::string(who) + ": covariance matrix is not physical");
  }
}

bool usable(const sdp::Solution& s, const WitnessOptions& opts) {
  if (s.status == sdp::Status::Optimal) return true;
  return s.status == sdp::Status::MaxIterations && s.gap <= opts.accept_tol &&
         s.primal_residual <= opts.accept_tol &&
         s.dual_residual <= opts.accept_tol;
}

sdp::Status effective_status(const sdp::Solution& s, const WitnessOptions& opts) {
  return usable(s, opts) ? sdp::Status::Optimal : s.status;
}

Matrix sub_block(const Matrix& m, const std::vector<int>& modes) {
  const int k = static_cast<int>(modes.size());
  Matrix out(2 * k, 2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      out.block<2, 2>(2 * a, 2 * b) = m.block<2, 2>(2 * modes[a], 2 * modes[b]);
  return out;
}

// X1(r, c) for r <= c on the same side of pi, tied to the real part of the
// embedded Hermitian block y.
void tie_block_diagonal(sdp::Problem& p, int x1, int y,
                        const sdp::HermitianEmbedding& emb,
                        const Bipartition& pi) {
  const int n = emb.dim();
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      if (!pi.same_side(r / 2, c / 2)) continue;
      sdp::LinearFunctional f;
      f.add(x1, r, c, 1.0);
      emb.add_real_part(f, y, r, c, -1.0);
      p.add_equality(std::move(f), 0.0);
    }
  }
}

void add_trace_objective(sdp::Problem& p, int block, const Matrix& gamma) {
  const int n = static_cast<int>(gamma.rows());
  for (int r = 0; r < n; ++r) {
    p.objective.add(block, r, r, gamma(r, r));
    for (int c = r + 1; c < n; ++c)
      if (gamma(r, c) != 0.0) p.objective.add(block, r, c, 2.0 * gamma(r, c));
  }
}

WitnessResult finish(const CovarianceMatrix& gamma, sdp::Solution sol,
                     const std::vector<ModePair>& blind,
                     const WitnessOptions& opts) {
  WitnessResult out;
  out.status = effective_status(sol, opts);
  out.witness = make_witness(gamma.n_modes(), sol.variables[0], blind);
  out.value = evaluate_witness(gamma, out.witness);
  out.raw = std::move(sol);
  return out;
}

}  // namespace

Witness make_witness(int n_modes, const Matrix& z,
                     const std::vector<ModePair>& blind) {
  if (z.rows() != 2 * n_modes || z.cols() != 2 * n_modes) {
    throw std::invalid_argument("make_witness: dimension mismatch");
  }
  Witness w;
  w.n_modes = n_modes;
  w.z = 0.5 * (z + z.transpose());
  w.blind_blocks = blind;
  for (auto [a, b] : blind) {
    w.z.block<2, 2>(2 * a, 2 * b).setZero();
    w.z.block<2, 2>(2 * b, 2 * a).setZero();
  }
  return w;
}

SeparabilityResult separability_test(const CovarianceMatrix& gamma,
                                     const Bipartition& pi,
                                     const WitnessOptions& opts) {
  require_physical(gamma, "separability_test");
  if (pi.n_modes() != gamma.n_modes()) {
    throw std::invalid_argument("separability_test: bipartition size mismatch");
  }
  const int n = gamma.dim();
  const Matrix om = omega(gamma.n_modes());
  const Matrix& g = gamma.matrix();

  sdp::LmiProblem lmi;
  const int gap_blk = lmi.add_block(n);       // gamma - gamma_pi
  const int heis_blk = lmi.add_block(2 * n);  // gamma_pi + (1 + x) i Omega
  const int xe = lmi.add_variable();
  lmi.add_objective(xe, -1.0);

  std::vector<std::pair<int, int>> entries;
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      if (pi.same_side(r / 2, c / 2)) entries.emplace_back(r, c);
  std::vector<int> vars;
  for (auto [r, c] : entries) {
    const int v = lmi.add_variable();
    vars.push_back(v);
    lmi.add_coefficient(gap_blk, v, r, c, -1.0);
    lmi.add_coefficient(heis_blk, v, r, c, 1.0);
    lmi.add_coefficient(heis_blk, v, n + r, n + c, 1.0);
  }
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      if (g(r, c) != 0.0) lmi.add_constant(gap_blk, r, c, g(r, c));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (om(r, c) == 0.0) continue;
      lmi.add_constant(heis_blk, n + r, c, om(r, c));
      lmi.add_coefficient(heis_blk, xe, n + r, c, om(r, c));
    }
  }

  const auto res = lmi.solve(opts.sdp);
  SeparabilityResult out;
  out.status = effective_status(res.raw, opts);
  out.x_e = res.y(xe);
  out.separable = out.status == sdp::Status::Optimal && out.x_e >= -opts.tol;
  Matrix gpi = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto [r, c] = entries[k];
    gpi(r, c) = gpi(c, r) = res.y(vars[k]);
  }
  out.gamma_a = sub_block(gpi, pi.index_set());
  out.gamma_b = sub_block(gpi, pi.complement());
  return out;
}

WitnessResult bipartite_witness(const CovarianceMatrix& gamma,
                                const Bipartition& pi,
                                const WitnessOptions& opts) {
  require_physical(gamma, "bipartite_witness");
  if (pi.n_modes() != gamma.n_modes()) {
    throw std::invalid_argument("bipartite_witness: bipartition size mismatch");
  }
  const int n = gamma.dim();
  const sdp::HermitianEmbedding emb(n);
  sdp::Problem p;
  const int x1 = p.add_psd_block(n);
  const int y = p.add_psd_block(emb.embedded_dim());
  add_trace_objective(p, x1, gamma.matrix());
  tie_block_diagonal(p, x1, y, emb, pi);
  sdp::LinearFunctional tr;
  emb.add_trace_i_antisym(tr, y, omega(gamma.n_modes()));
  p.add_equality(std::move(tr), -1.0);
  return finish(gamma, sdp::solve(p, opts.sdp), {}, opts);
}

WitnessResult gme_witness(const CovarianceMatrix& gamma,
                          const std::optional<TreeSpec>& tree,
                          const WitnessOptions& opts) {
  require_physical(gamma, "gme_witness");
  const int modes = gamma.n_modes();
  std::vector<ModePair> blind;
  if (tree) {
    if (tree->n_modes != modes) {
      throw std::invalid_argument("gme_witness: tree size does not match the CM");
    }
    blind = blind_pattern(*tree);
  }
  const int n = gamma.dim();
  const auto parts = enumerate_bipartitions(modes);
  const sdp::HermitianEmbedding emb(n);
  const Matrix om = omega(modes);

  sdp::Problem p;
  const int x1 = p.add_psd_block(n);
  std::vector<int> ys;
  for (std::size_t k = 0; k < parts.size(); ++k)
    ys.push_back(p.add_psd_block(emb.embedded_dim()));
  // u stands for the difference of the two scalar blocks fixed to 1.
  const int u = p.add_free_block(1);
  std::vector<int> slack;
  for (std::size_t k = 0; k < parts.size(); ++k) slack.push_back(p.add_psd_block(1));

  add_trace_objective(p, x1, gamma.matrix());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    tie_block_diagonal(p, x1, ys[k], emb, parts[k]);
    sdp::LinearFunctional f;
    emb.add_trace_i_antisym(f, ys[k], om);
    f.add_free(u, 0, 1.0);
    f.add(slack[k], 0, 0, 1.0);
    p.add_equality(std::move(f), 0.0);
  }
  {
    sdp::LinearFunctional f;
    f.add_free(u, 0, 1.0);
    p.add_equality(std::move(f), 1.0);
  }
  for (auto [a, b] : blind) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        sdp::LinearFunctional f;
        f.add(x1, 2 * a + r, 2 * b + c, 1.0);
        p.add_equality(std::move(f), 0.0);
      }
    }
  }
  return finish(gamma, sdp::solve(p, opts.sdp), blind, opts);
}

double evaluate_witness(const CovarianceMatrix& gamma, const Witness& w) {
  if (w.z.rows() != gamma.dim() || w.z.cols() != gamma.dim()) {
    throw std::invalid_argument("evaluate_witness: dimension mismatch");
  }
  double s = 0.0;
  for (int r = 0; r < gamma.dim(); ++r)
    for (int c = 0; c < gamma.dim(); ++c)
      if (w.z(r, c) != 0.0) s += gamma(r, c) * w.z(r, c);
  return s - 1.0;
}

Matrix sample_biseparable(int n_modes, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  const auto parts = enumerate_bipartitions(n_modes);
  std::vector<double> lambda(parts.size());
  double total = 0.0;
  for (auto& l : lambda) total += (l = expo(rng));

  const int n = 2 * n_modes;
  Matrix g = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Matrix term = Matrix::Zero(n, n);
    for (const auto& side : {parts[k].index_set(), parts[k].complement()}) {
      const int m = static_cast<int>(side.size());
      const double thermal = 1.0 + unit(rng);
      const Matrix f = thermal * random_pure_phase_free(m, rng).matrix();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          term.block<2, 2>(2 * side[a], 2 * side[b]) = f.block<2, 2>(2 * a, 2 * b);
    }
    g += (lambda[k] / total) * term;
  }
  const double mu = 0.5 * unit(rng);
  g += mu * Matrix::Identity(n, n);
  return g;
}

ValidationReport validate_witness(const Witness& w, int n_samples,
                                  std::uint64_t seed, bool parallel) {
  if (w.z.rows() != 2 * w.n_modes) {
    throw std::invalid_argument("validate_witness: malformed witness");
  }
  std::vector<double> values(std::max(n_samples, 0));
  const long count = static_cast<long>(values.size());
  auto body = [&](long i) {
    const CovarianceMatrix g(sample_biseparable(w.n_modes, seed, i));
    values[i] = evaluate_witness(g, w);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) body(i);
  } else {
    for (long i = 0; i < count; ++i) body(i);
  }
  ValidationReport rep;
  rep.worst = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v < -1e-6) ++rep.violations;
    rep.worst = std::min(rep.worst, v);
  }
  if (values.empty()) rep.worst = 0.0;
  return rep;
}

}  // namespace cvgme
