#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cvgme/covariance.hpp"
#include "cvgme/partitions.hpp"
#include "cvgme/witness.hpp"

namespace cvgme {

struct SearchConfig {
  int n_modes = 3;
  TreeSpec tree = tree_preset("chain3");
  int iterations = 10;
  double diag_lo = 1.0;
  double diag_hi = 10.0;
  double min_eig_floor = 0.2;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct SearchRecord {
  /// Tr[gamma_{i+1} Z_i] - 1 with Z_i the witness of gamma_i and gamma_{i+1}
  /// the state step 2 returns for it. Non-increasing in i.
  double witness_value = 0.0;
  /// Tr[gamma_i Z_i] - 1.
  double step1_value = 0.0;
  Matrix gamma;  // gamma_{i+1}
  sdp::Status step1_status = sdp::Status::MaxIterations;
  sdp::Status step2_status = sdp::Status::MaxIterations;
};

struct SearchTrace {
  std::uint64_t seed = 0;
  Matrix gamma0;
  std::vector<SearchRecord> records;
  Matrix gamma;  // final state
  Witness witness;
  double value = 0.0;
  /// min eigenvalue of each partially transposed two-mode marginal, in
  /// (0,1), (0,2), ..., (N-2,N-1) order.
  std::vector<double> ppt;
  bool completed = false;
  bool success = false;
  std::string message;
};

/// gamma_0 = interleave(G, G^-1) with G = Q^T D Q, Q Haar orthogonal and D
/// log-uniform in [1/3, 3].
CovarianceMatrix random_pure_phase_free(int n_modes, std::mt19937_64& rng);
CovarianceMatrix random_pure_phase_free(int n_modes, std::uint64_t seed);

struct Step2Result {
  sdp::Status status = sdp::Status::MaxIterations;
  CovarianceMatrix gamma;
  /// Tr[gamma Z] at the optimum.
  double objective = 0.0;
};

/// minimize Tr[gamma Z] over phase-free gamma with gamma + i Omega >= 0,
/// every two-mode marginal PPT, diag entries in [lo, hi] and
/// gamma >= floor * identity.
Step2Result step2_sdp(const Witness& z, const SearchConfig& cfg,
                      const sdp::Options& opts = {});

/// Largest violation of the step 2 constraints (0 when all hold).
double step2_violation(const CovarianceMatrix& gamma, const SearchConfig& cfg);

SearchTrace search(const SearchConfig& cfg, const WitnessOptions& opts = {});

/// Runs seeds cfg.seed, cfg.seed + 1, ... concurrently; traces come back in
/// seed order.
std::vector<SearchTrace> search_restarts(const SearchConfig& cfg, int restarts,
                                         const WitnessOptions& opts = {},
                                         bool parallel = true);

/// Index of the successful trace with the lowest value, or of the lowest
/// value overall when none succeeded; -1 for an empty list.
int best_trace(const std::vector<SearchTrace>& traces);

}  // namespace cvgme
