#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cvgme/covariance.hpp"
#include "cvgme/partitions.hpp"
#include "cvgme/sdp.hpp"

namespace cvgme {

/// CM-level witness: Tr[gamma Z] >= 1 on every state it does not detect.
struct Witness {
  int n_modes = 0;
  Matrix z;
  /// Mode pairs whose 2x2 block of z is exactly zero.
  std::vector<ModePair> blind_blocks;
};

struct WitnessOptions {
  sdp::Options sdp;
  /// Threshold on objective values for entanglement decisions.
  double tol = 1e-6;
  /// A solve that stops at the iteration limit is still accepted when its
  /// gap and residuals are below this.
  double accept_tol = 1e-6;
};

struct SeparabilityResult {
  double x_e = 0.0;
  bool separable = false;
  /// Certifying factors on the modes of pi.index_set() and pi.complement().
  Matrix gamma_a;
  Matrix gamma_b;
  sdp::Status status = sdp::Status::MaxIterations;
};

/// maximize x_e  s.t.  gamma - gamma_A (+) gamma_B >= 0 and
/// gamma_A (+) gamma_B + (1 + x_e) i Omega >= 0.
SeparabilityResult separability_test(const CovarianceMatrix& gamma,
                                     const Bipartition& pi,
                                     const WitnessOptions& opts = {});

struct WitnessResult {
  Witness witness;
  /// Tr[gamma Z] - 1; negative values detect entanglement.
  double value = 0.0;
  sdp::Status status = sdp::Status::MaxIterations;
  sdp::Solution raw;
};

WitnessResult bipartite_witness(const CovarianceMatrix& gamma,
                                const Bipartition& pi,
                                const WitnessOptions& opts = {});

/// GME witness. With a tree, Z only reads the 2x2 blocks of the tree's
/// edges and of the single modes.
WitnessResult gme_witness(const CovarianceMatrix& gamma,
                          const std::optional<TreeSpec>& tree,
                          const WitnessOptions& opts = {});

/// Tr[gamma Z] - 1 summed over the nonzero entries of Z only.
double evaluate_witness(const CovarianceMatrix& gamma, const Witness& w);

struct ValidationReport {
  int violations = 0;
  /// Smallest Tr[gamma Z] - 1 seen.
  double worst = 0.0;
};

/// Draws n_samples random biseparable CMs and counts Tr[gamma Z] < 1 - 1e-6.
/// Results do not depend on the thread count.
ValidationReport validate_witness(const Witness& w, int n_samples,
                                  std::uint64_t seed, bool parallel = true);

/// One biseparable sample as used by validate_witness.
Matrix sample_biseparable(int n_modes, std::uint64_t seed, std::uint64_t index);

/// Z symmetrized, blind blocks set to exactly zero.
Witness make_witness(int n_modes, const Matrix& z,
                     const std::vector<ModePair>& blind);

}  // namespace cvgme
