#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cvgme/covariance.hpp"
#include "cvgme/partitions.hpp"
#include "cvgme/symplectic.hpp"
#include "cvgme/witness.hpp"

namespace cvgme {

struct CircuitElement {
  enum class Kind { Squeezer, BeamSplitter, Sign, Displace };
  Kind kind = Kind::Squeezer;

  // Squeezer: the chosen quadrature of `mode` is scaled by s, the other by 1/s.
  // Sign: both quadratures of `mode` change sign.
  int mode = 0;
  double s = 1.0;
  bool squeeze_x = true;

  BeamSplitter bs;

  // Displace: x_i += alpha_i t, p_i += beta_i w with <t^2> = <w^2> = var.
  Vector alpha;
  Vector beta;
  double var = 0.0;

  static CircuitElement squeezer(int mode, double x_factor);
  static CircuitElement beam_splitter(const BeamSplitter& bs);
  static CircuitElement sign(int mode);
  static CircuitElement displace(const Vector& alpha, const Vector& beta, double var);

  /// x scaling of a squeezer (s or 1/s).
  double x_factor() const { return squeeze_x ? s : 1.0 / s; }
};

struct CircuitSpec {
  int n_modes = 0;
  /// Thermal input per mode (1 = vacuum).
  Vector inputs;
  /// Applied in order, first element first.
  std::vector<CircuitElement> elements;

  void validate() const;
};

CovarianceMatrix simulate(const CircuitSpec& c);

/// Symplectic matrix of one element (throws for displacements).
Matrix element_matrix(const CircuitElement& e, int n_modes);

struct CompiledCircuit {
  CircuitSpec circuit;          // raw parameters
  CircuitSpec rounded;          // every parameter rounded to 3 decimals
  bool simplified = false;
  Vector nu;                    // symplectic eigenvalues, descending
  Vector x_factors;             // per-mode squeezer x scaling
  Vector squeezing;             // per-mode min(r, 1/r)
  Vector squeezing_db;          // 10 log10(s^2)
  std::optional<ReckStage> u_stage;
  std::optional<ReckStage> v_stage;
  /// Sign choices on the Williamson and Bloch-Messiah factors that were
  /// applied before the beam-splitter decomposition.
  std::array<double, 3> williamson_signs{1.0, 1.0, 1.0};
  std::array<double, 3> passive_signs{1.0, 1.0, 1.0};
  Vector alpha;
  Vector beta;
  double var = 0.0;
  /// max |simulate(circuit) - gamma|.
  double residual = 0.0;
};

/// Full: thermal inputs, U array, squeezers, V array. Simplified: vacuum
/// inputs, squeezers, correlated displacements carrying the largest
/// symplectic eigenvalue, V array. Needs N = 3 and a phase-free gamma,
/// except that a vacuum gamma compiles to an empty circuit for any N.
CompiledCircuit compile(const CovarianceMatrix& gamma, bool simplified);

double round_to(double v, int decimals);
CircuitSpec round_parameters(const CircuitSpec& c, int decimals);

struct NoiseScan {
  double p = 0.0;
  /// (p, value) pairs in evaluation order.
  std::vector<std::pair<double, double>> evaluations;
};

/// Largest p, to within `resolution`, for which gme_witness(gamma + p 1, t)
/// still gives a value below -opts.tol. 0 if gamma itself is not detected.
NoiseScan noise_tolerance(const CovarianceMatrix& gamma, const TreeSpec& tree,
                          double resolution = 0.005,
                          const WitnessOptions& opts = {});

}  // namespace cvgme
