#pragma once

#include <array>
#include <string>
#include <vector>

#include "cvgme/covariance.hpp"
#include "cvgme/partitions.hpp"

namespace cvgme {

/// max |S Omega S^T - Omega|.
double symplectic_residual(const Matrix& s);
bool is_symplectic(const Matrix& s, double tol = 1e-8);

/// True if S never mixes x and p quadratures.
bool is_phase_free_transform(const Matrix& s, double tol = 1e-12);

/// Acts as o on the x quadratures and as o on the p quadratures.
Matrix lift_orthogonal(const Matrix& o);
Matrix x_sector(const Matrix& m);
Matrix p_sector(const Matrix& m);

struct WilliamsonResult {
  Matrix s;
  /// Symplectic eigenvalues, descending.
  Vector nu;
  /// gamma = S diag(nu_1, nu_1, nu_2, nu_2, ...) S^T.
  Matrix normal_form() const;
};

/// Phase-free gamma goes through williamson_phase_free (so S has no x-p
/// mixing); anything else through williamson_general.
WilliamsonResult williamson(const CovarianceMatrix& gamma);
/// S = gamma^(1/2) O D^(-1/2), O bringing gamma^(1/2) Omega gamma^(1/2) to
/// canonical antisymmetric form.
WilliamsonResult williamson_general(const CovarianceMatrix& gamma);
/// For gamma without x-p entries: S_x = gx^(1/2) O D^(-1/2), S_p = S_x^(-T),
/// with gx^(1/2) gp gx^(1/2) = O D^2 O^T.
WilliamsonResult williamson_phase_free(const CovarianceMatrix& gamma);

struct BlochMessiahResult {
  Matrix u;  // applied first
  Matrix r;  // diagonal, (r_j, 1/r_j) on mode j
  Matrix v;  // applied last
  /// Per-mode x scaling r_j.
  Vector x_factors() const;
  /// Per-mode min(r_j, 1/r_j).
  Vector squeezing() const;
};

/// S = V R U with U, V orthogonal symplectic. Phase-free S gives phase-free
/// U and V with x factors ascending.
BlochMessiahResult bloch_messiah(const Matrix& s);

enum class ReckSide { U, V };

/// Beam-splitter forms for three modes. Each acts on the mode space and is
/// applied identically to x and p.
enum class BsVariant { Plain, U_AB, U_AC, U_BC, V_AB, V_AC, V_BC };

std::string to_string(BsVariant v);
BsVariant bs_variant_from_string(const std::string& s);
/// The pair a variant acts on (0-based); Plain has none.
ModePair variant_pair(BsVariant v);

/// Mode-space matrix of a beam splitter with amplitude transmissivity t.
/// Plain acts on `pair` of an n-mode system as [[t, r], [-r, t]].
Matrix beam_splitter_matrix(BsVariant v, double t, int n_modes = 3,
                            ModePair pair = {0, 1});

struct BeamSplitter {
  BsVariant variant = BsVariant::Plain;
  ModePair modes{0, 1};
  double t = 1.0;
};

struct ReckStage {
  ReckSide side = ReckSide::U;
  /// In application order (U: AB, AC, BC; V: BC, AC, AB).
  std::vector<BeamSplitter> splitters;
  /// O = diag(left) * (product of splitters) * diag(right).
  std::array<double, 3> left{1.0, 1.0, 1.0};
  std::array<double, 3> right{1.0, 1.0, 1.0};
  // applied between the second and third splitter
  std::array<double, 3> middle{1.0, 1.0, 1.0};
  double residual = 0.0;
  bool has_signs() const;
  /// Mode-space matrix the stage implements.
  Matrix matrix() const;
};

/// Three-mode orthogonal (mode-space 3x3, or a phase-free 6x6 symplectic)
/// into three beam splitters. Throws std::invalid_argument for x-p mixing
/// input or N != 3.
ReckStage reck_decompose(const Matrix& o, ReckSide side);

/// Transmissivities listed as (AB, AC, BC).
std::array<double, 3> transmissivities(const ReckStage& stage);

}  // namespace cvgme
