#pragma once

#include <Eigen/Dense>

namespace cvgme {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Second-moment matrix of an N-mode Gaussian state in interleaved
/// quadrature order (x1, p1, x2, p2, ...), vacuum = identity.
///
/// The constructor symmetrizes its input, so entries(i, j) == entries(j, i)
/// holds exactly. Physicality is deliberately not an invariant: search
/// routines manipulate candidate matrices that may violate it.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  explicit CovarianceMatrix(const Matrix& entries);

  static CovarianceMatrix vacuum(int n_modes);

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  const Matrix& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  /// Two-mode marginal of modes (i, j), 0-based, keeping i before j.
  CovarianceMatrix marginal(int i, int j) const;

  /// True if every x-p entry is within tol of zero.
  bool is_phase_free(double tol = 0.0) const;

 private:
  int n_modes_ = 0;
  Matrix m_;
};

/// The 2N x 2N matrix with x-block xx and p-block pp, x-p entries 0.
Matrix interleave(const Matrix& xx, const Matrix& pp);

/// Direct sum of n_modes copies of [[0, 1], [-1, 0]].
Matrix omega(int n_modes);

/// Smallest eigenvalue of the Hermitian matrix gamma + i*sigma, computed on
/// the real embedding [[gamma, -sigma], [sigma, gamma]].
double heisenberg_min_eigenvalue(const Matrix& gamma, const Matrix& sigma);

struct PhysicalityReport {
  bool is_physical = false;
  double min_eig = 0.0;
};

PhysicalityReport check_physical(const CovarianceMatrix& gamma,
                                 double tol = kDefaultTol);
/// Raw-matrix variant; rejects non-symmetric or odd-sized input.
PhysicalityReport check_physical(const Matrix& gamma, double tol = kDefaultTol);

/// Flips the sign of the momentum row and column of `mode` (0-based).
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, int mode);

/// min eig[gamma_ij^(T_i) + i*Omega_2] for the marginal of modes (i, j).
double ppt_min_eigenvalue(const CovarianceMatrix& gamma, int i, int j);

/// gamma + p * identity; p must be non-negative.
CovarianceMatrix add_noise(const CovarianceMatrix& gamma, double p);

}  // namespace cvgme
