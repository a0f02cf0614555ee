#include "cvgme/covariance.hpp"

#include <stdexcept>
#include <string>

namespace cvgme {

CovarianceMatrix::CovarianceMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0 ||
      entries.rows() % 2 != 0) {
    throw std::invalid_argument("covariance matrix must be 2N x 2N with N >= 1");
  }
  n_modes_ = static_cast<int>(entries.rows() / 2);
  m_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix CovarianceMatrix::marginal(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_modes_ || j >= n_modes_ || i == j) {
    throw std::invalid_argument("marginal needs two distinct modes in range");
  }
  const int idx[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
  Matrix out(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m_(idx[r], idx[c]);
  return CovarianceMatrix(out);
}

bool CovarianceMatrix::is_phase_free(double tol) const {
  for (int r = 0; r < dim(); r += 2)
    for (int c = 1; c < dim(); c += 2)
      if (std::abs(m_(r, c)) > tol) return false;
  return true;
}

Matrix interleave(const Matrix& xx, const Matrix& pp) {
  const int n = static_cast<int>(xx.rows());
  if (xx.cols() != n || pp.rows() != n || pp.cols() != n) {
    throw std::invalid_argument("interleave: blocks must be square and equal");
  }
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(2 * i, 2 * j) = xx(i, j);
      g(2 * i + 1, 2 * j + 1) = pp(i, j);
    }
  return g;
}

Matrix omega(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("omega: n_modes must be >= 1");
  Matrix w = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    w(2 * j, 2 * j + 1) = 1.0;
    w(2 * j + 1, 2 * j) = -1.0;
  }
  return w;
}

double heisenberg_min_eigenvalue(const Matrix& gamma, const Matrix& sigma) {
  const Eigen::Index n = gamma.rows();
  Matrix embed(2 * n, 2 * n);
  embed << gamma, -sigma, sigma, gamma;
  Eigen::SelfAdjointEigenSolver<Matrix> es(embed, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

PhysicalityReport check_physical(const Matrix& gamma, double tol) {
  if (gamma.rows() != gamma.cols() || gamma.rows() == 0 || gamma.rows() % 2) {
    throw std::invalid_argument("check_physical: matrix must be 2N x 2N");
  }
  if (gamma != gamma.transpose()) {
    throw std::invalid_argument("check_physical: matrix is not symmetric");
  }
  const double e =
      heisenberg_min_eigenvalue(gamma, omega(static_cast<int>(gamma.rows() / 2)));
  return {e >= -tol, e};
}

PhysicalityReport check_physical(const CovarianceMatrix& gamma, double tol) {
  return check_physical(gamma.matrix(), tol);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, int mode) {
  if (mode < 0 || mode >= gamma.n_modes()) {
    throw std::invalid_argument("partial_transpose: mode " +
                                std::to_string(mode) + " out of range");
  }
  Matrix m = gamma.matrix();
  const int p = 2 * mode + 1;
  m.row(p) *= -1.0;
  m.col(p) *= -1.0;
  return CovarianceMatrix(m);
}

double ppt_min_eigenvalue(const CovarianceMatrix& gamma, int i, int j) {
  if (i == j) throw std::invalid_argument("ppt_min_eigenvalue: i == j");
  const CovarianceMatrix pt = partial_transpose(gamma.marginal(i, j), 0);
  return heisenberg_min_eigenvalue(pt.matrix(), omega(2));
}

CovarianceMatrix add_noise(const CovarianceMatrix& gamma, double p) {
  if (!(p >= 0.0)) throw std::invalid_argument("add_noise: p must be >= 0");
  return CovarianceMatrix(gamma.matrix() +
                          p * Matrix::Identity(gamma.dim(), gamma.dim()));
}

}  // namespace cvgme
