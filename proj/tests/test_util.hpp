#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "cvgme/covariance.hpp"
#include "cvgme/symplectic.hpp"

namespace testutil {

using cvgme::Matrix;
using cvgme::Vector;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const Matrix g = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

// Local rotations mix x and p; passive and squeezing parts are phase free.
inline Matrix random_symplectic(int n, std::mt19937_64& rng, bool phase_free = false) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), sq(-0.9, 0.9);
  auto rot = [&] {
    Matrix r = Matrix::Identity(2 * n, 2 * n);
    if (phase_free) return r;
    for (int j = 0; j < n; ++j) {
      const double t = ang(rng);
      r(2 * j, 2 * j) = r(2 * j + 1, 2 * j + 1) = std::cos(t);
      r(2 * j, 2 * j + 1) = std::sin(t);
      r(2 * j + 1, 2 * j) = -std::sin(t);
    }
    return r;
  };
  Matrix d = Matrix::Identity(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double e = std::exp(sq(rng));
    d(2 * j, 2 * j) = e;
    d(2 * j + 1, 2 * j + 1) = 1.0 / e;
  }
  return rot() * cvgme::lift_orthogonal(random_orthogonal(n, rng)) * d * rot() *
         cvgme::lift_orthogonal(random_orthogonal(n, rng));
}

inline cvgme::CovarianceMatrix random_cm(int n, std::mt19937_64& rng, bool phase_free = false,
                                         double max_thermal = 3.0) {
  std::uniform_real_distribution<double> th(1.0, max_thermal);
  const Matrix s = random_symplectic(n, rng, phase_free);
  Vector w(2 * n);
  for (int j = 0; j < n; ++j) w(2 * j) = w(2 * j + 1) = th(rng);
  const Matrix g = s * w.asDiagonal() * s.transpose();
  return cvgme::CovarianceMatrix(Matrix(0.5 * (g + g.transpose())));
}

// Independent oracle: eigenvalues of the complex Hermitian matrix g + i sigma.
inline Vector hermitian_eigs(const Matrix& g, const Matrix& sigma) {
  const Eigen::MatrixXcd h = g.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 1.0) * sigma.cast<std::complex<double>>();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
}

// Symplectic eigenvalues as |eig(i Omega gamma)|, sorted descending.
inline Vector symplectic_eigs_oracle(const Matrix& g) {
  const int n = static_cast<int>(g.rows()) / 2;
  const Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) *
                             (cvgme::omega(n) * g).cast<std::complex<double>>();
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
  std::vector<double> a;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i).real() > 0) a.push_back(ev(i).real());
  std::sort(a.rbegin(), a.rend());
  return Eigen::Map<Vector>(a.data(), static_cast<Eigen::Index>(a.size()));
}

// Two-mode squeezed vacuum, xpxp.
inline Matrix tmsv(double r) {
  const double c = std::cosh(2 * r), s = std::sinh(2 * r);
  Matrix g = Matrix::Zero(4, 4);
  g.diagonal().setConstant(c);
  g(0, 2) = g(2, 0) = s;
  g(1, 3) = g(3, 1) = -s;
  return g;
}

}  // namespace testutil
