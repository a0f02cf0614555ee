#include <gtest/gtest.h>

#include "cvgme/covariance.hpp"
#include "test_util.hpp"

using namespace cvgme;
using testutil::max_abs;

TEST(Covariance, VacuumIsPhysicalOnBoundary) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = check_physical(CovarianceMatrix::vacuum(n));
    EXPECT_TRUE(r.is_physical);
    EXPECT_NEAR(r.min_eig, 0.0, 1e-12);
  }
}

TEST(Covariance, RejectsBadInput) {
  EXPECT_THROW(CovarianceMatrix(Matrix::Identity(3, 3)), std::invalid_argument);
  Matrix a = Matrix::Identity(4, 4);
  a(0, 1) = 0.5;
  EXPECT_THROW(check_physical(a), std::invalid_argument);
  EXPECT_FALSE(check_physical(CovarianceMatrix(Matrix(0.5 * Matrix::Identity(4, 4)))).is_physical);
  EXPECT_THROW(interleave(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(add_noise(CovarianceMatrix::vacuum(2), -0.1), std::invalid_argument);
}

TEST(Covariance, OmegaStructure) {
  const Matrix o = omega(3);
  EXPECT_EQ(max_abs(o + o.transpose()), 0.0);
  EXPECT_EQ(max_abs(o * o + Matrix::Identity(6, 6)), 0.0);
  EXPECT_EQ(o(0, 1), 1.0);
  EXPECT_EQ(o(1, 0), -1.0);
}

TEST(Covariance, MinEigenvalueMatchesComplexOracle) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 30; ++k) {
    const auto g = testutil::random_cm(2 + k % 3, rng);
    const auto r = check_physical(g);
    EXPECT_TRUE(r.is_physical);
    EXPECT_NEAR(r.min_eig, testutil::hermitian_eigs(g.matrix(), omega(g.n_modes())).minCoeff(), 1e-9);
  }
}

TEST(Covariance, PartialTransposeInvolution) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto g = testutil::random_cm(3, rng);
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(max_abs(partial_transpose(partial_transpose(g, j), j).matrix() - g.matrix()), 0.0);
  }
}

TEST(Covariance, PptSpectrumIndependentOfTransposedSide) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto g = testutil::random_cm(3, rng);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const Matrix m = g.marginal(i, j).matrix();
        const auto tb = partial_transpose(CovarianceMatrix(m), 1).matrix();
        const double oracle = testutil::hermitian_eigs(tb, omega(2)).minCoeff();
        EXPECT_NEAR(ppt_min_eigenvalue(g, i, j), oracle, 1e-9);
        EXPECT_NEAR(ppt_min_eigenvalue(g, i, j), ppt_min_eigenvalue(g, j, i), 1e-9);
      }
  }
}

TEST(Covariance, TwoModeSqueezedVacuumIsNpt) {
  for (double r : {0.1, 0.5, 1.0}) {
    const CovarianceMatrix g(testutil::tmsv(r));
    EXPECT_TRUE(check_physical(g).is_physical);
    EXPECT_LT(ppt_min_eigenvalue(g, 0, 1), 0.0);
  }
  EXPECT_GE(ppt_min_eigenvalue(CovarianceMatrix::vacuum(2), 0, 1), -1e-12);
}

TEST(Covariance, MarginalAndNoise) {
  std::mt19937_64 rng(4);
  const auto g = testutil::random_cm(3, rng);
  const auto m = g.marginal(0, 2);
  EXPECT_EQ(m.matrix()(1, 2), g(1, 4));
  EXPECT_EQ(m.matrix()(3, 3), g(5, 5));
  EXPECT_LE(max_abs(add_noise(g, 0.3).matrix() - g.matrix() - 0.3 * Matrix::Identity(6, 6)), 1e-15);
  EXPECT_THROW(g.marginal(1, 1), std::invalid_argument);
}

TEST(Covariance, InterleaveAndPhaseFree) {
  const Matrix xx = (Matrix(2, 2) << 2, 1, 1, 3).finished();
  const Matrix pp = xx.inverse();
  const CovarianceMatrix g(interleave(xx, pp));
  EXPECT_TRUE(g.is_phase_free());
  EXPECT_EQ(g(0, 2), 1.0);
  EXPECT_EQ(g(1, 3), pp(0, 1));
  std::mt19937_64 rng(5);
  EXPECT_FALSE(testutil::random_cm(2, rng).is_phase_free(1e-6));
}
