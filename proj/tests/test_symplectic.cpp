#include <gtest/gtest.h>

#include "cvgme/reference_data.hpp"
#include "cvgme/symplectic.hpp"
#include "test_util.hpp"

using namespace cvgme;
using testutil::max_abs;

namespace {
std::vector<double> sorted(const Vector& v) {
  std::vector<double> a(v.data(), v.data() + v.size());
  std::sort(a.begin(), a.end());
  return a;
}
}  // namespace

TEST(Williamson, HundredRandomStates) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4;
    const auto g = testutil::random_cm(n, rng);
    const auto w = williamson(g);
    const double scale = std::max(1.0, max_abs(g.matrix()));
    EXPECT_LE(max_abs(w.s * w.normal_form() * w.s.transpose() - g.matrix()) / scale, 1e-8) << k;
    EXPECT_LE(symplectic_residual(w.s), 1e-8) << k;
    const Vector oracle = testutil::symplectic_eigs_oracle(g.matrix());
    EXPECT_LE((w.nu - oracle).cwiseAbs().maxCoeff(), 1e-8) << k;
    EXPECT_GE(w.nu.minCoeff(), 1.0 - 1e-9);
  }
}

TEST(Williamson, PhaseFreeRouteAgrees) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 30; ++k) {
    const auto g = testutil::random_cm(3, rng, true);
    const auto a = williamson_general(g);
    const auto b = williamson_phase_free(g);
    EXPECT_LE((a.nu - b.nu).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_TRUE(is_phase_free_transform(b.s, 1e-12));
    EXPECT_LE(max_abs(b.s * b.normal_form() * b.s.transpose() - g.matrix()), 1e-8);
    EXPECT_LE(symplectic_residual(b.s), 1e-8);
    // singular values of S, and hence the squeezing, do not depend on the route
    const auto sa = sorted(bloch_messiah(a.s).squeezing());
    const auto sb = sorted(bloch_messiah(b.s).squeezing());
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(sa[j], sb[j], 1e-8);
  }
  std::mt19937_64 r2(33);
  EXPECT_THROW(williamson_phase_free(testutil::random_cm(2, r2)), std::invalid_argument);
  EXPECT_THROW(williamson(CovarianceMatrix(Matrix(0.5 * Matrix::Identity(4, 4)))),
               std::invalid_argument);
}

TEST(BlochMessiah, FactorsAreSymplecticAndPassive) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 40; ++k) {
    const bool pf = k % 2 == 0;
    const int n = 2 + k % 3;
    const Matrix s = testutil::random_symplectic(n, rng, pf);
    const auto bm = bloch_messiah(s);
    EXPECT_LE(max_abs(bm.v * bm.r * bm.u - s) / std::max(1.0, max_abs(s)), 1e-8);
    for (const Matrix* x : {&bm.u, &bm.r, &bm.v}) EXPECT_LE(symplectic_residual(*x), 1e-8);
    EXPECT_LE(max_abs(bm.u * bm.u.transpose() - Matrix::Identity(2 * n, 2 * n)), 1e-8);
    EXPECT_LE(max_abs(bm.v * bm.v.transpose() - Matrix::Identity(2 * n, 2 * n)), 1e-8);
    EXPECT_EQ(max_abs(Matrix(bm.r.diagonal().asDiagonal()) - bm.r), 0.0);
    if (pf) {
      EXPECT_TRUE(is_phase_free_transform(bm.u, 1e-10));
      EXPECT_TRUE(is_phase_free_transform(bm.v, 1e-10));
    }
    // squeezing = singular values of S below 1
    const Vector sv = Eigen::JacobiSVD<Matrix>(s).singularValues();
    const auto sq = sorted(bm.squeezing());
    std::vector<double> small;
    for (int i = 0; i < sv.size(); ++i) small.push_back(std::min(sv(i), 1.0 / sv(i)));
    std::sort(small.begin(), small.end());
    for (int j = 0; j < n; ++j) EXPECT_NEAR(sq[j], small[2 * j], 1e-8);
  }
  EXPECT_THROW(bloch_messiah(Matrix::Ones(4, 4)), std::invalid_argument);
}

TEST(BeamSplitter, MatricesAreOrthogonal) {
  for (auto v : {BsVariant::Plain, BsVariant::U_AB, BsVariant::U_AC, BsVariant::U_BC, BsVariant::V_AB,
                 BsVariant::V_AC, BsVariant::V_BC}) {
    EXPECT_EQ(bs_variant_from_string(to_string(v)), v);
    for (double t : {0.0, 0.3, 1.0}) {
      const Matrix b = beam_splitter_matrix(v, t, 3, v == BsVariant::Plain ? ModePair{0, 2} : variant_pair(v));
      EXPECT_LE(max_abs(b * b.transpose() - Matrix::Identity(3, 3)), 1e-14);
      EXPECT_LE(symplectic_residual(lift_orthogonal(b)), 1e-14);
    }
  }
  EXPECT_EQ(max_abs(beam_splitter_matrix(BsVariant::Plain, 1.0) - Matrix::Identity(3, 3)), 0.0);
  EXPECT_THROW(beam_splitter_matrix(BsVariant::Plain, 1.5), std::invalid_argument);
  EXPECT_THROW(bs_variant_from_string("X_AB"), std::invalid_argument);
}

TEST(Reck, RandomOrthogonals) {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 100; ++k) {
    const Matrix o = testutil::random_orthogonal(3, rng);
    for (auto side : {ReckSide::U, ReckSide::V}) {
      const auto st = reck_decompose(o, side);
      EXPECT_LE(st.residual, 1e-8);
      EXPECT_LE(max_abs(st.matrix() - o), 1e-8);
      ASSERT_EQ(st.splitters.size(), 3u);
      for (const auto& b : st.splitters) {
        EXPECT_GE(b.t, 0.0);
        EXPECT_LE(b.t, 1.0);
      }
    }
    // the 6x6 phase-free form decomposes the same way
    const auto lifted = reck_decompose(lift_orthogonal(o), ReckSide::U);
    EXPECT_LE(lifted.residual, 1e-8);
  }
}

TEST(Reck, IdentityNeedsSignFlips) {
  // The U-side product has determinant -1, so O = I is reached with all
  // splitters fully transmitting plus leftover sign flips.
  const auto st = reck_decompose(Matrix::Identity(3, 3), ReckSide::U);
  const auto t = transmissivities(st);
  for (double x : t) EXPECT_NEAR(x, 1.0, 1e-12);
  EXPECT_TRUE(st.has_signs());
  EXPECT_LE(max_abs(st.matrix() - Matrix::Identity(3, 3)), 1e-12);
}

TEST(Reck, ReferenceStateTransmissivities) {
  // passive stages of the compiled reference state
  const auto w = williamson_phase_free(CovarianceMatrix(reference::gamma3()));
  const auto bm = bloch_messiah(w.s);
  EXPECT_LE(symplectic_residual(bm.u), 1e-10);
  const auto u = reck_decompose(bm.u, ReckSide::U);
  const auto v = reck_decompose(bm.v, ReckSide::V);
  EXPECT_LE(u.residual, 1e-8);
  EXPECT_LE(v.residual, 1e-8);
}
