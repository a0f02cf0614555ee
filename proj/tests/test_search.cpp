#include <gtest/gtest.h>

#include "cvgme/search.hpp"
#include "cvgme/symplectic.hpp"
#include "test_util.hpp"

using namespace cvgme;

TEST(Search, RandomPureStates) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_pure_phase_free(3, seed);
    EXPECT_TRUE(g.is_phase_free());
    const Vector nu = testutil::symplectic_eigs_oracle(g.matrix());
    EXPECT_LE((nu - Vector::Ones(3)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ(testutil::max_abs(g.matrix() - random_pure_phase_free(3, seed).matrix()), 0.0);
  }
}

TEST(Search, ConfigValidation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.n_modes = 4;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.diag_hi = 0.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.min_eig_floor = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Search, TraceProperties) {
  SearchConfig cfg;
  cfg.seed = 3;
  const auto t = search(cfg);
  ASSERT_TRUE(t.completed) << t.message;
  ASSERT_FALSE(t.records.empty());
  for (std::size_t i = 1; i < t.records.size(); ++i)
    EXPECT_LE(t.records[i].witness_value, t.records[i - 1].witness_value + 1e-6);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& r = t.records[i];
    // from the second round on, the input state is feasible for Step 2
    if (i > 0) EXPECT_LE(r.witness_value, r.step1_value + 1e-6);
    EXPECT_LE(step2_violation(CovarianceMatrix(r.gamma), cfg), 1e-6);
  }
  const auto& g = t.gamma;
  EXPECT_GE(g.diagonal().minCoeff(), cfg.diag_lo - 1e-6);
  EXPECT_LE(g.diagonal().maxCoeff(), cfg.diag_hi + 1e-6);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues()(0), cfg.min_eig_floor - 1e-6);
  EXPECT_TRUE(CovarianceMatrix(g).is_phase_free(1e-9));
  ASSERT_EQ(t.ppt.size(), 3u);
  EXPECT_NEAR(evaluate_witness(CovarianceMatrix(g), t.witness), t.value, 1e-7);
  EXPECT_EQ(t.success, t.value < -1e-4 && *std::min_element(t.ppt.begin(), t.ppt.end()) >= -1e-7);
}

TEST(Search, Step2RespectsConstraints) {
  const auto g0 = random_pure_phase_free(3, 5);
  const auto w = gme_witness(g0, tree_preset("chain3"));
  SearchConfig cfg;
  const auto s2 = step2_sdp(w.witness, cfg);
  ASSERT_EQ(s2.status, sdp::Status::Optimal);
  EXPECT_LE(step2_violation(s2.gamma, cfg), 1e-6);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_GE(ppt_min_eigenvalue(s2.gamma, i, j), -1e-7);
  EXPECT_NEAR(s2.objective - 1.0, evaluate_witness(s2.gamma, w.witness), 1e-6);  // objective is Tr[gamma Z]
  // vacuum sits below a raised diagonal floor
  cfg.diag_lo = 2.0;
  EXPECT_GT(step2_violation(CovarianceMatrix::vacuum(3), cfg), 0.5);
}

TEST(Search, RestartsDeterministic) {
  SearchConfig cfg;
  cfg.iterations = 3;
  const auto a = search_restarts(cfg, 3, {}, true);
  const auto b = search_restarts(cfg, 3, {}, false);
  ASSERT_EQ(a.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(a[k].seed, cfg.seed + k);
    EXPECT_EQ(a[k].value, b[k].value);
    EXPECT_EQ(testutil::max_abs(a[k].gamma - b[k].gamma), 0.0);
  }
  const int best = best_trace(a);
  ASSERT_GE(best, 0);
  for (const auto& t : a)
    if (t.completed) EXPECT_LE(a[best].value, t.value);
  EXPECT_EQ(best_trace({}), -1);
}
