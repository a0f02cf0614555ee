#include <gtest/gtest.h>

#include <functional>
#include <limits>

#include "cvgme/schur.hpp"
#include "cvgme/sdp.hpp"
#include "test_util.hpp"

using namespace cvgme;
using namespace cvgme::sdp;

namespace {

// Every solve in this file goes through here so the weak-duality counter is
// checked on all of them.
Solution checked_solve(const Problem& p, const Options& o = {}) {
  const Solution s = solve(p, o);
  EXPECT_EQ(s.weak_duality_violations, 0) << s.message;
  return s;
}

struct Lp {
  Matrix a;
  Vector b, c;
};

Lp random_lp(std::mt19937_64& rng, int m, int n) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  Lp lp;
  lp.a = Matrix::NullaryExpr(m, n, [&](Eigen::Index, Eigen::Index) { return u(rng); });
  const Vector x0 = Vector::NullaryExpr(n, [&](Eigen::Index) { return u(rng); });
  lp.b = lp.a * x0;
  lp.c = Vector::NullaryExpr(n, [&](Eigen::Index) { return u(rng) - 1.0; });
  return lp;
}

// Brute-force vertex enumeration over all m-column bases.
double lp_oracle(const Lp& lp) {
  const int m = lp.a.rows(), n = lp.a.cols();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      Matrix basis(m, m);
      for (int k = 0; k < m; ++k) basis.col(k) = lp.a.col(idx[k]);
      Eigen::FullPivLU<Matrix> lu(basis);
      if (!lu.isInvertible()) return;
      const Vector xb = lu.solve(lp.b);
      if (xb.minCoeff() < -1e-12) return;
      double v = 0;
      for (int k = 0; k < m; ++k) v += lp.c(idx[k]) * xb(k);
      best = std::min(best, v);
      return;
    }
    for (int j = start; j < n; ++j) {
      idx[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

Problem lp_as_sdp(const Lp& lp) {
  Problem p;
  for (int i = 0; i < lp.a.cols(); ++i) {
    p.blocks.push_back({BlockKind::Psd, 1});
    p.objective.add(i, 0, 0, lp.c(i));
  }
  for (int r = 0; r < lp.a.rows(); ++r) {
    LinearFunctional f;
    for (int i = 0; i < lp.a.cols(); ++i) f.add(i, 0, 0, lp.a(r, i));
    p.equalities.push_back(f);
    p.rhs.push_back(lp.b(r));
  }
  return p;
}

Matrix random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const Matrix g = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
  return 0.5 * (g + g.transpose());
}

// min <C, X> s.t. Tr X = 1: optimum is lambda_min(C).
Problem trace_one(const Matrix& c) {
  Problem p;
  const int n = c.rows();
  p.blocks.push_back({BlockKind::Psd, n});
  for (int r = 0; r < n; ++r)
    for (int k = r; k < n; ++k) p.objective.add(0, r, k, r == k ? c(r, k) : 2 * c(r, k));
  LinearFunctional tr;
  for (int r = 0; r < n; ++r) tr.add(0, r, r, 1.0);
  p.equalities.push_back(tr);
  p.rhs.push_back(1.0);
  return p;
}

}  // namespace

TEST(Sdp, DiagonalSdpMatchesLp) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 3, n = m + 2 + trial % 4;
    const Lp lp = random_lp(rng, m, n);
    const auto s = checked_solve(lp_as_sdp(lp));
    ASSERT_EQ(s.status, Status::Optimal) << s.message;
    EXPECT_NEAR(s.primal_value, lp_oracle(lp), 1e-8);
    EXPECT_LE(s.primal_residual, 1e-8);
  }
}

TEST(Sdp, TraceOneGivesMinEigenvalue) {
  std::mt19937_64 rng(12);
  for (int n : {2, 3, 5, 8}) {
    const Matrix c = random_sym(n, rng);
    const auto s = checked_solve(trace_one(c));
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_NEAR(s.primal_value, Eigen::SelfAdjointEigenSolver<Matrix>(c).eigenvalues()(0), 1e-8);
    EXPECT_GE(s.min_block_eigenvalue, -1e-9);
    EXPECT_NEAR(s.variables[0].trace(), 1.0, 1e-8);
  }
}

TEST(Sdp, FreeVariables) {
  // min x_f s.t. x_f - X = -2, X >= 0  ->  x_f = -2
  Problem p;
  p.blocks = {{BlockKind::Psd, 1}, {BlockKind::Free, 1}};
  p.objective.add_free(1, 0, 1.0);
  LinearFunctional f;
  f.add_free(1, 0, 1.0);
  f.add(0, 0, 0, -1.0);
  p.equalities.push_back(f);
  p.rhs.push_back(-2.0);
  const auto s = checked_solve(p);
  ASSERT_EQ(s.status, Status::Optimal) << s.message;
  EXPECT_NEAR(s.primal_value, -2.0, 1e-8);
}

TEST(Sdp, RedundantRowsDropped) {
  Lp lp;
  lp.a = (Matrix(3, 3) << 1, 1, 1, 2, 2, 2, 1, 0, 0).finished();
  lp.b = Vector::Ones(3);
  lp.b(1) = 2.0;
  lp.b(2) = 0.25;
  lp.c = (Vector(3) << 1, 2, 3).finished();
  const auto s = checked_solve(lp_as_sdp(lp));
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s.redundant_rows, 1);
  EXPECT_NEAR(s.primal_value, 0.25 + 2 * 0.75, 1e-8);
}

TEST(Sdp, InfeasibleAndUnbounded) {
  {  // x >= 0, x = -1
    Problem p;
    p.blocks = {{BlockKind::Psd, 1}};
    p.objective.add(0, 0, 0, 1.0);
    LinearFunctional f;
    f.add(0, 0, 0, 1.0);
    p.equalities.push_back(f);
    p.rhs.push_back(-1.0);
    EXPECT_EQ(checked_solve(p).status, Status::Infeasible);
  }
  {  // min -x0 with x0 = x1, both >= 0
    Problem p;
    p.blocks = {{BlockKind::Psd, 1}, {BlockKind::Psd, 1}};
    p.objective.add(0, 0, 0, -1.0);
    LinearFunctional f;
    f.add(0, 0, 0, 1.0);
    f.add(1, 0, 0, -1.0);
    p.equalities.push_back(f);
    p.rhs.push_back(0.0);
    EXPECT_EQ(checked_solve(p).status, Status::Unbounded);
  }
}

TEST(Sdp, Deterministic) {
  std::mt19937_64 rng(13);
  const Problem p = trace_one(random_sym(6, rng));
  const auto a = checked_solve(p), b = checked_solve(p);
  EXPECT_NEAR(a.primal_value, b.primal_value, 1e-12);
  EXPECT_LE(testutil::max_abs(a.variables[0] - b.variables[0]), 1e-12);
  Options serial;
  serial.parallel = false;
  const auto c = checked_solve(p, serial);
  EXPECT_LE(testutil::max_abs(a.variables[0] - c.variables[0]), 1e-12);
}

TEST(Sdp, TighterGapStaysConsistent) {
  std::mt19937_64 rng(14);
  const Problem p = trace_one(random_sym(5, rng));
  Options loose;
  loose.gap_tol = 1e-6;
  Options tight = loose;
  tight.gap_tol = loose.gap_tol / 10;
  const auto a = checked_solve(p, loose), b = checked_solve(p, tight);
  ASSERT_EQ(a.status, Status::Optimal);
  ASSERT_EQ(b.status, Status::Optimal);
  EXPECT_LE(b.gap, tight.gap_tol);
  EXPECT_NEAR(a.primal_value, b.primal_value, 2 * loose.gap_tol * (1 + std::abs(b.primal_value)));
}

TEST(Sdp, IterationCallback) {
  std::mt19937_64 rng(15);
  int calls = 0;
  Options o;
  o.on_iteration = [&](const IterationInfo& i) {
    ++calls;
    EXPECT_GT(i.tau, 0.0);
  };
  const auto s = checked_solve(trace_one(random_sym(4, rng)), o);
  EXPECT_EQ(calls, s.iterations + 1);  // starting point is reported as iterate 0
}

TEST(Sdp, InvalidProblemThrows) {
  Problem p;
  p.blocks = {{BlockKind::Psd, 2}};
  LinearFunctional f;
  f.add(0, 5, 0, 1.0);
  p.equalities.push_back(f);
  p.rhs.push_back(1.0);
  EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(Lmi, ScalarBound) {
  // min x s.t. [[x, 1], [1, x]] >= 0  ->  x = 1
  LmiProblem lmi;
  const int x = lmi.add_variable();
  const int b = lmi.add_block(2);
  lmi.add_coefficient(b, x, 0, 0, 1.0);
  lmi.add_coefficient(b, x, 1, 1, 1.0);
  lmi.add_constant(b, 0, 1, 1.0);
  lmi.add_objective(x, 1.0);
  const auto r = lmi.solve();
  ASSERT_EQ(r.status, Status::Optimal);
  EXPECT_NEAR(r.y(0), 1.0, 1e-7);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(Lmi, InfeasibleLmi) {
  // x >= 0 and -1 - x >= 0 cannot both hold
  LmiProblem lmi;
  const int x = lmi.add_variable();
  const int b0 = lmi.add_block(1);
  const int b1 = lmi.add_block(1);
  lmi.add_coefficient(b0, x, 0, 0, 1.0);
  lmi.add_constant(b1, 0, 0, -1.0);
  lmi.add_coefficient(b1, x, 0, 0, -1.0);
  lmi.add_objective(x, 1.0);
  EXPECT_EQ(lmi.solve().status, Status::Infeasible);
}

TEST(Sdp, AllZeroRows) {
  // 0 = 0 is dropped; 0 = 1 makes the problem infeasible
  for (double rhs : {0.0, 1.0}) {
    Problem p;
    p.blocks = {{BlockKind::Psd, 1}};
    p.objective.add(0, 0, 0, 1.0);
    LinearFunctional f;
    f.add(0, 0, 0, 0.0);
    p.equalities.push_back(f);
    p.rhs.push_back(rhs);
    const auto s = checked_solve(p);
    EXPECT_EQ(s.status, rhs == 0.0 ? Status::Optimal : Status::Infeasible);
    EXPECT_EQ(s.redundant_rows, 1);
  }
}

TEST(HermitianEmbedding, SpectrumDoubles) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> nd;
  for (int n : {2, 4, 6}) {
    const Matrix re = random_sym(n, rng);
    Matrix im = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return nd(rng); });
    im = (0.5 * (im - im.transpose())).eval();
    const HermitianEmbedding h(n);
    const Matrix y = h.embed(re, im);
    EXPECT_EQ(testutil::max_abs(h.real_part(y) - re), 0.0);
    EXPECT_EQ(testutil::max_abs(h.imag_part(y) - im), 0.0);
    const Vector herm = testutil::hermitian_eigs(re, im);
    const Vector emb = Eigen::SelfAdjointEigenSolver<Matrix>(y).eigenvalues();
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(emb(2 * k), herm(k), 1e-10);
      EXPECT_NEAR(emb(2 * k + 1), herm(k), 1e-10);
    }
    // functionals read back Re/Im entries and Tr[i sigma X]
    auto eval = [&](const LinearFunctional& f) {
      double s = 0;
      for (const auto& t : f.terms()) s += t.value * y(t.row, t.col);
      return s;
    };
    LinearFunctional fr, fi, ft;
    h.add_real_part(fr, 0, 0, n - 1, 1.0);
    h.add_imag_part(fi, 0, n - 1, 0, 1.0);
    EXPECT_NEAR(eval(fr), re(0, n - 1), 1e-12);
    EXPECT_NEAR(eval(fi), im(n - 1, 0), 1e-12);
    const Matrix sigma = omega(n / 2);
    h.add_trace_i_antisym(ft, 0, sigma);
    const std::complex<double> tr =
        (std::complex<double>(0, 1) * sigma.cast<std::complex<double>>() *
         (re.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>()))
            .trace();
    EXPECT_NEAR(eval(ft), tr.real(), 1e-10);
    EXPECT_NEAR(tr.imag(), 0.0, 1e-10);
    // structure constraints vanish on a genuine embedding
    for (const auto& c : h.structure_constraints(0)) EXPECT_NEAR(eval(c), 0.0, 1e-12);
  }
}

TEST(SchurKernel, ParallelMatchesReference) {
  using namespace cvgme::sdp::detail;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  const int m = 40;
  std::vector<BlockRows> blocks;
  std::vector<Matrix> r, w;
  for (int dim : {6, 12, 1}) {
    BlockRows br;
    br.dim = dim;
    for (int i = 0; i < m; ++i) {
      if (u(rng) < -0.5) continue;
      ConstraintBlock cb;
      cb.constraint = i;
      const int nnz = 1 + (i % 5 == 0 ? dim * dim : 2);
      for (int k = 0; k < nnz; ++k) {
        const int a = rng() % dim, b = rng() % dim;
        cb.entries.push_back({std::min(a, b), std::max(a, b), u(rng)});
      }
      br.rows.push_back(cb);
    }
    const Matrix g = Matrix::NullaryExpr(dim, dim, [&](Eigen::Index, Eigen::Index) { return u(rng); });
    r.push_back(g);
    w.push_back(g * g.transpose());
    blocks.push_back(br);
  }
  const Matrix ref = assemble_schur_reference(blocks, w, m);
  const Matrix ser = assemble_schur(blocks, scale_constraints(blocks, r, false), m, false);
  const Matrix par = assemble_schur(blocks, scale_constraints(blocks, r, true), m, true);
  EXPECT_LE(testutil::max_abs(ser - ref), 1e-10 * (1 + testutil::max_abs(ref)));
  EXPECT_EQ(testutil::max_abs(par - ser), 0.0);  // bitwise
  EXPECT_GE(kernel_threads(), 1);
}
