#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cvgme/covariance.hpp"

namespace cvgme::sdp {

// Standard primal form handled by the solver:
//
//   minimize   sum_b <C_b, X_b> + c_f . x_f
//   subject to sum_b <A_ib, X_b> + F_i . x_f = b_i,   X_b PSD,  x_f free.
//
// The dual is  maximize b.y  s.t.  C_b - sum_i y_i A_ib = S_b PSD,
// F^T y = c_f.  A 1x1 PSD block is a nonnegative scalar.

enum class BlockKind { Psd, Free };

struct BlockSpec {
  BlockKind kind = BlockKind::Psd;
  int dim = 1;
};

struct Term {
  int block;
  int row;
  int col;  // always 0 for free blocks
  double value;
};

/// sum(value * X_block(row, col)) over the stored terms. For PSD blocks the
/// entry (row, col) and (col, row) denote the same variable, so an
/// off-diagonal term contributes value * X(row, col) exactly once.
class LinearFunctional {
 public:
  void add(int block, int row, int col, double value) {
    terms_.push_back({block, row, col, value});
  }
  void add_free(int block, int index, double value) {
    terms_.push_back({block, index, 0, value});
  }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
};

struct Problem {
  std::vector<BlockSpec> blocks;
  LinearFunctional objective;
  std::vector<LinearFunctional> equalities;
  std::vector<double> rhs;

  int add_psd_block(int dim) {
    blocks.push_back({BlockKind::Psd, dim});
    return static_cast<int>(blocks.size()) - 1;
  }
  int add_free_block(int dim) {
    blocks.push_back({BlockKind::Free, dim});
    return static_cast<int>(blocks.size()) - 1;
  }
  void add_equality(LinearFunctional f, double b) {
    equalities.push_back(std::move(f));
    rhs.push_back(b);
  }
  /// Throws std::invalid_argument on shape mismatches.
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded, MaxIterations };

std::string to_string(Status s);

struct IterationInfo {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double mu = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  double step = 0.0;
};

struct Options {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iter = 200;
  /// Use the OpenMP Schur-complement kernel (results are identical either way).
  bool parallel = true;
  /// Called once per iteration; used for debug dumps.
  std::function<void(const IterationInfo&)> on_iteration;
};

struct Solution {
  Status status = Status::MaxIterations;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// Primal blocks; free blocks are stored as dim x 1 column vectors.
  std::vector<Matrix> variables;
  /// Dual slack per block (zero-sized for free blocks).
  std::vector<Matrix> slacks;
  /// One multiplier per original equality (0 for rows dropped as redundant).
  Vector dual_multipliers;
  /// |pobj - dobj| / (1 + |pobj|).
  double gap = 0.0;
  /// max_i |<A_i, X> - b_i| / (1 + max |b|), on the original rows.
  double primal_residual = 0.0;
  /// ||C - A^T y - S||_F / (1 + ||C||_F), including free columns.
  double dual_residual = 0.0;
  /// Smallest eigenvalue over all PSD primal blocks.
  double min_block_eigenvalue = 0.0;
  int iterations = 0;
  int redundant_rows = 0;
  /// Iterations at which pobj - dobj fell below its feasibility-slack bound.
  int weak_duality_violations = 0;
  std::string message;
};

Solution solve(const Problem& problem, const Options& options = {});

/// Real symmetric embedding of a dim x dim Hermitian matrix P + iQ as
/// [[P, -Q], [Q, P]] (size 2*dim). Positive semidefiniteness is preserved in
/// both directions.
class HermitianEmbedding {
 public:
  explicit HermitianEmbedding(int dim);

  int dim() const { return dim_; }
  int embedded_dim() const { return 2 * dim_; }

  /// Linear constraints (rhs 0) forcing the top-left and bottom-right blocks
  /// to agree and the off-diagonal blocks to be antisymmetric negatives of
  /// each other. Not needed when every functional on the block goes through
  /// add_real_part/add_imag_part, since those read the symmetrized parts.
  std::vector<LinearFunctional> structure_constraints(int block) const;

  /// Adds weight * Re X(r, c) = weight * (Y(r,c) + Y(r+n,c+n)) / 2.
  void add_real_part(LinearFunctional& f, int block, int r, int c,
                     double weight) const;
  /// Adds weight * Im X(r, c) = weight * (Y(r+n,c) - Y(r,c+n)) / 2.
  void add_imag_part(LinearFunctional& f, int block, int r, int c,
                     double weight) const;
  /// Adds Tr[i * sigma * X] for a real antisymmetric sigma.
  void add_trace_i_antisym(LinearFunctional& f, int block,
                           const Matrix& sigma) const;

  Matrix embed(const Matrix& re, const Matrix& im) const;
  Matrix real_part(const Matrix& y) const;
  Matrix imag_part(const Matrix& y) const;

 private:
  int dim_;
};

/// Builder for problems posed as linear matrix inequalities in free
/// variables y:  minimize c.y  s.t.  F0_b + sum_i y_i F_ib PSD for every
/// block b. Lowered onto the dual side of the standard form.
class LmiProblem {
 public:
  int add_variable();
  int add_block(int dim);
  int num_variables() const { return num_vars_; }

  /// Symmetric entry F0(r, c) = F0(c, r) = value (accumulates).
  void add_constant(int block, int r, int c, double value);
  /// Symmetric entry F_var(r, c) = F_var(c, r) = value (accumulates).
  void add_coefficient(int block, int var, int r, int c, double value);
  void add_objective(int var, double value);

  Problem lower() const;

  struct Result {
    Status status = Status::MaxIterations;  // Infeasible means the LMI is
                                            // infeasible
    double value = 0.0;                     // c.y at the returned point
    Vector y;
    std::vector<Matrix> slacks;  // F0 + sum y_i F_i per block
    Solution raw;
  };
  Result solve(const Options& options = {}) const;

 private:
  struct Coeff {
    int block, var, row, col;
    double value;
  };
  int num_vars_ = 0;
  std::vector<int> block_dims_;
  std::vector<Coeff> constants_;  // var = -1
  std::vector<Coeff> coeffs_;
  std::vector<double> objective_;
};

}  // namespace cvgme::sdp
