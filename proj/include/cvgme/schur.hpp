#pragma once

// Dense kernels behind the interior-point iteration. Exposed so tests and
// the benchmark can compare the parallel kernels against the serial
// reference implementation.

#include <vector>

#include "cvgme/covariance.hpp"

namespace cvgme::sdp::detail {

/// Symmetric coefficient: A(row, col) = A(col, row) = value, row <= col.
struct SymEntry {
  int row;
  int col;
  double value;
};

struct ConstraintBlock {
  int constraint;
  std::vector<SymEntry> entries;
};

/// The constraint coefficients restricted to one PSD block.
struct BlockRows {
  int dim = 0;
  std::vector<ConstraintBlock> rows;
};

Matrix to_dense(const std::vector<SymEntry>& entries, int dim);

/// <A, X> for a symmetric coefficient list.
double inner(const std::vector<SymEntry>& entries, const Matrix& x);

/// scaled[b][k] = R_b^T A_{rows[k]} R_b for every block b.
std::vector<std::vector<Matrix>> scale_constraints(
    const std::vector<BlockRows>& blocks, const std::vector<Matrix>& r,
    bool parallel);

/// M_ij = sum_b <G_ib, G_jb>, accumulated block by block in a fixed order so
/// the parallel and serial paths agree bit for bit.
Matrix assemble_schur(const std::vector<BlockRows>& blocks,
                      const std::vector<std::vector<Matrix>>& scaled, int m,
                      bool parallel);

/// Independent route: M_ij = sum_b tr(A_ib W_b A_jb W_b) with dense
/// coefficient matrices. Serial, O(m^2 n^3); for testing only.
Matrix assemble_schur_reference(const std::vector<BlockRows>& blocks,
                                const std::vector<Matrix>& w, int m);

/// Number of threads the parallel kernels will use.
int kernel_threads();

}  // namespace cvgme::sdp::detail
