#include "cvgme/schur.hpp"

#ifdef CVGME_HAVE_OPENMP
#include <omp.h>
#endif

namespace cvgme::sdp::detail {

Matrix to_dense(const std::vector<SymEntry>& entries, int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (const auto& e : entries) {
    a(e.row, e.col) += e.value;
    if (e.row != e.col) a(e.col, e.row) += e.value;
  }
  return a;
}

double inner(const std::vector<SymEntry>& entries, const Matrix& x) {
  double s = 0.0;
  for (const auto& e : entries) {
    s += (e.row == e.col ? 1.0 : 2.0) * e.value * x(e.row, e.col);
  }
  return s;
}

namespace {

Matrix scale_one(const std::vector<SymEntry>& entries, const Matrix& r) {
  const int n = static_cast<int>(r.rows());
  // Sparse rows: sum of rank-one/rank-two updates. Dense rows: R^T A R.
  if (static_cast<int>(entries.size()) * 2 > n) {
    const Matrix a = to_dense(entries, n);
    return r.transpose() * a * r;
  }
  Matrix g = Matrix::Zero(n, n);
  for (const auto& e : entries) {
    const auto u = r.row(e.row);
    if (e.row == e.col) {
      g.noalias() += e.value * u.transpose() * u;
    } else {
      const auto v = r.row(e.col);
      g.noalias() += e.value * (u.transpose() * v + v.transpose() * u);
    }
  }
  return g;
}

}  // namespace

std::vector<std::vector<Matrix>> scale_constraints(
    const std::vector<BlockRows>& blocks, const std::vector<Matrix>& r,
    bool parallel) {
  std::vector<std::vector<Matrix>> out(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& rows = blocks[b].rows;
    out[b].resize(rows.size());
    const long count = static_cast<long>(rows.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
      for (long k = 0; k < count; ++k) out[b][k] = scale_one(rows[k].entries, r[b]);
    } else {
      for (long k = 0; k < count; ++k) out[b][k] = scale_one(rows[k].entries, r[b]);
    }
  }
  return out;
}

Matrix assemble_schur(const std::vector<BlockRows>& blocks,
                      const std::vector<std::vector<Matrix>>& scaled, int m,
                      bool parallel) {
  Matrix schur = Matrix::Zero(m, m);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& rows = blocks[b].rows;
    const auto& g = scaled[b];
    const long count = static_cast<long>(rows.size());
    // Row k of this block only touches schur row rows[k].constraint, so
    // threads write disjoint rows.
    auto body = [&](long k) {
      const int i = rows[k].constraint;
      for (long l = 0; l <= k; ++l) {
        const int j = rows[l].constraint;
        const double v = g[k].cwiseProduct(g[l]).sum();
        schur(i, j) += v;
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
      for (long k = 0; k < count; ++k) body(k);
    } else {
      for (long k = 0; k < count; ++k) body(k);
    }
  }
  // Constraint indices within a block are increasing, so only the lower
  // triangle was filled.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) schur(i, j) = schur(j, i);
  return schur;
}

Matrix assemble_schur_reference(const std::vector<BlockRows>& blocks,
                                const std::vector<Matrix>& w, int m) {
  Matrix schur = Matrix::Zero(m, m);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& rows = blocks[b].rows;
    const int n = blocks[b].dim;
    std::vector<Matrix> awa;
    awa.reserve(rows.size());
    for (const auto& row : rows) awa.push_back(to_dense(row.entries, n) * w[b]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (std::size_t l = 0; l < rows.size(); ++l) {
        schur(rows[k].constraint, rows[l].constraint) +=
            (awa[k] * awa[l]).trace();
      }
    }
  }
  return schur;
}

int kernel_threads() {
#ifdef CVGME_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cvgme::sdp::detail
