#include "cvgme/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "cvgme/schur.hpp"

namespace cvgme::sdp {

using detail::BlockRows;
using detail::SymEntry;

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

void Problem::validate() const {
  if (equalities.size() != rhs.size()) {
    throw std::invalid_argument("sdp: equalities and rhs differ in length");
  }
  for (const auto& b : blocks) {
    if (b.dim < 1) throw std::invalid_argument("sdp: block dim must be >= 1");
  }
  auto check = [&](const LinearFunctional& f) {
    for (const auto& t : f.terms()) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks.size())) {
        throw std::invalid_argument("sdp: term refers to a missing block");
      }
      const auto& spec = blocks[t.block];
      const bool ok = spec.kind == BlockKind::Psd
                          ? (t.row >= 0 && t.col >= 0 && t.row < spec.dim &&
                             t.col < spec.dim)
                          : (t.row >= 0 && t.row < spec.dim && t.col == 0);
      if (!ok) throw std::invalid_argument("sdp: term index outside its block");
      if (!std::isfinite(t.value)) {
        throw std::invalid_argument("sdp: non-finite coefficient");
      }
    }
  };
  check(objective);
  for (const auto& f : equalities) check(f);
  for (double v : rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("sdp: non-finite rhs");
}

namespace {

// Problem data after merging duplicate terms, dropping redundant rows and
// normalizing each row.
struct Lowered {
  int m = 0;
  int nf = 0;
  std::vector<int> psd_block;    // problem block of each psd block
  std::vector<int> block_slot;   // problem block -> psd slot or free offset
  std::vector<BlockRows> rows;   // per psd slot
  std::vector<Matrix> c;         // objective per psd slot
  Matrix f;                      // m x nf
  Vector cf;
  Vector b;
  std::vector<int> kept;         // original row of each internal row
  Vector scale;                  // internal row = original row / scale
  int redundant = 0;
  bool inconsistent = false;
};

using EntryMap = std::map<std::tuple<int, int, int>, double>;

// Symmetric per-block entries of a functional (row <= col).
EntryMap merge_terms(const Problem& p, const LinearFunctional& fn) {
  EntryMap out;
  for (const auto& t : fn.terms()) {
    if (p.blocks[t.block].kind == BlockKind::Free) {
      out[{t.block, t.row, 0}] += t.value;
    } else if (t.row == t.col) {
      out[{t.block, t.row, t.col}] += t.value;
    } else {
      out[{t.block, std::min(t.row, t.col), std::max(t.row, t.col)}] +=
          0.5 * t.value;
    }
  }
  return out;
}

Lowered lower_problem(const Problem& p) {
  Lowered lw;
  const int nblocks = static_cast<int>(p.blocks.size());
  lw.block_slot.resize(nblocks);
  std::vector<int> coord_offset(nblocks);
  int ncoords = 0;
  for (int b = 0; b < nblocks; ++b) {
    const auto& spec = p.blocks[b];
    coord_offset[b] = ncoords;
    if (spec.kind == BlockKind::Psd) {
      lw.block_slot[b] = static_cast<int>(lw.psd_block.size());
      lw.psd_block.push_back(b);
      ncoords += spec.dim * (spec.dim + 1) / 2;
    } else {
      lw.block_slot[b] = lw.nf;
      lw.nf += spec.dim;
      ncoords += spec.dim;
    }
  }
  auto coord = [&](int b, int r, int c) {
    if (p.blocks[b].kind == BlockKind::Free) return coord_offset[b] + r;
    // column-major packed upper triangle
    return coord_offset[b] + c * (c + 1) / 2 + r;
  };

  const int m0 = static_cast<int>(p.equalities.size());
  std::vector<EntryMap> merged(m0);
  Matrix e = Matrix::Zero(m0, ncoords);
  for (int i = 0; i < m0; ++i) {
    merged[i] = merge_terms(p, p.equalities[i]);
    for (const auto& [key, v] : merged[i]) {
      const auto [b, r, c] = key;
      e(i, coord(b, r, c)) = (p.blocks[b].kind == BlockKind::Psd && r != c)
                                 ? 2.0 * v
                                 : v;
    }
  }
  Vector b0(m0);
  for (int i = 0; i < m0; ++i) b0(i) = p.rhs[i];

  // Rank-revealing QR on the row space picks a maximal independent subset.
  std::vector<int> kept;
  if (m0 > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(e.transpose());
    qr.setThreshold(1e-11);
    const int rank = static_cast<int>(qr.rank());
    for (int k = 0; k < rank; ++k) kept.push_back(qr.colsPermutation().indices()(k));
    std::sort(kept.begin(), kept.end());
    if (rank < m0) {
      Matrix ek(kept.size(), ncoords);
      Vector bk(kept.size());
      for (std::size_t k = 0; k < kept.size(); ++k) {
        ek.row(k) = e.row(kept[k]);
        bk(k) = b0(kept[k]);
      }
      Eigen::ColPivHouseholderQR<Matrix> kqr;
      if (!kept.empty()) kqr.compute(ek.transpose());
      const double bnorm = 1.0 + b0.cwiseAbs().maxCoeff();
      for (int i = 0; i < m0; ++i) {
        if (std::binary_search(kept.begin(), kept.end(), i)) continue;
        // with no rows kept, row i is numerically zero and needs b_i = 0
        const double implied =
            kept.empty() ? 0.0 : kqr.solve(Vector(e.row(i).transpose())).dot(bk);
        if (std::abs(implied - b0(i)) > 1e-8 * bnorm) lw.inconsistent = true;
      }
    }
  }
  lw.kept = kept;
  lw.m = static_cast<int>(kept.size());
  lw.redundant = m0 - lw.m;

  lw.rows.resize(lw.psd_block.size());
  lw.c.resize(lw.psd_block.size());
  for (std::size_t s = 0; s < lw.psd_block.size(); ++s) {
    const int n = p.blocks[lw.psd_block[s]].dim;
    lw.rows[s].dim = n;
    lw.c[s] = Matrix::Zero(n, n);
  }
  lw.f = Matrix::Zero(lw.m, lw.nf);
  lw.cf = Vector::Zero(lw.nf);
  lw.b = Vector::Zero(lw.m);
  lw.scale = Vector::Ones(lw.m);

  for (int k = 0; k < lw.m; ++k) {
    const int i = kept[k];
    const double norm = e.row(i).norm();
    const double d = norm > 0.0 ? norm : 1.0;
    lw.scale(k) = d;
    lw.b(k) = b0(i) / d;
    std::map<int, std::vector<SymEntry>> per_block;
    for (const auto& [key, v] : merged[i]) {
      const auto [b, r, c] = key;
      if (p.blocks[b].kind == BlockKind::Free) {
        lw.f(k, lw.block_slot[b] + r) = v / d;
      } else {
        per_block[lw.block_slot[b]].push_back({r, c, v / d});
      }
    }
    for (auto& [slot, entries] : per_block) {
      lw.rows[slot].rows.push_back({k, std::move(entries)});
    }
  }
  for (const auto& [key, v] : merge_terms(p, p.objective)) {
    const auto [b, r, c] = key;
    if (p.blocks[b].kind == BlockKind::Free) {
      lw.cf(lw.block_slot[b] + r) = v;
    } else {
      Matrix& cm = lw.c[lw.block_slot[b]];
      cm(r, c) += v;
      if (r != c) cm(c, r) += v;
    }
  }
  return lw;
}

double frob_inner(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

struct Scaling {
  Matrix r;      // W = R R^T, R^T S R = R^{-1} X R^{-T} = diag(lambda)
  Matrix rinv_t; // R^{-T}
  Vector lambda;
};

bool nt_scaling(const Matrix& x, const Matrix& s, Scaling& out) {
  Eigen::LLT<Matrix> lx(x), ls(s);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
  const Matrix lxm = lx.matrixL();
  const Matrix lsm = ls.matrixL();
  Eigen::JacobiSVD<Matrix> svd(lsm.transpose() * lxm,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.lambda = svd.singularValues();
  if (out.lambda.minCoeff() <= 0.0 || !out.lambda.allFinite()) return false;
  const Vector isq = out.lambda.cwiseSqrt().cwiseInverse();
  out.r = lxm * svd.matrixV() * isq.asDiagonal();
  out.rinv_t = lsm * svd.matrixU() * isq.asDiagonal();
  return true;
}

// Largest alpha with diag(lambda) + alpha * d PSD.
double max_step(const Vector& lambda, const Matrix& d) {
  const Vector isq = lambda.cwiseSqrt().cwiseInverse();
  const Matrix t = sym(isq.asDiagonal() * d * isq.asDiagonal());
  Eigen::SelfAdjointEigenSolver<Matrix> es(t, Eigen::EigenvaluesOnly);
  const double e = es.eigenvalues()(0);
  return e < 0.0 ? -1.0 / e : std::numeric_limits<double>::infinity();
}

class Solver {
 public:
  Solver(const Lowered& lw, const Options& opt) : lw_(lw), opt_(opt) {
    nblk_ = static_cast<int>(lw.rows.size());
    for (const auto& r : lw.rows) nu_ += r.dim;
    x_.resize(nblk_);
    s_.resize(nblk_);
    for (int b = 0; b < nblk_; ++b) {
      const int n = lw.rows[b].dim;
      x_[b] = Matrix::Identity(n, n);
      s_[b] = Matrix::Identity(n, n);
    }
    xf_ = Vector::Zero(lw.nf);
    y_ = Vector::Zero(lw.m);
    bnorm_ = lw.b.norm();
    double c2 = lw.cf.squaredNorm();
    for (const auto& c : lw.c) c2 += c.squaredNorm();
    cnorm_ = std::sqrt(c2);
    bmax_ = 0.0;
    for (int k = 0; k < lw.m; ++k)
      bmax_ = std::max(bmax_, std::abs(lw.b(k) * lw.scale(k)));
  }

  Solution run();

  // Normalized final iterate, filled by run().
  std::vector<Matrix> xs_out_, ss_out_;
  Vector xf_out_, y_out_;

 private:
  Vector a_op(const std::vector<Matrix>& x, const Vector& xf) const {
    Vector out = lw_.f * xf;
    for (int b = 0; b < nblk_; ++b)
      for (const auto& row : lw_.rows[b].rows)
        out(row.constraint) += detail::inner(row.entries, x[b]);
    return out;
  }

  std::vector<Matrix> at_op(const Vector& y) const {
    std::vector<Matrix> out(nblk_);
    for (int b = 0; b < nblk_; ++b) {
      const int n = lw_.rows[b].dim;
      out[b] = Matrix::Zero(n, n);
      for (const auto& row : lw_.rows[b].rows) {
        const double w = y(row.constraint);
        if (w == 0.0) continue;
        for (const auto& e : row.entries) {
          out[b](e.row, e.col) += w * e.value;
          if (e.row != e.col) out[b](e.col, e.row) += w * e.value;
        }
      }
    }
    return out;
  }

  // sum_b <G_ib, z_b> for scaled matrices z.
  Vector a_scaled(const std::vector<Matrix>& z) const {
    Vector out = Vector::Zero(lw_.m);
    for (int b = 0; b < nblk_; ++b) {
      const auto& rows = lw_.rows[b].rows;
      for (std::size_t k = 0; k < rows.size(); ++k)
        out(rows[k].constraint) += frob_inner(g_[b][k], z[b]);
    }
    return out;
  }

  bool factor(const Matrix& m);
  void kkt_solve(const Vector& r1, const Vector& r3, Vector& dy,
                 Vector& dxf) const;

  struct Direction {
    std::vector<Matrix> xt, st;  // scaled
    Vector dy, dxf;
    double dtau = 0.0, dkappa = 0.0;
  };
  Direction direction(double eta, const std::vector<Matrix>& h,
                      double r_tk) const;
  double step_to_boundary(const Direction& d) const;

  const Lowered& lw_;
  const Options& opt_;
  int nblk_ = 0;
  int nu_ = 0;
  double bnorm_ = 0.0, cnorm_ = 0.0, bmax_ = 0.0;

  std::vector<Matrix> x_, s_;
  Vector xf_, y_;
  double tau_ = 1.0, kappa_ = 1.0;

  // Per-iteration state.
  std::vector<Scaling> w_;
  std::vector<std::vector<Matrix>> g_;
  std::vector<Matrix> cs_, rds_;
  Vector rp_, rf_;
  double rg_ = 0.0;
  Vector a_;
  double cwc_ = 0.0;
  Vector a_rds_;
  double c_rds_ = 0.0;
  Eigen::LLT<Matrix> llt_;
  Eigen::PartialPivLU<Matrix> lu_;
  bool use_lu_ = false;
  Vector qy_, qf_;
};

// The augmented system [[M, F], [F^T, 0]] is factored as a whole: rows
// that only touch free variables leave M itself singular.
bool Solver::factor(const Matrix& m) {
  const int nf = lw_.nf;
  if (nf == 0) {
    // Near the optimum M is badly conditioned; a tiny diagonal shift keeps
    // Cholesky going.
    use_lu_ = false;
    if (m.rows() == 0) {
      llt_.compute(m);
      return true;
    }
    const double scale = std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    for (double shift : {0.0, 1e-15, 1e-13, 1e-11}) {
      if (shift == 0.0) {
        llt_.compute(m);
      } else {
        llt_.compute(m + shift * scale * Matrix::Identity(m.rows(), m.cols()));
      }
      if (llt_.info() == Eigen::Success) return true;
    }
    use_lu_ = true;
    lu_.compute(m);
  } else {
    Matrix k = Matrix::Zero(lw_.m + nf, lw_.m + nf);
    k.topLeftCorner(lw_.m, lw_.m) = m;
    k.topRightCorner(lw_.m, nf) = lw_.f;
    k.bottomLeftCorner(nf, lw_.m) = lw_.f.transpose();
    use_lu_ = true;
    lu_.compute(k);
  }
  const double rc = lu_.rcond();
  return std::isfinite(rc) && rc > 0.0;
}

void Solver::kkt_solve(const Vector& r1, const Vector& r3, Vector& dy,
                       Vector& dxf) const {
  if (!use_lu_) {
    dy = llt_.solve(r1);
    dxf = Vector::Zero(0);
    return;
  }
  Vector rhs(lw_.m + lw_.nf);
  rhs << r1, r3;
  const Vector sol = lu_.solve(rhs);
  dy = sol.head(lw_.m);
  dxf = sol.tail(lw_.nf);
}

Solver::Direction Solver::direction(double eta, const std::vector<Matrix>& h,
                                    double r_tk) const {
  Direction d;
  const Vector r1 = -eta * rp_ - a_scaled(h) - eta * a_rds_;
  const Vector r3 = -eta * rf_;
  Vector py, pf;
  kkt_solve(r1, r3, py, pf);
  double ch = 0.0;
  for (int b = 0; b < nblk_; ++b) ch += frob_inner(cs_[b], h[b]);
  const double r4 = -eta * rg_ + ch + eta * c_rds_ + r_tk / tau_;
  const Vector bma = lw_.b - a_;
  const double den = bma.dot(qy_) - lw_.cf.dot(qf_) + cwc_ + kappa_ / tau_;
  d.dtau = (r4 - bma.dot(py) + lw_.cf.dot(pf)) / den;
  d.dy = py + qy_ * d.dtau;
  d.dxf = pf + qf_ * d.dtau;
  d.dkappa = (r_tk - kappa_ * d.dtau) / tau_;
  d.xt.resize(nblk_);
  d.st.resize(nblk_);
  for (int b = 0; b < nblk_; ++b) {
    Matrix st = -eta * rds_[b] + d.dtau * cs_[b];
    const auto& rows = lw_.rows[b].rows;
    for (std::size_t k = 0; k < rows.size(); ++k)
      st.noalias() -= d.dy(rows[k].constraint) * g_[b][k];
    d.xt[b] = sym(h[b] - st);
    d.st[b] = sym(st);
  }
  return d;
}

double Solver::step_to_boundary(const Direction& d) const {
  double alpha = std::numeric_limits<double>::infinity();
  for (int b = 0; b < nblk_; ++b) {
    alpha = std::min(alpha, max_step(w_[b].lambda, d.xt[b]));
    alpha = std::min(alpha, max_step(w_[b].lambda, d.st[b]));
  }
  if (d.dtau < 0.0) alpha = std::min(alpha, -tau_ / d.dtau);
  if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa_ / d.dkappa);
  return alpha;
}

Solution Solver::run() {
  Solution sol;
  const int m = lw_.m;
  std::vector<Matrix> rd(nblk_);
  const double infeas_tol = std::max(opt_.feas_tol, 1e-8);

  auto objective = [&](const std::vector<Matrix>& x, const Vector& xf) {
    double v = lw_.cf.dot(xf);
    for (int b = 0; b < nblk_; ++b) v += frob_inner(lw_.c[b], x[b]);
    return v;
  };

  int it = 0;
  double last_step = 0.0;
  for (;; ++it) {
    // Residuals of the homogeneous model.
    const Vector ax = a_op(x_, xf_);
    rp_ = ax - lw_.b * tau_;
    const std::vector<Matrix> aty = at_op(y_);
    double rd2 = 0.0, xs = 0.0, rdx = 0.0;
    for (int b = 0; b < nblk_; ++b) {
      rd[b] = aty[b] + s_[b] - lw_.c[b] * tau_;
      rd2 += rd[b].squaredNorm();
      xs += frob_inner(x_[b], s_[b]);
      rdx += frob_inner(rd[b], x_[b]);
    }
    rf_ = lw_.f.transpose() * y_ - lw_.cf * tau_;
    const double pobj_raw = objective(x_, xf_);
    const double dobj_raw = lw_.b.dot(y_);
    rg_ = dobj_raw - pobj_raw - kappa_;
    const double mu = (xs + tau_ * kappa_) / (nu_ + 1);

    const double pobj = pobj_raw / tau_;
    const double dobj = dobj_raw / tau_;
    double pres = 0.0;
    for (int k = 0; k < m; ++k)
      pres = std::max(pres, std::abs(rp_(k)) * lw_.scale(k));
    pres /= tau_ * (1.0 + bmax_);
    const double dres =
        std::sqrt(rd2 + rf_.squaredNorm()) / tau_ / (1.0 + cnorm_);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));

    // pobj - dobj = <S,X> + y.rp - <rd,X> - rf.xf, with <S,X> >= 0.
    {
      const double slack = (std::abs(y_.dot(rp_)) + std::abs(rdx) +
                            std::abs(rf_.dot(xf_))) /
                           (tau_ * tau_);
      const double tol = 1e-9 * (1.0 + std::abs(pobj) + std::abs(dobj)) +
                         1e-12 * xs / (tau_ * tau_);
      if (pobj - dobj < -slack - tol) ++sol.weak_duality_violations;
    }

    if (opt_.on_iteration) {
      opt_.on_iteration({it, pobj, dobj, pres, dres, gap, mu, tau_, kappa_,
                         last_step});
    }

    sol.gap = gap;
    if (pres <= opt_.feas_tol && dres <= opt_.feas_tol && gap <= opt_.gap_tol) {
      sol.status = Status::Optimal;
      break;
    }
    // Certificates from the homogeneous model as tau -> 0.
    if (dobj_raw > 0.0) {
      double r2 = 0.0;
      for (int b = 0; b < nblk_; ++b) r2 += (aty[b] + s_[b]).squaredNorm();
      r2 += (lw_.f.transpose() * y_).squaredNorm();
      if (std::sqrt(r2) / dobj_raw <= infeas_tol && tau_ < kappa_) {
        sol.status = Status::Infeasible;
        sol.message = "primal infeasibility certificate found";
        break;
      }
    }
    if (pobj_raw < 0.0) {
      if (ax.norm() / -pobj_raw <= infeas_tol && tau_ < kappa_) {
        sol.status = Status::Unbounded;
        sol.message = "dual infeasibility certificate found";
        break;
      }
    }
    if (it >= opt_.max_iter) {
      sol.status = Status::MaxIterations;
      sol.message = "iteration limit reached";
      break;
    }

    // Nesterov-Todd scaling and the scaled problem data.
    w_.resize(nblk_);
    bool ok = true;
    for (int b = 0; b < nblk_ && ok; ++b) ok = nt_scaling(x_[b], s_[b], w_[b]);
    if (!ok) {
      sol.status = Status::MaxIterations;
      sol.message = "numerical breakdown: iterate lost positive definiteness";
      break;
    }
    std::vector<Matrix> rmats(nblk_);
    for (int b = 0; b < nblk_; ++b) rmats[b] = w_[b].r;
    g_ = detail::scale_constraints(lw_.rows, rmats, opt_.parallel);
    const Matrix schur = detail::assemble_schur(lw_.rows, g_, m, opt_.parallel);
    cs_.resize(nblk_);
    rds_.resize(nblk_);
    cwc_ = 0.0;
    c_rds_ = 0.0;
    for (int b = 0; b < nblk_; ++b) {
      cs_[b] = sym(w_[b].r.transpose() * lw_.c[b] * w_[b].r);
      rds_[b] = sym(w_[b].r.transpose() * rd[b] * w_[b].r);
      cwc_ += cs_[b].squaredNorm();
      c_rds_ += frob_inner(cs_[b], rds_[b]);
    }
    a_ = a_scaled(cs_);
    a_rds_ = a_scaled(rds_);
    if (!factor(schur)) {
      sol.status = Status::MaxIterations;
      sol.message = "numerical breakdown: Schur complement is singular";
      break;
    }
    kkt_solve(a_ + lw_.b, lw_.cf, qy_, qf_);

    // Predictor (affine scaling).
    std::vector<Matrix> h(nblk_);
    for (int b = 0; b < nblk_; ++b) h[b] = Matrix((-w_[b].lambda).asDiagonal());
    const Direction aff = direction(1.0, h, -tau_ * kappa_);
    const double alpha_aff = std::min(1.0, step_to_boundary(aff));
    double xs_aff = (tau_ + alpha_aff * aff.dtau) * (kappa_ + alpha_aff * aff.dkappa);
    for (int b = 0; b < nblk_; ++b) {
      const Matrix lam = w_[b].lambda.asDiagonal();
      xs_aff += frob_inner(lam + alpha_aff * aff.xt[b], lam + alpha_aff * aff.st[b]);
    }
    const double mu_aff = std::max(0.0, xs_aff / (nu_ + 1));
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    for (int b = 0; b < nblk_; ++b) {
      const Vector& lam = w_[b].lambda;
      const int n = static_cast<int>(lam.size());
      Matrix e = -0.5 * (aff.xt[b] * aff.st[b] + aff.st[b] * aff.xt[b]);
      for (int i = 0; i < n; ++i) e(i, i) += sigma * mu - lam(i) * lam(i);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e(i, j) *= 2.0 / (lam(i) + lam(j));
      h[b] = e;
    }
    const double r_tk = sigma * mu - tau_ * kappa_ - aff.dtau * aff.dkappa;
    const Direction dir = direction(1.0 - sigma, h, r_tk);
    if (!dir.dy.allFinite() || !std::isfinite(dir.dtau) || !std::isfinite(dir.dkappa)) {
      sol.status = Status::MaxIterations;
      sol.message = "numerical breakdown: non-finite search direction";
      break;
    }
    const double alpha = std::min(1.0, 0.99 * step_to_boundary(dir));
    if (!(alpha > 1e-12)) {
      sol.status = Status::MaxIterations;
      sol.message = "numerical breakdown: step length collapsed";
      break;
    }
    last_step = alpha;

    for (int b = 0; b < nblk_; ++b) {
      x_[b] = sym(x_[b] + alpha * (w_[b].r * dir.xt[b] * w_[b].r.transpose()));
      s_[b] = sym(s_[b] +
                  alpha * (w_[b].rinv_t * dir.st[b] * w_[b].rinv_t.transpose()));
    }
    y_ += alpha * dir.dy;
    xf_ += alpha * dir.dxf;
    tau_ += alpha * dir.dtau;
    kappa_ += alpha * dir.dkappa;
  }
  sol.iterations = it;

  // Normalize the homogeneous iterate. Infeasibility certificates are
  // returned unnormalized.
  const bool certificate =
      sol.status == Status::Infeasible || sol.status == Status::Unbounded;
  const double t = certificate ? 1.0 : tau_;
  std::vector<Matrix> xo(nblk_), so(nblk_);
  for (int b = 0; b < nblk_; ++b) {
    xo[b] = x_[b] / t;
    so[b] = s_[b] / t;
  }
  const Vector xfo = xf_ / t;
  const Vector yo = y_ / t;
  sol.primal_value = objective(xo, xfo);
  sol.dual_value = lw_.b.dot(yo);

  sol.min_block_eigenvalue = std::numeric_limits<double>::infinity();
  for (int b = 0; b < nblk_; ++b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(xo[b], Eigen::EigenvaluesOnly);
    sol.min_block_eigenvalue = std::min(sol.min_block_eigenvalue, es.eigenvalues()(0));
  }
  if (nblk_ == 0) sol.min_block_eigenvalue = 0.0;

  const std::vector<Matrix> aty = at_op(yo);
  double rd2 = (lw_.f.transpose() * yo - lw_.cf).squaredNorm();
  for (int b = 0; b < nblk_; ++b) rd2 += (lw_.c[b] - aty[b] - so[b]).squaredNorm();
  sol.dual_residual = std::sqrt(rd2) / (1.0 + cnorm_);

  xs_out_ = std::move(xo);
  ss_out_ = std::move(so);
  xf_out_ = xfo;
  y_out_ = yo;
  return sol;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  problem.validate();
  const Lowered lw = lower_problem(problem);
  const int nblocks = static_cast<int>(problem.blocks.size());
  const int m0 = static_cast<int>(problem.equalities.size());

  Solution sol;
  if (lw.inconsistent) {
    sol.status = Status::Infeasible;
    sol.message = "equality constraints are inconsistent";
    sol.redundant_rows = lw.redundant;
    sol.dual_multipliers = Vector::Zero(m0);
    for (const auto& spec : problem.blocks) {
      if (spec.kind == BlockKind::Psd) {
        sol.variables.push_back(Matrix::Zero(spec.dim, spec.dim));
        sol.slacks.push_back(Matrix::Zero(spec.dim, spec.dim));
      } else {
        sol.variables.push_back(Matrix::Zero(spec.dim, 1));
        sol.slacks.push_back(Matrix());
      }
    }
    return sol;
  }

  Solver solver(lw, options);
  sol = solver.run();
  sol.redundant_rows = lw.redundant;

  sol.variables.resize(nblocks);
  sol.slacks.resize(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    const auto& spec = problem.blocks[b];
    if (spec.kind == BlockKind::Psd) {
      sol.variables[b] = solver.xs_out_[lw.block_slot[b]];
      sol.slacks[b] = solver.ss_out_[lw.block_slot[b]];
    } else {
      sol.variables[b] = solver.xf_out_.segment(lw.block_slot[b], spec.dim);
      sol.slacks[b] = Matrix();
    }
  }
  sol.dual_multipliers = Vector::Zero(m0);
  for (int k = 0; k < lw.m; ++k)
    sol.dual_multipliers(lw.kept[k]) = solver.y_out_(k) / lw.scale(k);

  // Primal residual on every original row, including dropped ones.
  double worst = 0.0, bmax = 0.0;
  for (int i = 0; i < m0; ++i) {
    double v = 0.0;
    for (const auto& t : problem.equalities[i].terms()) {
      const Matrix& x = sol.variables[t.block];
      v += t.value * x(t.row, t.col);
    }
    worst = std::max(worst, std::abs(v - problem.rhs[i]));
    bmax = std::max(bmax, std::abs(problem.rhs[i]));
  }
  sol.primal_residual = worst / (1.0 + bmax);
  return sol;
}

HermitianEmbedding::HermitianEmbedding(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("HermitianEmbedding: dim must be >= 1");
}

std::vector<LinearFunctional> HermitianEmbedding::structure_constraints(
    int block) const {
  const int n = dim_;
  std::vector<LinearFunctional> out;
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      LinearFunctional same;
      same.add(block, r, c, 1.0);
      same.add(block, n + r, n + c, -1.0);
      out.push_back(std::move(same));
      LinearFunctional anti;
      if (r == c) {
        anti.add(block, r, n + r, 1.0);
      } else {
        anti.add(block, r, n + c, 1.0);
        anti.add(block, c, n + r, 1.0);
      }
      out.push_back(std::move(anti));
    }
  }
  return out;
}

void HermitianEmbedding::add_real_part(LinearFunctional& f, int block, int r,
                                       int c, double weight) const {
  f.add(block, r, c, 0.5 * weight);
  f.add(block, dim_ + r, dim_ + c, 0.5 * weight);
}

void HermitianEmbedding::add_imag_part(LinearFunctional& f, int block, int r,
                                       int c, double weight) const {
  if (r == c) return;  // Im of a Hermitian diagonal is zero
  f.add(block, dim_ + r, c, 0.5 * weight);
  f.add(block, r, dim_ + c, -0.5 * weight);
}

void HermitianEmbedding::add_trace_i_antisym(LinearFunctional& f, int block,
                                             const Matrix& sigma) const {
  if (sigma.rows() != dim_ || sigma.cols() != dim_) {
    throw std::invalid_argument("add_trace_i_antisym: dimension mismatch");
  }
  // Tr[i sigma (P + iQ)] = -Tr[sigma Q] = sum_rc sigma(r,c) Q(r,c)
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if (sigma(r, c) != 0.0) add_imag_part(f, block, r, c, sigma(r, c));
}

Matrix HermitianEmbedding::embed(const Matrix& re, const Matrix& im) const {
  Matrix y(2 * dim_, 2 * dim_);
  y << re, -im, im, re;
  return y;
}

Matrix HermitianEmbedding::real_part(const Matrix& y) const {
  return 0.5 * (y.topLeftCorner(dim_, dim_) + y.bottomRightCorner(dim_, dim_));
}

Matrix HermitianEmbedding::imag_part(const Matrix& y) const {
  return 0.5 * (y.bottomLeftCorner(dim_, dim_) - y.topRightCorner(dim_, dim_));
}

int LmiProblem::add_variable() {
  objective_.push_back(0.0);
  return num_vars_++;
}

int LmiProblem::add_block(int dim) {
  if (dim < 1) throw std::invalid_argument("LmiProblem: block dim must be >= 1");
  block_dims_.push_back(dim);
  return static_cast<int>(block_dims_.size()) - 1;
}

namespace {
void check_entry(const std::vector<int>& dims, int block, int r, int c) {
  if (block < 0 || block >= static_cast<int>(dims.size()))
    throw std::invalid_argument("LmiProblem: unknown block");
  if (r < 0 || c < 0 || r >= dims[block] || c >= dims[block])
    throw std::invalid_argument("LmiProblem: entry outside block");
}
}  // namespace

void LmiProblem::add_constant(int block, int r, int c, double value) {
  check_entry(block_dims_, block, r, c);
  constants_.push_back({block, -1, r, c, value});
}

void LmiProblem::add_coefficient(int block, int var, int r, int c,
                                 double value) {
  check_entry(block_dims_, block, r, c);
  if (var < 0 || var >= num_vars_)
    throw std::invalid_argument("LmiProblem: unknown variable");
  coeffs_.push_back({block, var, r, c, value});
}

void LmiProblem::add_objective(int var, double value) {
  if (var < 0 || var >= num_vars_)
    throw std::invalid_argument("LmiProblem: unknown variable");
  objective_[var] += value;
}

// maximize -c.y s.t. F0 - sum y_i (-F_i) = S PSD is the dual of
// min <F0, X> s.t. <-F_i, X> = -c_i, X PSD.
Problem LmiProblem::lower() const {
  Problem p;
  for (int d : block_dims_) p.add_psd_block(d);
  auto weight = [](const Coeff& k) { return k.row == k.col ? k.value : 2.0 * k.value; };
  for (const auto& k : constants_) p.objective.add(k.block, k.row, k.col, weight(k));
  std::vector<LinearFunctional> rows(num_vars_);
  for (const auto& k : coeffs_) rows[k.var].add(k.block, k.row, k.col, -weight(k));
  for (int i = 0; i < num_vars_; ++i) p.add_equality(std::move(rows[i]), -objective_[i]);
  return p;
}

LmiProblem::Result LmiProblem::solve(const Options& options) const {
  Result res;
  res.raw = sdp::solve(lower(), options);
  switch (res.raw.status) {
    case Status::Optimal: res.status = Status::Optimal; break;
    case Status::Infeasible: res.status = Status::Unbounded; break;
    case Status::Unbounded: res.status = Status::Infeasible; break;
    case Status::MaxIterations: res.status = Status::MaxIterations; break;
  }
  res.y = res.raw.dual_multipliers;
  res.value = 0.0;
  for (int i = 0; i < num_vars_; ++i) res.value += objective_[i] * res.y(i);
  res.slacks.resize(block_dims_.size());
  for (std::size_t b = 0; b < block_dims_.size(); ++b)
    res.slacks[b] = Matrix::Zero(block_dims_[b], block_dims_[b]);
  auto put = [&](const Coeff& k, double v) {
    res.slacks[k.block](k.row, k.col) += v;
    if (k.row != k.col) res.slacks[k.block](k.col, k.row) += v;
  };
  for (const auto& k : constants_) put(k, k.value);
  for (const auto& k : coeffs_) put(k, k.value * res.y(k.var));
  return res;
}

}  // namespace cvgme::sdp
