#include "cvgme/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvgme {

double symplectic_residual(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic_residual: matrix must be 2N x 2N");
  }
  const Matrix om = omega(static_cast<int>(s.rows() / 2));
  return (s * om * s.transpose() - om).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Matrix& s, double tol) {
  return symplectic_residual(s) <= tol;
}

bool is_phase_free_transform(const Matrix& s, double tol) {
  for (int r = 0; r < s.rows(); ++r)
    for (int c = 0; c < s.cols(); ++c)
      if ((r + c) % 2 == 1 && std::abs(s(r, c)) > tol) return false;
  return true;
}

Matrix lift_orthogonal(const Matrix& o) { return interleave(o, o); }

Matrix x_sector(const Matrix& m) {
  const int n = static_cast<int>(m.rows() / 2);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(2 * i, 2 * j);
  return out;
}

Matrix p_sector(const Matrix& m) {
  const int n = static_cast<int>(m.rows() / 2);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(2 * i + 1, 2 * j + 1);
  return out;
}

Matrix WilliamsonResult::normal_form() const {
  Vector d(2 * nu.size());
  for (int j = 0; j < nu.size(); ++j) d(2 * j) = d(2 * j + 1) = nu(j);
  return d.asDiagonal();
}

namespace {

struct SqrtPair {
  Matrix root;
  Matrix inv_root;
};

SqrtPair sym_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  const Vector ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw std::invalid_argument("matrix is not positive definite");
  const Matrix& q = es.eigenvectors();
  return {q * ev.cwiseSqrt().asDiagonal() * q.transpose(),
          q * ev.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose()};
}

void require_physical(const CovarianceMatrix& gamma) {
  if (!check_physical(gamma).is_physical) {
    throw std::invalid_argument("williamson: covariance matrix is not physical");
  }
}

// Orthogonalizes v against the first `count` columns of basis.
Vector orthogonalize(Vector v, const Matrix& basis, int count) {
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k < count; ++k) v -= basis.col(k).dot(v) * basis.col(k);
  return v;
}

}  // namespace

WilliamsonResult williamson_general(const CovarianceMatrix& gamma) {
  require_physical(gamma);
  const int modes = gamma.n_modes();
  const int n = gamma.dim();
  const SqrtPair sq = sym_sqrt(gamma.matrix());
  const Matrix a = sq.root * omega(modes) * sq.root;
  // -A^2 = A^T A has eigenvalues nu_j^2, each twice.
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.transpose() * a);
  const Matrix& vecs = es.eigenvectors();

  Matrix o(n, n);
  Vector nu(modes);
  int filled = 0;
  for (int k = n - 1; k >= 0 && filled < n; --k) {
    Vector u = orthogonalize(vecs.col(k), o, filled);
    if (u.norm() < 0.5) continue;  // already spanned by an earlier pair
    u.normalize();
    Vector w = a * u;
    const double nuk = w.norm();
    w /= nuk;
    w = orthogonalize(w, o, filled).normalized();
    // basis (w, u) turns A into nu * [[0, 1], [-1, 0]]
    o.col(filled) = w;
    o.col(filled + 1) = u;
    nu(filled / 2) = nuk;
    filled += 2;
  }
  if (filled != n) throw std::runtime_error("williamson: canonical basis incomplete");
  Vector d(n);
  for (int j = 0; j < modes; ++j) d(2 * j) = d(2 * j + 1) = 1.0 / std::sqrt(nu(j));
  return {sq.root * o * d.asDiagonal(), nu};
}

WilliamsonResult williamson_phase_free(const CovarianceMatrix& gamma) {
  require_physical(gamma);
  if (!gamma.is_phase_free()) {
    throw std::invalid_argument("williamson_phase_free: gamma has x-p correlations");
  }
  const Matrix gx = x_sector(gamma.matrix());
  const Matrix gp = p_sector(gamma.matrix());
  const SqrtPair sq = sym_sqrt(gx);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sq.root * gp * sq.root);
  // descending order
  const Vector ev = es.eigenvalues().reverse();
  const Matrix o = es.eigenvectors().rowwise().reverse();
  const Vector nu = ev.cwiseSqrt();
  const Matrix sx = sq.root * o * nu.cwiseSqrt().cwiseInverse().asDiagonal();
  const Matrix sp = sq.inv_root * o * nu.cwiseSqrt().asDiagonal();
  return {interleave(sx, sp), nu};
}

WilliamsonResult williamson(const CovarianceMatrix& gamma) {
  return gamma.is_phase_free() ? williamson_phase_free(gamma) : williamson_general(gamma);
}

Vector BlochMessiahResult::x_factors() const {
  Vector f(r.rows() / 2);
  for (int j = 0; j < f.size(); ++j) f(j) = r(2 * j, 2 * j);
  return f;
}

Vector BlochMessiahResult::squeezing() const {
  Vector f = x_factors();
  for (int j = 0; j < f.size(); ++j) f(j) = std::min(f(j), 1.0 / f(j));
  return f;
}

BlochMessiahResult bloch_messiah(const Matrix& s) {
  if (!is_symplectic(s, 1e-8 * std::max(1.0, s.cwiseAbs().maxCoeff() * s.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("bloch_messiah: matrix is not symplectic");
  }
  const int n = static_cast<int>(s.rows());
  const int modes = n / 2;
  BlochMessiahResult out;
  if (is_phase_free_transform(s)) {
    // S_x = Vx diag(sv) Ux^T; S_p = S_x^(-T) follows automatically.
    Eigen::JacobiSVD<Matrix> svd(x_sector(s), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector sv = svd.singularValues().reverse();
    const Matrix vx = svd.matrixU().rowwise().reverse();
    const Matrix ux = svd.matrixV().rowwise().reverse();
    out.u = lift_orthogonal(ux.transpose());
    out.v = lift_orthogonal(vx);
    out.r = interleave(sv.asDiagonal(), sv.cwiseInverse().asDiagonal());
    return out;
  }
  // Polar form S = O P, then an orthogonal symplectic eigenbasis K of P.
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.transpose() * s);
  const Vector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix& q = es.eigenvectors();
  const Matrix p = q * ev.asDiagonal() * q.transpose();
  const Matrix pinv = q * ev.cwiseInverse().asDiagonal() * q.transpose();
  const Matrix orth = s * pinv;
  const Matrix om = omega(modes);
  Matrix k(n, n);
  int filled = 0;
  for (int idx = n - 1; idx >= 0 && filled < n; --idx) {
    Vector v = orthogonalize(q.col(idx), k, filled);
    if (v.norm() < 0.5) continue;
    v.normalize();
    k.col(filled) = v;
    k.col(filled + 1) = -om * v;
    filled += 2;
  }
  if (filled != n) throw std::runtime_error("bloch_messiah: eigenbasis incomplete");
  const Matrix d = k.transpose() * p * k;
  Vector diag(n);
  for (int j = 0; j < modes; ++j) {
    diag(2 * j) = d(2 * j, 2 * j);
    diag(2 * j + 1) = 1.0 / diag(2 * j);
  }
  out.u = k.transpose();
  out.r = diag.asDiagonal();
  out.v = orth * k;
  return out;
}

std::string to_string(BsVariant v) {
  switch (v) {
    case BsVariant::Plain: return "plain";
    case BsVariant::U_AB: return "U_AB";
    case BsVariant::U_AC: return "U_AC";
    case BsVariant::U_BC: return "U_BC";
    case BsVariant::V_AB: return "V_AB";
    case BsVariant::V_AC: return "V_AC";
    case BsVariant::V_BC: return "V_BC";
  }
  return "plain";
}

BsVariant bs_variant_from_string(const std::string& s) {
  for (auto v : {BsVariant::Plain, BsVariant::U_AB, BsVariant::U_AC, BsVariant::U_BC,
                 BsVariant::V_AB, BsVariant::V_AC, BsVariant::V_BC})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown beam splitter variant '" + s + "'");
}

ModePair variant_pair(BsVariant v) {
  switch (v) {
    case BsVariant::U_AB:
    case BsVariant::V_AB: return {0, 1};
    case BsVariant::U_AC:
    case BsVariant::V_AC: return {0, 2};
    case BsVariant::U_BC:
    case BsVariant::V_BC: return {1, 2};
    case BsVariant::Plain: break;
  }
  return {-1, -1};
}

Matrix beam_splitter_matrix(BsVariant v, double t, int n_modes, ModePair pair) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
  }
  const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
  if (v == BsVariant::Plain) {
    auto [a, b] = pair;
    if (a < 0 || b < 0 || a >= n_modes || b >= n_modes || a == b) {
      throw std::invalid_argument("beam splitter acts on an invalid mode pair");
    }
    Matrix m = Matrix::Identity(n_modes, n_modes);
    m(a, a) = t;
    m(a, b) = r;
    m(b, a) = -r;
    m(b, b) = t;
    return m;
  }
  if (n_modes != 3) throw std::invalid_argument("three-mode beam splitter forms need N = 3");
  Matrix m(3, 3);
  switch (v) {
    case BsVariant::U_AB: m << t, r, 0, r, -t, 0, 0, 0, -1; break;
    case BsVariant::U_AC: m << t, 0, r, 0, 1, 0, r, 0, -t; break;
    case BsVariant::U_BC: m << 1, 0, 0, 0, -t, -r, 0, r, -t; break;
    case BsVariant::V_AB: m << t, r, 0, r, -t, 0, 0, 0, 1; break;
    case BsVariant::V_AC: m << -t, 0, r, 0, 1, 0, -r, 0, -t; break;
    case BsVariant::V_BC: m << 1, 0, 0, 0, t, r, 0, r, -t; break;
    case BsVariant::Plain: break;
  }
  return m;
}

bool ReckStage::has_signs() const {
  for (int i = 0; i < 3; ++i)
    if (left[i] != 1.0 || right[i] != 1.0 || middle[i] != 1.0) return true;
  return false;
}

Matrix ReckStage::matrix() const {
  Matrix m = Matrix::Identity(3, 3);
  for (std::size_t k = 0; k < splitters.size(); ++k) {
    if (k == 2) m = Eigen::Map<const Vector>(middle.data(), 3).asDiagonal() * m;
    m = beam_splitter_matrix(splitters[k].variant, splitters[k].t, 3, splitters[k].modes) * m;
  }
  const Vector l = Eigen::Map<const Vector>(left.data(), 3);
  const Vector r = Eigen::Map<const Vector>(right.data(), 3);
  return l.asDiagonal() * m * r.asDiagonal();
}

namespace {

constexpr double kReckTol = 1e-9;

bool clamp_unit(double& t) {
  if (t < -kReckTol || t > 1.0 + kReckTol) return false;
  t = std::clamp(t, 0.0, 1.0);
  return true;
}

// Transmissivities (t1, t2, t3) for P = B3(t3) D B2(t2) B1(t1) on side U, or
// P = B1(t1) D B2(t2) B3(t3) on side V, with D the middle sign layer; false if
// P has no such form.
bool extract(const Matrix& p, ReckSide side, const Vector& d, std::array<double, 3>& t) {
  if (side == ReckSide::U) {
    double r2 = -p(0, 2);
    if (!clamp_unit(r2)) return false;
    double t2 = std::sqrt(1.0 - r2 * r2);
    double t1 = 1.0;
    if (t2 > 1e-8) {
      t1 = p(0, 0) / t2;
      if (p(0, 1) / t2 < -1e-7 || !clamp_unit(t1)) return false;
    }
    const Matrix m = p * (d.asDiagonal() * beam_splitter_matrix(BsVariant::U_AC, t2) *
                          beam_splitter_matrix(BsVariant::U_AB, t1))
                             .transpose();
    double t3 = -m(1, 1);
    if (m(2, 1) < -1e-7 || !clamp_unit(t3)) return false;
    t = {t1, t2, t3};
  } else {
    double r2 = -p(2, 0);
    if (!clamp_unit(r2)) return false;
    double t2 = std::sqrt(1.0 - r2 * r2);
    double t3 = 1.0;
    if (t2 > 1e-8) {
      t3 = p(2, 2) / t2;
      if (-p(2, 1) / t2 < -1e-7 || !clamp_unit(t3)) return false;
    }
    const Matrix m = p * (d.asDiagonal() * beam_splitter_matrix(BsVariant::V_AC, t2) *
                          beam_splitter_matrix(BsVariant::V_BC, t3))
                             .transpose();
    double t1 = m(0, 0);
    if (m(0, 1) < -1e-7 || !clamp_unit(t1)) return false;
    t = {t1, t2, t3};
  }
  return true;
}

ReckStage make_stage(ReckSide side, const std::array<double, 3>& t) {
  ReckStage st;
  st.side = side;
  if (side == ReckSide::U) {
    st.splitters = {{BsVariant::U_AB, {0, 1}, t[0]},
                    {BsVariant::U_AC, {0, 2}, t[1]},
                    {BsVariant::U_BC, {1, 2}, t[2]}};
  } else {
    st.splitters = {{BsVariant::V_BC, {1, 2}, t[2]},
                    {BsVariant::V_AC, {0, 2}, t[1]},
                    {BsVariant::V_AB, {0, 1}, t[0]}};
  }
  return st;
}

}  // namespace

ReckStage reck_decompose(const Matrix& o_in, ReckSide side) {
  Matrix o;
  if (o_in.rows() == 6 && o_in.cols() == 6) {
    if (!is_phase_free_transform(o_in, 1e-9)) {
      throw std::invalid_argument("reck_decompose: x-p mixing passives are not supported");
    }
    o = x_sector(o_in);
    if ((p_sector(o_in) - o).cwiseAbs().maxCoeff() > 1e-8) {
      throw std::invalid_argument("reck_decompose: x and p sectors differ");
    }
  } else if (o_in.rows() == 3 && o_in.cols() == 3) {
    o = o_in;
  } else {
    throw std::invalid_argument("reck_decompose: only three-mode passives are supported");
  }
  if ((o * o.transpose() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("reck_decompose: matrix is not orthogonal");
  }

  // Sign patterns ordered by how many -1 entries they use.
  std::vector<int> masks(64);
  for (int i = 0; i < 64; ++i) masks[i] = i;
  std::stable_sort(masks.begin(), masks.end(),
                   [](int a, int b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  // Outer signs alone reach only half of O(3) with these splitter forms; the
  // rest needs a flip between the second and third splitter (on the pair the
  // last one acts on), tried only after every outer pattern failed.
  const int mid_mode = side == ReckSide::U ? 1 : 0;
  for (int mid = 0; mid < 2; ++mid) {
    Vector d = Vector::Ones(3);
    if (mid) d(mid_mode) = -1.0;
    for (int mask : masks) {
      Vector l(3), r(3);
      for (int i = 0; i < 3; ++i) {
        l(i) = (mask >> i & 1) ? -1.0 : 1.0;
        r(i) = (mask >> (3 + i) & 1) ? -1.0 : 1.0;
      }
      const Matrix p = l.asDiagonal() * o * r.asDiagonal();
      std::array<double, 3> t{};
      if (!extract(p, side, d, t)) continue;
      ReckStage st = make_stage(side, t);
      for (int i = 0; i < 3; ++i) {
        st.left[i] = l(i);
        st.right[i] = r(i);
        st.middle[i] = d(i);
      }
      st.residual = (st.matrix() - o).cwiseAbs().maxCoeff();
      if (st.residual <= 1e-8) return st;
    }
  }
  throw std::runtime_error("reck_decompose: no decomposition found");
}

std::array<double, 3> transmissivities(const ReckStage& stage) {
  std::array<double, 3> out{};
  for (const auto& bs : stage.splitters) {
    const ModePair p = variant_pair(bs.variant);
    if (p == ModePair{0, 1}) out[0] = bs.t;
    else if (p == ModePair{0, 2}) out[1] = bs.t;
    else out[2] = bs.t;
  }
  return out;
}

}  // namespace cvgme
