#include "cvgme/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace cvgme {

CircuitElement CircuitElement::squeezer(int mode, double x_factor) {
  if (!(x_factor > 0.0)) throw std::invalid_argument("squeezer factor must be positive");
  CircuitElement e;
  e.kind = Kind::Squeezer;
  e.mode = mode;
  e.squeeze_x = x_factor <= 1.0;
  e.s = e.squeeze_x ? x_factor : 1.0 / x_factor;
  return e;
}

CircuitElement CircuitElement::beam_splitter(const BeamSplitter& bs) {
  CircuitElement e;
  e.kind = Kind::BeamSplitter;
  e.bs = bs;
  return e;
}

CircuitElement CircuitElement::sign(int mode) {
  CircuitElement e;
  e.kind = Kind::Sign;
  e.mode = mode;
  return e;
}

CircuitElement CircuitElement::displace(const Vector& alpha, const Vector& beta, double var) {
  CircuitElement e;
  e.kind = Kind::Displace;
  e.alpha = alpha;
  e.beta = beta;
  e.var = var;
  return e;
}

void CircuitSpec::validate() const {
  if (n_modes < 1) throw std::invalid_argument("circuit: n_modes must be >= 1");
  if (inputs.size() != n_modes) throw std::invalid_argument("circuit: one input per mode");
  for (int j = 0; j < n_modes; ++j)
    if (!(inputs(j) >= 1.0 - 1e-9)) {
      throw std::invalid_argument("circuit: thermal inputs must be >= 1");
    }
  for (const auto& e : elements) {
    switch (e.kind) {
      case CircuitElement::Kind::Squeezer:
        if (!(e.s > 0.0)) throw std::invalid_argument("circuit: squeezer needs s > 0");
        [[fallthrough]];
      case CircuitElement::Kind::Sign:
        if (e.mode < 0 || e.mode >= n_modes) {
          throw std::invalid_argument("circuit: element mode out of range");
        }
        break;
      case CircuitElement::Kind::BeamSplitter: {
        if (!(e.bs.t >= 0.0 && e.bs.t <= 1.0)) {
          throw std::invalid_argument("circuit: transmissivity outside [0, 1]");
        }
        auto [a, b] = e.bs.modes;
        if (a < 0 || b < 0 || a >= n_modes || b >= n_modes || a == b) {
          throw std::invalid_argument("circuit: beam splitter on an invalid pair");
        }
        if (e.bs.variant != BsVariant::Plain) {
          if (n_modes != 3) throw std::invalid_argument("circuit: variant needs three modes");
          if (make_pair_sorted(a, b) != variant_pair(e.bs.variant)) {
            throw std::invalid_argument("circuit: variant " + to_string(e.bs.variant) +
                                        " does not act on the declared pair");
          }
        }
        break;
      }
      case CircuitElement::Kind::Displace:
        if (e.alpha.size() != n_modes || e.beta.size() != n_modes) {
          throw std::invalid_argument("circuit: displacement vectors need one entry per mode");
        }
        if (!(e.var >= 0.0)) throw std::invalid_argument("circuit: displacement variance < 0");
        break;
    }
  }
}

Matrix element_matrix(const CircuitElement& e, int n_modes) {
  Matrix t = Matrix::Identity(2 * n_modes, 2 * n_modes);
  switch (e.kind) {
    case CircuitElement::Kind::Squeezer:
      t(2 * e.mode, 2 * e.mode) = e.x_factor();
      t(2 * e.mode + 1, 2 * e.mode + 1) = 1.0 / e.x_factor();
      break;
    case CircuitElement::Kind::Sign:
      t(2 * e.mode, 2 * e.mode) = -1.0;
      t(2 * e.mode + 1, 2 * e.mode + 1) = -1.0;
      break;
    case CircuitElement::Kind::BeamSplitter:
      t = lift_orthogonal(beam_splitter_matrix(e.bs.variant, e.bs.t, n_modes, e.bs.modes));
      break;
    case CircuitElement::Kind::Displace:
      throw std::invalid_argument("element_matrix: displacements are not linear maps");
  }
  return t;
}

CovarianceMatrix simulate(const CircuitSpec& c) {
  c.validate();
  const int n = c.n_modes;
  Vector d(2 * n);
  for (int j = 0; j < n; ++j) d(2 * j) = d(2 * j + 1) = c.inputs(j);
  Matrix g = d.asDiagonal();
  for (const auto& e : c.elements) {
    if (e.kind == CircuitElement::Kind::Displace) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          g(2 * i, 2 * j) += 2.0 * e.var * e.alpha(i) * e.alpha(j);
          g(2 * i + 1, 2 * j + 1) += 2.0 * e.var * e.beta(i) * e.beta(j);
        }
    } else {
      const Matrix t = element_matrix(e, n);
      g = t * g * t.transpose();
    }
  }
  return CovarianceMatrix(g);
}

double round_to(double v, int decimals) {
  const double f = std::pow(10.0, decimals);
  return std::round(v * f) / f;
}

CircuitSpec round_parameters(const CircuitSpec& c, int decimals) {
  CircuitSpec out = c;
  for (int j = 0; j < out.inputs.size(); ++j)
    out.inputs(j) = std::max(1.0, round_to(out.inputs(j), decimals));
  for (auto& e : out.elements) {
    e.s = round_to(e.s, decimals);
    e.bs.t = round_to(e.bs.t, decimals);
    for (int j = 0; j < e.alpha.size(); ++j) e.alpha(j) = round_to(e.alpha(j), decimals);
    for (int j = 0; j < e.beta.size(); ++j) e.beta(j) = round_to(e.beta(j), decimals);
    e.var = round_to(e.var, decimals);
  }
  return out;
}

namespace {

Vector sign_vector(int mask) {
  Vector d(3);
  for (int i = 0; i < 3; ++i) d(i) = (mask >> i & 1) ? -1.0 : 1.0;
  return d;
}

void append_stage(std::vector<CircuitElement>& out, const ReckStage& st) {
  for (int i = 0; i < 3; ++i)
    if (st.right[i] < 0.0) out.push_back(CircuitElement::sign(i));
  for (std::size_t k = 0; k < st.splitters.size(); ++k) {
    if (k == 2)
      for (int i = 0; i < 3; ++i)
        if (st.middle[i] < 0.0) out.push_back(CircuitElement::sign(i));
    out.push_back(CircuitElement::beam_splitter(st.splitters[k]));
  }
  for (int i = 0; i < 3; ++i)
    if (st.left[i] < 0.0) out.push_back(CircuitElement::sign(i));
}

}  // namespace

CompiledCircuit compile(const CovarianceMatrix& gamma, bool simplified) {
  CompiledCircuit out;
  out.simplified = simplified;
  const int n = gamma.n_modes();
  if (!check_physical(gamma).is_physical) {
    throw std::invalid_argument("compile: covariance matrix is not physical");
  }
  if ((gamma.matrix() - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <= 1e-12) {
    out.circuit.n_modes = n;
    out.circuit.inputs = Vector::Ones(n);
    out.rounded = out.circuit;
    out.nu = Vector::Ones(n);
    out.x_factors = Vector::Ones(n);
    out.squeezing = Vector::Ones(n);
    out.squeezing_db = Vector::Zero(n);
    return out;
  }
  if (!gamma.is_phase_free(1e-12)) {
    throw std::invalid_argument("compile: x-p correlated states are not supported");
  }
  if (n != 3) throw std::invalid_argument("compile: the beam-splitter stage needs N = 3");

  const WilliamsonResult w = williamson_phase_free(gamma);

  // Sign freedom: S -> S D2 keeps S W S^T, and (V D)(R)(D U) keeps S.
  // Take the first choice that needs no leftover sign flips.
  struct Choice {
    int d2 = 0, d = 0;
    BlochMessiahResult bm;
    ReckStage u, v;
  };
  std::optional<Choice> chosen, fallback;
  for (int d2 = 0; d2 < 8 && !chosen; ++d2) {
    const Matrix s = w.s * lift_orthogonal(sign_vector(d2).asDiagonal());
    const BlochMessiahResult bm = bloch_messiah(s);
    for (int d = 0; d < 8 && !chosen; ++d) {
      const Matrix dl = lift_orthogonal(sign_vector(d).asDiagonal());
      Choice c{d2, d, bm, reck_decompose(dl * bm.u, ReckSide::U),
               reck_decompose(bm.v * dl, ReckSide::V)};
      c.bm.u = dl * bm.u;
      c.bm.v = bm.v * dl;
      if (!c.u.has_signs() && !c.v.has_signs()) chosen = c;
      else if (!fallback) fallback = c;
    }
  }
  const Choice c = chosen ? *chosen : *fallback;
  for (int i = 0; i < 3; ++i) {
    out.williamson_signs[i] = sign_vector(c.d2)(i);
    out.passive_signs[i] = sign_vector(c.d)(i);
  }
  out.nu = w.nu;
  out.x_factors = c.bm.x_factors();
  out.squeezing = c.bm.squeezing();
  out.squeezing_db = out.squeezing.unaryExpr([](double s) { return 10.0 * std::log10(s * s); });
  out.u_stage = c.u;
  out.v_stage = c.v;

  CircuitSpec& spec = out.circuit;
  spec.n_modes = 3;
  if (!simplified) {
    spec.inputs = w.nu;
    append_stage(spec.elements, c.u);
  } else {
    spec.inputs = Vector::Ones(3);
  }
  for (int j = 0; j < 3; ++j)
    spec.elements.push_back(CircuitElement::squeezer(j, out.x_factors(j)));
  if (simplified) {
    // Push the thermal noise of mode A through U and R; the other inputs
    // are treated as vacuum.
    const Vector u = x_sector(c.bm.u).col(0);
    out.alpha = out.x_factors.cwiseProduct(u);
    out.beta = u.cwiseQuotient(out.x_factors);
    out.var = 0.5 * (w.nu(0) - 1.0);
    spec.elements.push_back(CircuitElement::displace(out.alpha, out.beta, out.var));
  }
  append_stage(spec.elements, c.v);
  out.rounded = round_parameters(spec, 3);
  out.residual = (simulate(spec).matrix() - gamma.matrix()).cwiseAbs().maxCoeff();
  return out;
}

NoiseScan noise_tolerance(const CovarianceMatrix& gamma, const TreeSpec& tree,
                          double resolution, const WitnessOptions& opts) {
  if (!(resolution > 0.0)) throw std::invalid_argument("noise_tolerance: resolution must be > 0");
  NoiseScan scan;
  auto detected = [&](double p) {
    const auto r = gme_witness(add_noise(gamma, p), tree, opts);
    scan.evaluations.emplace_back(p, r.value);
    return r.status == sdp::Status::Optimal && r.value < -opts.tol;
  };
  if (!detected(0.0)) return scan;
  double lo = 0.0, hi = 0.05;
  while (detected(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 100.0) {
      scan.p = lo;
      return scan;
    }
  }
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (detected(mid)) lo = mid;
    else hi = mid;
  }
  scan.p = lo;
  return scan;
}

}  // namespace cvgme
