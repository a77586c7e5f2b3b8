#include "nilgeo/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace nilgeo {

namespace {

// Structure constants as a double tensor plus bracket evaluation, for the
// floating-point curve formulas.
struct BracketD {
  std::size_t p, m;
  std::vector<double> c;  // c[(a*m+b)*p + k]

  explicit BracketD(const StepTwoAlgebra& alg) : p(alg.p()), m(alg.m()), c(m * m * p) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const VecQ& v = alg.bracket_basis(a, b);
        for (std::size_t k = 0; k < p; ++k) c[(a * m + b) * p + k] = v[k].to_double();
      }
  }

  [[nodiscard]] VecD operator()(const VecD& u, const VecD& v) const {
    VecD out(p, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      if (u[a] == 0.0) continue;
      for (std::size_t b = 0; b < m; ++b) {
        if (v[b] == 0.0) continue;
        double f = u[a] * v[b];
        for (std::size_t k = 0; k < p; ++k) out[k] += f * c[(a * m + b) * p + k];
      }
    }
    return out;
  }
};

}  // namespace

GeodesicParams make_geodesic_params(const StepTwoAlgebra& alg, const BlockMetric& g,
                                    const PhiForm& phi, const VecQ& z0, const VecQ& x0) {
  if (z0.size() != alg.p() || x0.size() != alg.m())
    throw dimension_error("make_geodesic_params: bad initial velocity");
  return {z0, x0, phi_eval(phi, z0), j_map(alg, g, z0)};
}

MatD j_exp(const MatD& J, double phi0, double t) {
  const std::size_t n = J.r;
  MatD I = MatD::identity(n);
  if (phi0 > 0) {
    double s = std::sqrt(phi0);
    return I.scaled(std::cos(t * s)) + J.scaled(std::sin(t * s) / s);
  }
  if (phi0 < 0) {
    double s = std::sqrt(-phi0);
    return I.scaled(std::cosh(t * s)) + J.scaled(std::sinh(t * s) / s);
  }
  return I + J.scaled(t);  // J^2 = 0
}

MatD j_exp(const GeodesicParams& params, double t) {
  return j_exp(to_matd(params.J), params.phi0.to_double(), t);
}

MatQ j_inverse(const GeodesicParams& params) {
  if (params.phi0.is_zero())
    throw method_error("j_inverse: phi(z0) = 0, j(z0) is not invertible");
  return -(params.phi0.inv()) * params.J;
}

MatD matrix_exp_series(const MatD& A, int terms) {
  MatD sum = MatD::identity(A.r);
  MatD term = MatD::identity(A.r);
  for (int k = 1; k <= terms; ++k) {
    term = (term * A).scaled(1.0 / k);
    sum = sum + term;
  }
  return sum;
}

GeodesicCurve GeodesicCurve::closed_form(std::function<std::pair<VecD, VecD>(double)> fn,
                                         std::string note) {
  GeodesicCurve c;
  c.kind_ = Kind::ClosedForm;
  c.fn_ = std::move(fn);
  c.note_ = std::move(note);
  return c;
}

GeodesicCurve GeodesicCurve::general(std::function<std::pair<VecD, VecD>(double)> fn) {
  GeodesicCurve c;
  c.kind_ = Kind::General;
  c.fn_ = std::move(fn);
  return c;
}

GeodesicCurve GeodesicCurve::sampled(std::vector<double> ts, std::vector<VecD> zs,
                                     std::vector<VecD> xs, std::string note) {
  GeodesicCurve c;
  c.kind_ = Kind::Sampled;
  c.ts_ = std::move(ts);
  c.note_ = std::move(note);
  auto z = std::make_shared<std::vector<VecD>>(std::move(zs));
  auto x = std::make_shared<std::vector<VecD>>(std::move(xs));
  auto t = std::make_shared<std::vector<double>>(c.ts_);
  c.fn_ = [z, x, t](double at) -> std::pair<VecD, VecD> {
    const auto& ts = *t;
    if (ts.empty()) return {{}, {}};
    auto it = std::lower_bound(ts.begin(), ts.end(), at);
    if (it == ts.end()) return {z->back(), x->back()};
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (ts[i] == at || i == 0) return {(*z)[i], (*x)[i]};
    double w = (at - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return {axpy(w, sub((*z)[i], (*z)[i - 1]), (*z)[i - 1]),
            axpy(w, sub((*x)[i], (*x)[i - 1]), (*x)[i - 1])};
  };
  return c;
}

// The integrator works on the first-order system obtained by writing the
// geodesic equation in the left-invariant frame and converting body velocity
// to exponential coordinates:
//
//   gamma(t) = exp(Z(t) + X(t)), body velocity v = v_z + v_x.
//   nabla_{gamma'} gamma' = 0  expands, using the connection formulas, to
//   v_z' = 0 and v_x' = j(v_z) v_x, so v_z = z0 for all t.
//   For a 2-step algebra the product rule exp(W) exp(s v) = exp(W + s v +
//   (s/2)[W, v] + O(s^2)) gives the coordinate velocities
//   X' = v_x,   Z' = z0 + 1/2 [X, v_x].
GeodesicCurve geodesic_integrate(const StepTwoAlgebra& alg, const BlockMetric& g,
                                 const VecQ& z0, const VecQ& x0, double t_max,
                                 int steps) {
  if (steps < 1) throw error("geodesic_integrate: steps must be >= 1");
  const std::size_t p = alg.p(), m = alg.m();
  BracketD br(alg);
  MatD J = to_matd(j_map(alg, g, z0));
  VecD z0d = z0.to_double();

  struct State {
    VecD Z, X, v;
  };
  auto deriv = [&](const State& s) -> State {
    VecD zdot = add(z0d, scale(0.5, br(s.X, s.v)));
    return {std::move(zdot), s.v, J * s.v};
  };
  auto step_add = [p, m](const State& s, double h, const State& d) -> State {
    return {axpy(h, d.Z, s.Z), axpy(h, d.X, s.X), axpy(h, d.v, s.v)};
  };

  std::vector<double> ts(steps + 1);
  std::vector<VecD> zs(steps + 1), xs(steps + 1);
  State s{VecD(p, 0.0), VecD(m, 0.0), x0.to_double()};
  const double h = t_max / steps;
  ts[0] = 0.0;
  zs[0] = s.Z;
  xs[0] = s.X;
  for (int i = 0; i < steps; ++i) {
    State k1 = deriv(s);
    State k2 = deriv(step_add(s, h / 2, k1));
    State k3 = deriv(step_add(s, h / 2, k2));
    State k4 = deriv(step_add(s, h, k3));
    for (std::size_t j = 0; j < p; ++j)
      s.Z[j] += h / 6 * (k1.Z[j] + 2 * k2.Z[j] + 2 * k3.Z[j] + k4.Z[j]);
    for (std::size_t j = 0; j < m; ++j) {
      s.X[j] += h / 6 * (k1.X[j] + 2 * k2.X[j] + 2 * k3.X[j] + k4.X[j]);
      s.v[j] += h / 6 * (k1.v[j] + 2 * k2.v[j] + 2 * k3.v[j] + k4.v[j]);
    }
    ts[i + 1] = (i + 1) * h;
    zs[i + 1] = s.Z;
    xs[i + 1] = s.X;
  }
  return GeodesicCurve::sampled(std::move(ts), std::move(zs), std::move(xs));
}

GeodesicCurve geodesic_closed_form(const StepTwoAlgebra& alg, const BlockMetric& g,
                                   const PhiForm& phi, const VecQ& z0, const VecQ& x0,
                                   bool paper_literal_z) {
  GeodesicParams par = make_geodesic_params(alg, g, phi, z0, x0);
  const std::size_t p = alg.p();

  if (par.phi0.is_zero()) {
    if (par.J.is_zero()) {
      VecD z0d = z0.to_double(), x0d = x0.to_double();
      return GeodesicCurve::closed_form([z0d, x0d](double t) -> std::pair<VecD, VecD> {
        return {scale(t, z0d), scale(t, x0d)};
      });
    }
    // phi(z0) = 0 forces ker j(z0) = everything only in definite signature;
    // here j(z0) != 0, so the published reduction does not apply.
    const double t_cap = 16.0;
    const int steps = 64000;
    return geodesic_integrate(alg, g, z0, x0, t_cap, steps)
        .with_note("phi(z0) = 0 but j(z0) != 0: closed form inapplicable, integrated instead");
  }

  const double phi0 = par.phi0.to_double();
  VecD z0d = z0.to_double(), x0d = x0.to_double();
  VecD jx0 = (par.J * x0).to_double();
  // [x0, j(z0)x0] = (4/m) |x0|^2 Rc(z0); exact, and exactly zero in the
  // situations covered by the straight-line corollary.
  VecD w = alg.bracket_x(x0, par.J * x0).to_double();

  auto fn = [phi0, z0d, x0d, jx0, w, paper_literal_z](double t) -> std::pair<VecD, VecD> {
    double c_x_j, c_x_x, c_z;
    if (phi0 > 0) {
      double s = std::sqrt(phi0);
      c_x_j = (1.0 - std::cos(t * s)) / phi0;
      c_x_x = std::sin(t * s) / s;
      c_z = paper_literal_z ? std::sin(t * s) / (phi0 * s) - t / (2 * phi0)
                            : t / (2 * phi0) - std::sin(t * s) / (2 * phi0 * s);
    } else {
      double s = std::sqrt(-phi0);
      c_x_j = (1.0 - std::cosh(t * s)) / phi0;
      c_x_x = std::sinh(t * s) / s;
      c_z = paper_literal_z ? std::sinh(t * s) / (phi0 * s) - t / (2 * phi0)
                            : t / (2 * phi0) + std::sinh(t * s) / (2 * (-phi0) * s);
    }
    VecD x = axpy(c_x_j, jx0, scale(c_x_x, x0d));
    VecD z = axpy(c_z, w, scale(t, z0d));
    return {std::move(z), std::move(x)};
  };
  return GeodesicCurve::closed_form(fn);
}

SpectralSplit spectral_split(const StepTwoAlgebra& alg, const BlockMetric& g,
                             const MatQ& J, const VecQ& x0) {
  (void)alg;
  (void)g;
  const std::size_t m = J.rows();
  SpectralSplit out;

  MatQ J2 = J * J;
  out.kernel_basis = J.nullspace();
  if (J2.nullspace().size() != out.kernel_basis.size())
    throw spectral_error("spectral_split: ker J^2 exceeds ker J");

  PolyQ cp = charpoly(J2);
  PolyQ sf = square_free_part(cp);

  // Diagonalizability over R: the square-free annihilator must kill J^2 and
  // all of its roots must be real. Both tests are exact.
  {
    MatQ val(m, m);  // Horner evaluation of sf(J2)
    for (std::size_t i = sf.coeffs().size(); i-- > 0;) {
      val = val * J2;
      for (std::size_t d = 0; d < m; ++d) val.at(d, d) += sf.coeff(i);
    }
    if (!val.is_zero())
      throw spectral_error("spectral_split: J^2 is not diagonalizable");
  }
  if (sturm_count_all(sf) != sf.degree())
    throw spectral_error("spectral_split: J^2 has non-real eigenvalues");

  EigenData ed = eigen_data(J2);
  const bool exact = ed.spectrum_rational();
  out.exact = exact;

  if (exact) {
    // Exact spectral projectors P_j = prod_{i != j} (J2 - theta_i) / (theta_j - theta_i).
    std::vector<Rat> thetas;
    for (const auto& e : ed.rational) thetas.push_back(e.value);
    std::vector<MatQ> projectors;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      MatQ P = MatQ::identity(m);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (i == j) continue;
        MatQ f = J2;
        for (std::size_t d = 0; d < m; ++d) f.at(d, d) -= thetas[i];
        P = P * f;
        P *= (thetas[j] - thetas[i]).inv();
      }
      projectors.push_back(std::move(P));
    }
    VecQ x1(m);
    bool has_zero = false;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      if (thetas[j].is_zero()) {
        x1 = projectors[j] * x0;
        has_zero = true;
        continue;
      }
      SpectralBlock blk;
      blk.theta_exact = thetas[j];
      blk.theta = thetas[j].to_double();
      blk.w_exact = projectors[j] * x0;
      blk.w = blk.w_exact->to_double();
      std::vector<VecQ> cols;
      for (std::size_t c = 0; c < m; ++c) cols.push_back(projectors[j].col(c));
      for (const auto& b : span_basis(cols)) blk.basis.push_back(b.to_double());
      out.blocks.push_back(std::move(blk));
    }
    if (!has_zero && !out.kernel_basis.empty())
      throw spectral_error("spectral_split: inconsistent kernel bookkeeping");
    out.x1_exact = x1;
    out.x1 = x1.to_double();
    return out;
  }

  // Irrational (real) spectrum: isolate the roots exactly, refine, and build
  // the projectors in double precision.
  std::vector<double> thetas;
  for (const auto& e : ed.rational) thetas.push_back(e.value.to_double());
  for (const auto& f : ed.nonrational_factors) {
    PolyQ fsf = square_free_part(f);
    for (auto iv : isolate_real_roots(fsf)) {
      iv = refine_root(fsf, iv, Rat(1, 1000000000000L));
      thetas.push_back((iv.first + iv.second).to_double() / 2.0);
    }
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               thetas.end());

  MatD J2d = to_matd(J2);
  VecD x0d = x0.to_double();
  VecD x1(m, 0.0);
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    MatD P = MatD::identity(m);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (i == j) continue;
      MatD f = J2d;
      for (std::size_t d = 0; d < m; ++d) f.at(d, d) -= thetas[i];
      P = (P * f).scaled(1.0 / (thetas[j] - thetas[i]));
    }
    if (std::abs(thetas[j]) < 1e-9) {
      x1 = P * x0d;
      continue;
    }
    SpectralBlock blk;
    blk.theta = thetas[j];
    blk.w = P * x0d;
    // dim of the block = trace of its spectral projector.
    double tr = 0.0;
    for (std::size_t d = 0; d < m; ++d) tr += P.at(d, d);
    int dim = static_cast<int>(std::lround(tr));
    for (std::size_t c = 0; c < m && static_cast<int>(blk.basis.size()) < dim; ++c) {
      VecD cand(m);
      for (std::size_t r = 0; r < m; ++r) cand[r] = P.at(r, c);
      for (const auto& b : blk.basis) {
        double dot = 0.0, nb = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          dot += cand[r] * b[r];
          nb += b[r] * b[r];
        }
        cand = axpy(-dot / nb, b, cand);
      }
      if (sup_norm(cand) > 1e-8) blk.basis.push_back(cand);
    }
    out.blocks.push_back(std::move(blk));
  }
  out.x1 = x1;
  return out;
}

GeodesicCurve geodesic_general(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const VecQ& z0, const VecQ& x0) {
  const std::size_t p = alg.p(), m = alg.m();
  if (z0.size() != p || x0.size() != m)
    throw dimension_error("geodesic_general: bad initial velocity");
  MatQ J = j_map(alg, g, z0);
  SpectralSplit split = spectral_split(alg, g, J, x0);

  BracketD br(alg);
  MatD Jd = to_matd(J);
  VecD z0d = z0.to_double();

  struct BlockData {
    double theta;
    double omega;    // sqrt(|theta|)
    bool trig;       // theta < 0: cos/sin; theta > 0: cosh/sinh
    VecD w, Jw;
  };
  std::vector<BlockData> blocks;
  for (const auto& blk : split.blocks) {
    BlockData d;
    d.theta = blk.theta;
    d.omega = std::sqrt(std::abs(blk.theta));
    d.trig = blk.theta < 0;
    d.w = blk.w;
    d.Jw = Jd * blk.w;
    blocks.push_back(std::move(d));
  }
  VecD x1 = split.x1;

  // e^{tJ} w = c1 w + c2 Jw per block, with (c1, c2) from the block's
  // eigenvalue; e^{tJ}(Jw) = c1 Jw + c2 theta w.
  auto coeffs = [](const BlockData& b, double t) -> std::pair<double, double> {
    if (b.trig) return {std::cos(t * b.omega), std::sin(t * b.omega) / b.omega};
    return {std::cosh(t * b.omega), std::sinh(t * b.omega) / b.omega};
  };

  auto fn = [m, br, z0d, x1, blocks, coeffs](double t) -> std::pair<VecD, VecD> {
    // x(t) = t x1 + sum_j (e^{tJ} - I) J^{-1} w_j,  J^{-1} w_j = Jw_j / theta.
    VecD x = scale(t, x1);
    // Accumulators reused by the z-formula.
    VecD etJ_Jinv_x2(m, 0.0);     // e^{tJ} J^{-1} x2
    VecD Jinv_x2(m, 0.0);         // J^{-1} x2
    VecD I_etJ_Jinv2_x2(m, 0.0);  // (I - e^{tJ}) J^{-2} x2
    std::vector<VecD> etJ_w(blocks.size()), etJ_Jw(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const auto& b = blocks[j];
      auto [c1, c2] = coeffs(b, t);
      VecD ew = axpy(c2, b.Jw, scale(c1, b.w));             // e^{tJ} w
      VecD eJw = axpy(c2 * b.theta, b.w, scale(c1, b.Jw));  // e^{tJ} Jw
      etJ_w[j] = ew;
      etJ_Jw[j] = eJw;
      VecD jinv_w = scale(1.0 / b.theta, b.Jw);
      VecD e_jinv_w = scale(1.0 / b.theta, eJw);
      x = add(x, sub(e_jinv_w, jinv_w));
      etJ_Jinv_x2 = add(etJ_Jinv_x2, e_jinv_w);
      Jinv_x2 = add(Jinv_x2, jinv_w);
      I_etJ_Jinv2_x2 = add(I_etJ_Jinv2_x2, scale(1.0 / b.theta, sub(b.w, ew)));
    }

    // z1(t) = z0 + 1/2 [x1, (e^{tJ} + I) J^{-1} x2] + 1/2 sum_j [J^{-1} w_j, w_j]
    VecD z1 = z0d;
    z1 = add(z1, scale(0.5, br(x1, add(etJ_Jinv_x2, Jinv_x2))));
    for (const auto& b : blocks)
      z1 = add(z1, scale(0.5 / b.theta, br(b.Jw, b.w)));

    // z2(t) = [x1, (I - e^{tJ}) J^{-2} x2] + 1/2 [e^{tJ} J^{-1} x2, J^{-1} x2]
    //         - 1/2 sum_{i != j} ([e^{tJ} J w_i, e^{tJ} J^{-1} w_j]
    //                             - [e^{tJ} w_i, e^{tJ} w_j]) / (theta_j - theta_i)
    //         + 1/2 sum_{i != j} ([J w_i, J^{-1} w_j] - [w_i, w_j]) / (theta_j - theta_i)
    VecD z2 = br(x1, I_etJ_Jinv2_x2);
    z2 = add(z2, scale(0.5, br(etJ_Jinv_x2, Jinv_x2)));
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (i == j) continue;
        double denom = blocks[j].theta - blocks[i].theta;
        VecD t1 = br(etJ_Jw[i], scale(1.0 / blocks[j].theta, etJ_Jw[j]));
        VecD t2 = br(etJ_w[i], etJ_w[j]);
        z2 = add(z2, scale(-0.5 / denom, sub(t1, t2)));
        VecD t3 = br(blocks[i].Jw, scale(1.0 / blocks[j].theta, blocks[j].Jw));
        VecD t4 = br(blocks[i].w, blocks[j].w);
        z2 = add(z2, scale(0.5 / denom, sub(t3, t4)));
      }

    VecD z = axpy(t, z1, z2);
    return {std::move(z), std::move(x)};
  };
  return GeodesicCurve::general(fn);
}

namespace {

MatQ rcz_matrix(const StepTwoAlgebra& alg, const BlockMetric& g, const PhiForm& phi) {
  auto inv = g.Gz.inverse();
  if (!inv) throw error("rc_z: degenerate center metric");
  return Rat(static_cast<long>(alg.m()), 4) * (*inv * phi.Phi);
}

/// Exact rank test: a parallel to b (including a = 0 or b = 0).
bool parallel(const VecQ& a, const VecQ& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

}  // namespace

TgResult totally_geodesic_test(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const PhiForm& phi, const VecQ& z, const VecQ& x) {
  if (z.is_zero() || x.is_zero())
    throw error("totally_geodesic_test: z and x must be nonzero");
  TgResult r;
  r.x_norm2 = g.inner_v(x, x);
  r.rcz_z = rcz_matrix(alg, g, phi) * z;
  r.rcz_parallel_z = parallel(r.rcz_z, z);
  r.witness_bracket = alg.bracket_x(x, j_map(alg, g, z) * x);
  if (r.x_norm2.is_zero() || r.rcz_z.is_zero())
    r.cls = TgClass::TgNotSubgroup;
  else if (r.rcz_parallel_z)
    r.cls = TgClass::TgSubgroup;
  else
    r.cls = TgClass::NotTg;
  return r;
}

HullResult classify_geodesic_hull(const StepTwoAlgebra& alg, const BlockMetric& g,
                                  const PhiForm& phi, const VecQ& z0, const VecQ& x0) {
  if (z0.is_zero() || x0.is_zero())
    throw error("classify_geodesic_hull: z0 and x0 must be nonzero");
  const std::size_t p = alg.p(), m = alg.m();
  TgResult tg = totally_geodesic_test(alg, g, phi, z0, x0);

  std::vector<Vector> gens;
  gens.push_back(Vector::central(z0, m));
  gens.push_back(Vector::noncentral(x0, p));
  gens.push_back(Vector::noncentral(j_map(alg, g, z0) * x0, p));
  gens.push_back(Vector::central(tg.rcz_z, m));

  std::vector<VecQ> flat;
  for (const auto& v : gens) flat.push_back(flatten(v));
  auto basis_flat = span_basis(flat);

  HullResult out;
  out.dim = basis_flat.size();
  for (const auto& b : basis_flat) {
    VecQ z(p), x(m);
    for (std::size_t i = 0; i < p; ++i) z[i] = b[i];
    for (std::size_t i = 0; i < m; ++i) x[i] = b[p + i];
    out.basis.emplace_back(std::move(z), std::move(x));
  }

  if (tg.x_norm2.is_zero() || tg.rcz_z.is_zero())
    out.type = HullType::FlatR3;
  else if (tg.rcz_parallel_z)
    out.type = HullType::Heis3Subgroup;
  else
    out.type = HullType::Heis3xR;
  return out;
}

VecQ flatten(const Vector& v) {
  VecQ out(v.z.size() + v.x.size());
  for (std::size_t i = 0; i < v.z.size(); ++i) out[i] = v.z[i];
  for (std::size_t i = 0; i < v.x.size(); ++i) out[v.z.size() + i] = v.x[i];
  return out;
}

SpanClosure span_closure(const StepTwoAlgebra& alg, const BlockMetric& g,
                         const std::vector<Vector>& gens) {
  std::vector<VecQ> flat;
  for (const auto& v : gens) flat.push_back(flatten(v));
  SpanClosure out;
  out.bracket_closed = true;
  out.connection_closed = true;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      if (!in_span(flat, flatten(alg.bracket(a, b)))) out.bracket_closed = false;
      if (!in_span(flat, flatten(connection(alg, g, a, b)))) out.connection_closed = false;
    }
  return out;
}

}  // namespace nilgeo
