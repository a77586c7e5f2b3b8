#include "nilgeo/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace nilgeo {

void StepTwoAlgebra::set_bracket(std::size_t a, std::size_t b, const VecQ& z) {
  if (a >= m_ || b >= m_) throw dimension_error("set_bracket: index out of range");
  if (z.size() != p_) throw dimension_error("set_bracket: bad center coordinates");
  if (a == b && !z.is_zero()) throw error("set_bracket: [v,v] must vanish");
  c_[a * m_ + b] = z;
  c_[b * m_ + a] = -z;
}

VecQ StepTwoAlgebra::bracket_x(const VecQ& u, const VecQ& v) const {
  if (u.size() != m_ || v.size() != m_) throw dimension_error("bracket_x: size mismatch");
  VecQ out(p_);
  for (std::size_t a = 0; a < m_; ++a) {
    if (u[a].is_zero()) continue;
    for (std::size_t b = 0; b < m_; ++b) {
      if (v[b].is_zero()) continue;
      const VecQ& c = bracket_basis(a, b);
      Rat f = u[a] * v[b];
      for (std::size_t k = 0; k < p_; ++k) out[k] += f * c[k];
    }
  }
  return out;
}

Vector StepTwoAlgebra::bracket(const Vector& u, const Vector& v) const {
  if (u.z.size() != p_ || v.z.size() != p_) throw dimension_error("bracket: size mismatch");
  return {bracket_x(u.x, v.x), VecQ(m_)};
}

Vector StepTwoAlgebra::basis_vector(std::size_t i) const {
  if (i < p_) return Vector::central(VecQ::unit(p_, i), m_);
  if (i < p_ + m_) return Vector::noncentral(VecQ::unit(m_, i - p_), p_);
  throw dimension_error("basis_vector: index out of range");
}

ValidationReport validate(const StepTwoAlgebra& alg, const BlockMetric& g) {
  ValidationReport r;
  const std::size_t p = alg.p(), m = alg.m();
  if (g.Gz.rows() != p || g.Gz.cols() != p || g.Gv.rows() != m || g.Gv.cols() != m)
    throw dimension_error("validate: metric dimensions inconsistent with algebra");

  for (std::size_t a = 0; a < m && r.antisymmetry_ok; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (!(alg.bracket_basis(a, b) + alg.bracket_basis(b, a)).is_zero()) {
        r.antisymmetry_ok = false;
        std::ostringstream os;
        os << "antisymmetry: [v" << a + 1 << ",v" << b + 1 << "] != -[v" << b + 1
           << ",v" << a + 1 << "]";
        r.violations.push_back(os.str());
        break;
      }
    }

  if (!g.Gz.is_symmetric()) {
    r.symmetric_z_ok = false;
    r.violations.push_back("metric_center is not symmetric");
  }
  if (!g.Gv.is_symmetric()) {
    r.symmetric_v_ok = false;
    r.violations.push_back("metric_v is not symmetric");
  }

  r.det_z = g.Gz.det();
  r.det_v = g.Gv.det();
  if (r.det_z.is_zero()) {
    r.nondegenerate_z_ok = false;
    r.violations.push_back("metric_center is degenerate: det = 0");
  }
  if (r.det_v.is_zero()) {
    r.nondegenerate_v_ok = false;
    r.violations.push_back("metric_v is degenerate: det = 0");
  }

  // Declared-center exactness: no nonzero x in the complement may bracket
  // trivially with everything. Stack the maps x -> [x, v_b] into one matrix.
  if (m > 0) {
    MatQ k(m * p, m);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t kk = 0; kk < p; ++kk)
        for (std::size_t a = 0; a < m; ++a)
          k.at(b * p + kk, a) = alg.bracket_basis(a, b)[kk];
    auto null = k.nullspace();
    if (!null.empty()) {
      r.center_exact_ok = false;
      r.center_witness = null.front();
      std::ostringstream os;
      os << "declared center is not exact: " << null.front().str()
         << " in the complement brackets trivially with everything";
      r.violations.push_back(os.str());
    }
  }
  return r;
}

MatQ j_map(const StepTwoAlgebra& alg, const BlockMetric& g, const VecQ& z) {
  const std::size_t p = alg.p(), m = alg.m();
  if (z.size() != p) throw dimension_error("j_map: bad center vector");
  MatQ B(m, m);
  VecQ gz = g.Gz * z;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Rat v = alg.bracket_basis(a, b).dot(gz);
      B.at(a, b) = v;
      B.at(b, a) = -v;
    }
  auto gv_inv = g.Gv.inverse();
  if (!gv_inv) throw error("j_map: degenerate metric on the complement");
  return *gv_inv * B.transpose();
}

bool PseudoOrthonormalBasis::is_rational() const {
  return std::all_of(radicand.begin(), radicand.end(),
                     [](const Rat& r) { return r == Rat(1); });
}

std::vector<VecD> PseudoOrthonormalBasis::normalized() const {
  std::vector<VecD> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double s = 1.0 / std::sqrt(radicand[i].to_double());
    VecD v = raw[i].to_double();
    for (auto& x : v) x *= s;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<MatQ> PseudoOrthonormalBasis::transform_bilinear(const MatQ& S) const {
  const std::size_t n = raw.size();
  MatQ out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat num = raw[i].dot(S * raw[j]);
      if (num.is_zero()) continue;
      Rat rr = radicand[i] * radicand[j];
      if (!rr.is_perfect_square()) return std::nullopt;
      out.at(i, j) = num / rr.sqrt_exact();
    }
  return out;
}

MatD PseudoOrthonormalBasis::transform_bilinear_double(const MatQ& S) const {
  const std::size_t n = raw.size();
  MatD out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double num = raw[i].dot(S * raw[j]).to_double();
      out.at(i, j) = num / std::sqrt((radicand[i] * radicand[j]).to_double());
    }
  return out;
}

PseudoOrthonormalBasis pseudo_orthonormalize(const MatQ& G, std::uint64_t pivot_seed) {
  if (!G.is_symmetric()) throw error("pseudo_orthonormalize: form not symmetric");
  if (G.det().is_zero()) throw error("pseudo_orthonormalize: degenerate form");
  std::vector<std::size_t> order;
  if (pivot_seed != 0) {
    order.resize(G.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(pivot_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  CongruentDiag cd = congruent_diagonalize(G, order);

  PseudoOrthonormalBasis basis;
  for (std::size_t i = 0; i < cd.basis.size(); ++i) {
    Rat d = cd.diag[i];
    // d != 0 by nondegeneracy. Extract the square part of |d| so the
    // radicand stays small and perfect squares collapse to rational vectors.
    auto [s, f] = square_free_split(d.abs());
    basis.raw.push_back(cd.basis[i] * s.inv());
    basis.radicand.push_back(f);
    basis.sign.push_back(d.sign());
  }
  return basis;
}

std::pair<StepTwoAlgebra, BlockMetric> central_extension(const StepTwoAlgebra& alg,
                                                         const BlockMetric& g,
                                                         std::size_t k,
                                                         const MatQ& extra) {
  if (extra.rows() != k || extra.cols() != k)
    throw dimension_error("central_extension: extra metric must be k x k");
  if (!extra.is_symmetric()) throw error("central_extension: extra metric not symmetric");
  if (k > 0 && extra.det().is_zero())
    throw error("central_extension: extra metric degenerate");

  const std::size_t p = alg.p(), m = alg.m();
  StepTwoAlgebra ext(p + k, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const VecQ& c = alg.bracket_basis(a, b);
      VecQ cc(p + k);
      for (std::size_t i = 0; i < p; ++i) cc[i] = c[i];
      ext.set_bracket(a, b, cc);
    }
  MatQ gz(p + k, p + k);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) gz.at(i, j) = g.Gz.at(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gz.at(p + i, p + j) = extra.at(i, j);
  return {std::move(ext), BlockMetric{std::move(gz), g.Gv}};
}

std::pair<StepTwoAlgebra, BlockMetric> transform_basis(const StepTwoAlgebra& alg,
                                                       const BlockMetric& g,
                                                       const MatQ& Pz, const MatQ& Pv) {
  const std::size_t p = alg.p(), m = alg.m();
  if (Pz.rows() != p || Pz.cols() != p || Pv.rows() != m || Pv.cols() != m)
    throw dimension_error("transform_basis: bad change-of-basis shapes");
  auto Pz_inv = Pz.inverse();
  if (!Pz_inv || Pv.det().is_zero()) throw error("transform_basis: singular matrix");

  StepTwoAlgebra out(p, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      VecQ c = alg.bracket_x(Pv.col(a), Pv.col(b));
      out.set_bracket(a, b, *Pz_inv * c);
    }
  BlockMetric gg{Pz.transpose() * g.Gz * Pz, Pv.transpose() * g.Gv * Pv};
  return {std::move(out), std::move(gg)};
}

}  // namespace nilgeo
