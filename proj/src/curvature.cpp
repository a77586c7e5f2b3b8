#include "nilgeo/curvature.hpp"

namespace nilgeo {

Vector connection(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& U,
                  const Vector& V) {
  // z-part: 1/2 [Ux, Vx]; v-part: -1/2 (j(Uz)Vx + j(Vz)Ux).
  VecQ zpart = Rat(1, 2) * alg.bracket_x(U.x, V.x);
  VecQ vpart = Rat(-1, 2) * (j_map(alg, g, U.z) * V.x + j_map(alg, g, V.z) * U.x);
  return {std::move(zpart), std::move(vpart)};
}

Vector riemann(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
               const Vector& Y, const Vector& Z) {
  const std::size_t p = alg.p(), m = alg.m();
  MatQ Jxz = j_map(alg, g, X.z);
  MatQ Jyz = j_map(alg, g, Y.z);
  MatQ Jzz = j_map(alg, g, Z.z);

  VecQ out_z(p);
  VecQ out_v(m);
  const Rat quarter(1, 4), half(1, 2);

  // R(z, z') z'' = 0 contributes nothing.

  // R(z, z') e = 1/4 (j(z)j(z') - j(z')j(z)) e.
  out_v += quarter * ((Jxz * (Jyz * Z.x)) - (Jyz * (Jxz * Z.x)));

  // R(z, e) z' = 1/4 j(z) j(z') e  and the antisymmetric partner.
  out_v += quarter * (Jxz * (Jzz * Y.x));
  out_v -= quarter * (Jyz * (Jzz * X.x));

  // R(Xz, Yv)Zv = 1/4 [Yv, j(Xz)Zv]; R(Xv, Yz)Zv = -1/4 [Xv, j(Yz)Zv].
  out_z += quarter * alg.bracket_x(Y.x, Jxz * Z.x);
  out_z -= quarter * alg.bracket_x(X.x, Jyz * Z.x);

  // R(e, e') z = -1/4 ([e, j(z)e'] + [j(z)e, e']).
  out_z -= quarter * (alg.bracket_x(X.x, Jzz * Y.x) + alg.bracket_x(Jzz * X.x, Y.x));

  // R(e, e') e'' = 1/4 (j([e,e''])e' - j([e',e''])e) + 1/2 j([e,e'])e''.
  out_v += quarter * (j_map(alg, g, alg.bracket_x(X.x, Z.x)) * Y.x);
  out_v -= quarter * (j_map(alg, g, alg.bracket_x(Y.x, Z.x)) * X.x);
  out_v += half * (j_map(alg, g, alg.bracket_x(X.x, Y.x)) * Z.x);

  return {std::move(out_z), std::move(out_v)};
}

Vector riemann_oracle(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
                      const Vector& Y, const Vector& Z) {
  Vector a = connection(alg, g, X, connection(alg, g, Y, Z));
  Vector b = connection(alg, g, Y, connection(alg, g, X, Z));
  Vector c = connection(alg, g, alg.bracket(X, Y), Z);
  return a - b - c;
}

Rat plane_q(const BlockMetric& g, const Vector& U, const Vector& V) {
  Rat uu = g.inner(U, U), vv = g.inner(V, V), uv = g.inner(U, V);
  return uu * vv - uv * uv;
}

Rat sectional(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& U,
              const Vector& V) {
  Rat q = plane_q(g, U, V);
  if (q.is_zero()) throw degenerate_plane_error(U, V);
  return g.inner(riemann(alg, g, U, V, V), U) / q;
}

Rat compute_xi(const BlockMetric& g, const PhiForm& phi) {
  auto inv = g.Gz.inverse();
  if (!inv) throw error("compute_xi: degenerate center metric");
  return (*inv * phi.Phi).trace();
}

Rat ricci_trace_oracle(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
                       const Vector& Y) {
  // Rational orthogonal (not normalized) frame: the trace only needs the
  // squared norms, so everything stays exact.
  CongruentDiag cz = congruent_diagonalize(g.Gz);
  CongruentDiag cv = congruent_diagonalize(g.Gv);
  Rat sum;
  for (std::size_t k = 0; k < cz.basis.size(); ++k) {
    Vector E = Vector::central(cz.basis[k], alg.m());
    sum += g.inner(riemann(alg, g, E, X, Y), E) / cz.diag[k];
  }
  for (std::size_t a = 0; a < cv.basis.size(); ++a) {
    Vector E = Vector::noncentral(cv.basis[a], alg.p());
    sum += g.inner(riemann(alg, g, E, X, Y), E) / cv.diag[a];
  }
  return sum;
}

Rat ricci(const StepTwoAlgebra& alg, const BlockMetric& g,
          const std::optional<PhiForm>& phi, const Vector& X, const Vector& Y) {
  if (!phi) return ricci_trace_oracle(alg, g, X, Y);
  Rat xi = compute_xi(g, *phi);
  Rat m(static_cast<long>(alg.m()));
  // Ric(e, z) = 0; Ric(e, e') = -(xi/2)<e,e'>; Ric(z, z') = (m/4)<z,z'>_phi.
  return Rat(-1, 2) * xi * g.inner_v(X.x, Y.x) +
         Rat(1, 4) * m * phi_inner(*phi, X.z, Y.z);
}

CurvatureReport ricci_operator(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const PhiForm& phi) {
  CurvatureReport rep;
  rep.m = alg.m();
  rep.xi = compute_xi(g, phi);
  rep.scalar_curvature = Rat(-1, 4) * Rat(static_cast<long>(alg.m())) * rep.xi;
  auto inv = g.Gz.inverse();
  if (!inv) throw error("ricci_operator: degenerate center metric");
  rep.rc_z = Rat(static_cast<long>(alg.m()), 4) * (*inv * phi.Phi);
  rep.rc_v_eigenvalue = Rat(-1, 2) * rep.xi;
  rep.rc_z_eigendata = eigen_data(rep.rc_z);
  return rep;
}

Rat scalar_curvature(const CurvatureReport& report) {
  Rat s = report.scalar_curvature;
  Rat trace_check = report.rc_z.trace() +
                    Rat(static_cast<long>(report.m)) * report.rc_v_eigenvalue;
  if (s != trace_check)
    throw error("scalar_curvature: closed form disagrees with Ricci operator trace");
  return s;
}

IsometryCoincidence isometry_coincidence(const CurvatureReport& report) {
  IsometryCoincidence out;
  MatQ shifted = report.rc_z;
  Rat half_xi = report.xi / Rat(2);
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted.at(i, i) += half_xi;
  if (!shifted.det().is_zero()) {
    out.coincide = true;
    return out;
  }
  auto null = shifted.nullspace();
  if (!null.empty()) out.kernel_witness = null.front();
  return out;
}

}  // namespace nilgeo
