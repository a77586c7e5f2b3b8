#pragma once

#include <optional>

#include "nilgeo/mht.hpp"
#include "nilgeo/poly.hpp"

namespace nilgeo {

struct degenerate_plane_error : error {
  explicit degenerate_plane_error(Vector u, Vector v)
      : error("sectional curvature undefined on a degenerate plane (Q = 0)"),
        U(std::move(u)),
        V(std::move(v)) {}
  Vector U, V;
};

/// Levi-Civita connection of the left-invariant metric, evaluated on
/// left-invariant fields: nabla_z z' = 0, nabla_z e = nabla_e z = -1/2 j(z)e,
/// nabla_e e' = 1/2 [e, e'].
Vector connection(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& U,
                  const Vector& V);

/// Curvature tensor R(X,Y)Z from the closed forms. The central-pair term
/// R(z,z')e is the operator commutator 1/4 (j(z)j(z') - j(z')j(z)) e, which
/// is what the connection actually produces (see riemann_oracle).
Vector riemann(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
               const Vector& Y, const Vector& Z);

/// Independent check: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
/// - nabla_[X,Y] Z on the left-invariant frame, built only from the
/// connection and the algebra bracket.
Vector riemann_oracle(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
                      const Vector& Y, const Vector& Z);

/// <U,U><V,V> - <U,V>^2; the plane span{U,V} is nondegenerate iff nonzero.
Rat plane_q(const BlockMetric& g, const Vector& U, const Vector& V);

/// Sectional curvature K = <R(U,V)V, U> / Q(U,V).
/// Throws degenerate_plane_error when Q = 0.
Rat sectional(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& U,
              const Vector& V);

/// xi = trace(Gz^{-1} Phi); basis independent.
Rat compute_xi(const BlockMetric& g, const PhiForm& phi);

/// Ricci curvature via the frame-trace oracle (works for any 2-step input):
/// Ric(X,Y) = sum_a <R(u_a, X)Y, u_a> / <u_a, u_a> over a rational orthogonal
/// basis of the full algebra.
Rat ricci_trace_oracle(const StepTwoAlgebra& alg, const BlockMetric& g, const Vector& X,
                       const Vector& Y);

/// Ricci curvature. With a certified Phi, uses the closed forms
/// Ric(e,z) = 0, Ric(e,e') = -(xi/2)<e,e'>, Ric(z,z') = (m/4)<z,z'>_phi;
/// without one, falls back to the trace oracle.
Rat ricci(const StepTwoAlgebra& alg, const BlockMetric& g,
          const std::optional<PhiForm>& phi, const Vector& X, const Vector& Y);

/// Everything the Ricci operator determines for a modified H-type metric.
struct CurvatureReport {
  Rat xi;
  Rat scalar_curvature;       // -m xi / 4
  MatQ rc_z;                  // (m/4) Gz^{-1} Phi, in the input center basis
  Rat rc_v_eigenvalue;        // -xi / 2
  EigenData rc_z_eigendata;
  std::size_t m = 0;
};

CurvatureReport ricci_operator(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const PhiForm& phi);

/// S = -m xi / 4, cross-checked against the trace of the full Ricci operator.
Rat scalar_curvature(const CurvatureReport& report);

struct IsometryCoincidence {
  bool coincide = false;                // -xi/2 is not an eigenvalue of rc_z
  std::optional<VecQ> kernel_witness;   // kernel vector of rc_z + (xi/2) Id otherwise
};

/// The isometry-group coincidence criterion: all three isometry groups agree
/// when the complement eigenvalue -xi/2 does not also occur on the center.
/// Decided exactly via det(rc_z + (xi/2) Id).
IsometryCoincidence isometry_coincidence(const CurvatureReport& report);

}  // namespace nilgeo
