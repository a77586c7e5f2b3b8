#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nilgeo/algebra.hpp"

namespace nilgeo {

/// Symmetric bilinear form on the center obtained by polarizing the
/// quadratic form of the modified H-type condition j(z)^2 = -phi(z) Id.
/// May be degenerate and/or indefinite; both are legitimate.
struct PhiForm {
  MatQ Phi;
  std::string basis_label = "input";
};

/// phi(z) = z^T Phi z.
Rat phi_eval(const PhiForm& phi, const VecQ& z);

/// Polarized form <z, w>_phi = z^T Phi w.
Rat phi_inner(const PhiForm& phi, const VecQ& z, const VecQ& w);

struct MhtCounterexample {
  std::size_t i = 0, j = 0;    // center basis indices (0-based) of the failing pair
  MatQ anticommutator;          // j(z_i) j(z_j) + j(z_j) j(z_i)
  std::size_t row = 0, col = 0; // witness entry showing it is not scalar
  std::string description;
};

struct MhtCertificate {
  bool is_mht = false;
  std::optional<PhiForm> phi;
  std::optional<MhtCounterexample> counterexample;
};

/// Decides the modified H-type property on the given (arbitrary rational)
/// basis: every anticommutator j(z_i)j(z_j) + j(z_j)j(z_i) must be an exact
/// scalar multiple c_ij of the identity; then Phi_ij = -c_ij / 2 and
/// bilinearity extends j(z)^2 = -phi(z) Id to every z. On failure the
/// lexicographically first failing pair (i, j) is certified with its
/// anticommutator and a non-scalar witness entry.
MhtCertificate detect_mht(const StepTwoAlgebra& alg, const BlockMetric& g);

struct MhtVerifyReport {
  int trials = 0;
  Rat max_residual;             // exactly 0 when the certificate is genuine
  bool all_zero = true;
  std::string first_failure;    // which identity broke, if any
};

/// Spot-checks the defining identities on `trials` random rational vectors:
/// <j(z)e, j(z)e'> = phi(z)<e,e'>, j(z)^2 = -phi(z) Id, and
/// <j(z)e, j(z')e> = <z,z'>_phi <e,e>. Exact arithmetic throughout.
MhtVerifyReport verify_mht(const StepTwoAlgebra& alg, const BlockMetric& g,
                           const PhiForm& phi, int trials, std::uint64_t seed);

struct PhiClassification {
  Signature sig;                 // exact signature of Phi
  bool degenerate = false;       // det Phi = 0
  bool pseudo_h_type = false;    // Phi = Gz
  bool h_type = false;           // pseudo-H-type + both blocks positive definite
  std::optional<Rat> generalized_heisenberg_c;  // Phi = 4c Gz, c != 0
};

/// Exact classification of the certified form against the metric.
PhiClassification classify_phi(const BlockMetric& g, const PhiForm& phi);

/// The common sectional curvature c of all nondegenerate semi-central planes,
/// when it exists: requires the modified H-type property with Phi = 4c Gz
/// (c may be zero, e.g. for abelian-like j-maps). Returns nullopt otherwise.
std::optional<Rat> constant_semicentral_curvature(const StepTwoAlgebra& alg,
                                                  const BlockMetric& g);

/// Phi expressed in the pseudo-orthonormalized center basis, when the
/// radicand products allow an exact answer (they do for every corpus
/// example). Useful because curvature tables are stated in such bases.
std::optional<MatQ> phi_in_pon_basis(const PhiForm& phi, const PseudoOrthonormalBasis& pon);

}  // namespace nilgeo
