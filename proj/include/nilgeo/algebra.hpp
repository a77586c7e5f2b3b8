#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilgeo/linalg.hpp"

namespace nilgeo {

/// Element of the metric Lie algebra, split along the center decomposition:
/// z_part lives in the center, x_part in the chosen complement.
struct Vector {
  VecQ z, x;

  Vector() = default;
  Vector(VecQ z_part, VecQ x_part) : z(std::move(z_part)), x(std::move(x_part)) {}
  static Vector central(VecQ z_part, std::size_t m) { return {std::move(z_part), VecQ(m)}; }
  static Vector noncentral(VecQ x_part, std::size_t p) { return {VecQ(p), std::move(x_part)}; }

  [[nodiscard]] bool is_zero() const { return z.is_zero() && x.is_zero(); }
  Vector& operator+=(const Vector& o) {
    z += o.z;
    x += o.x;
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    z -= o.z;
    x -= o.x;
    return *this;
  }
  Vector& operator*=(const Rat& s) {
    z *= s;
    x *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Rat& s, Vector a) { return a *= s; }
  Vector operator-() const { return {-z, -x}; }
  friend bool operator==(const Vector& a, const Vector& b) { return a.z == b.z && a.x == b.x; }
};

/// 2-step nilpotent Lie algebra presented as a center of dimension p plus a
/// complement of dimension m. Only the brackets on the complement are stored
/// ([v_a, v_b] lands in the center); brackets involving central directions
/// vanish by construction, which makes 2-step-ness a non-representable
/// failure rather than a checked invariant.
class StepTwoAlgebra {
 public:
  StepTwoAlgebra(std::size_t p, std::size_t m,
                 std::vector<std::string> names = {})
      : p_(p), m_(m), c_(m * m, VecQ(p)), names_(std::move(names)) {}

  [[nodiscard]] std::size_t p() const { return p_; }
  [[nodiscard]] std::size_t m() const { return m_; }
  [[nodiscard]] std::size_t dim() const { return p_ + m_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  /// Sets [v_a, v_b] = z (and the antisymmetric partner), 0-based indices.
  void set_bracket(std::size_t a, std::size_t b, const VecQ& z);

  /// Center coordinates of [v_a, v_b].
  [[nodiscard]] const VecQ& bracket_basis(std::size_t a, std::size_t b) const {
    return c_[a * m_ + b];
  }

  /// Bracket of two complement vectors (center coordinates).
  [[nodiscard]] VecQ bracket_x(const VecQ& u, const VecQ& v) const;

  /// Full bracket: only the x-parts interact, the result is central.
  [[nodiscard]] Vector bracket(const Vector& u, const Vector& v) const;

  [[nodiscard]] Vector zero() const { return {VecQ(p_), VecQ(m_)}; }
  [[nodiscard]] Vector basis_vector(std::size_t i) const;  // 0..p-1 center, p..p+m-1 complement

 private:
  std::size_t p_, m_;
  std::vector<VecQ> c_;  // c_[a*m+b] = center coords of [v_a, v_b]
  std::vector<std::string> names_;
};

/// Block-diagonal metric: one symmetric nondegenerate form per factor of the
/// splitting. Any signature is allowed.
struct BlockMetric {
  MatQ Gz, Gv;

  [[nodiscard]] Rat inner_z(const VecQ& a, const VecQ& b) const { return a.dot(Gz * b); }
  [[nodiscard]] Rat inner_v(const VecQ& a, const VecQ& b) const { return a.dot(Gv * b); }
  [[nodiscard]] Rat inner(const Vector& a, const Vector& b) const {
    return inner_z(a.z, b.z) + inner_v(a.x, b.x);
  }
};

struct ValidationReport {
  bool antisymmetry_ok = true;
  bool symmetric_z_ok = true;
  bool symmetric_v_ok = true;
  bool nondegenerate_z_ok = true;
  bool nondegenerate_v_ok = true;
  bool center_exact_ok = true;
  Rat det_z, det_v;
  std::optional<VecQ> center_witness;        // x in the complement with [x, -] = 0
  std::vector<std::string> violations;       // human-readable, one per failure

  /// Hard invariants only; center exactness is a warning unless strict.
  [[nodiscard]] bool ok(bool strict = false) const {
    bool hard = antisymmetry_ok && symmetric_z_ok && symmetric_v_ok &&
                nondegenerate_z_ok && nondegenerate_v_ok;
    return strict ? hard && center_exact_ok : hard;
  }
};

/// Checks antisymmetry, metric symmetry/nondegeneracy (exact determinants)
/// and declared-center exactness, reporting every violated invariant with a
/// witness. Never throws; callers decide whether to proceed.
ValidationReport validate(const StepTwoAlgebra& alg, const BlockMetric& g);

/// The j-map of a central vector: the endomorphism of the complement defined
/// by <[x,y], z> = <y, j(z)x>. Computed as Gv^{-1} Bz^T with
/// (Bz)_{ab} = <[v_a,v_b], z>; linear in z and skew-adjoint for Gv.
MatQ j_map(const StepTwoAlgebra& alg, const BlockMetric& g, const VecQ& z);

/// Pseudo-orthonormal basis for a symmetric nondegenerate form. Vector i is
/// raw[i] / sqrt(radicand[i]) with rational raw[i] and positive rational
/// radicand[i]; radicand 1 means the vector itself is rational. The raw
/// vectors are mutually orthogonal and <raw_i, raw_i> = sign_i * radicand_i
/// exactly, so the diag(+-1) Gram property is certified without leaving Q.
struct PseudoOrthonormalBasis {
  std::vector<VecQ> raw;
  std::vector<Rat> radicand;
  std::vector<int> sign;

  [[nodiscard]] std::size_t size() const { return raw.size(); }
  [[nodiscard]] bool is_rational() const;
  [[nodiscard]] std::vector<VecD> normalized() const;

  /// Matrix of a bilinear form S (given in the original coordinates) with
  /// respect to this basis: entries raw_i^T S raw_j / sqrt(r_i r_j).
  /// Exact when every needed r_i*r_j is a perfect square, else nullopt.
  [[nodiscard]] std::optional<MatQ> transform_bilinear(const MatQ& S) const;
  [[nodiscard]] MatD transform_bilinear_double(const MatQ& S) const;
};

/// Diagonalizing basis with Gram matrix diag(+-1). The pivot rule prefers the
/// first remaining vector with nonzero self-product and falls back to
/// splitting a hyperbolic pair u, w into u+w, u-w when every candidate is
/// null. `pivot_seed` != 0 shuffles the starting order (the sign multiset is
/// a Sylvester invariant and must not depend on it).
PseudoOrthonormalBasis pseudo_orthonormalize(const MatQ& G, std::uint64_t pivot_seed = 0);

/// Trivial central extension: k extra central directions that bracket
/// trivially, metric extended block-diagonally by `extra`.
std::pair<StepTwoAlgebra, BlockMetric> central_extension(const StepTwoAlgebra& alg,
                                                         const BlockMetric& g,
                                                         std::size_t k,
                                                         const MatQ& extra);

/// Rewrites the algebra and metric in the bases given by the columns of Pz
/// (center) and Pv (complement); both must be invertible.
std::pair<StepTwoAlgebra, BlockMetric> transform_basis(const StepTwoAlgebra& alg,
                                                       const BlockMetric& g,
                                                       const MatQ& Pz, const MatQ& Pv);

}  // namespace nilgeo
