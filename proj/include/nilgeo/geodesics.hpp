#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nilgeo/curvature.hpp"

namespace nilgeo {

struct method_error : error {
  using error::error;
};
struct spectral_error : error {
  using error::error;
};

/// Data determined by a geodesic's initial velocity z0 + x0.
struct GeodesicParams {
  VecQ z0, x0;
  Rat phi0;  // phi(z0)
  MatQ J;    // j(z0)
};

GeodesicParams make_geodesic_params(const StepTwoAlgebra& alg, const BlockMetric& g,
                                    const PhiForm& phi, const VecQ& z0, const VecQ& x0);

/// e^{tJ} for J with J^2 = -phi0 Id: cos/sin for phi0 > 0, cosh/sinh for
/// phi0 < 0, I + tJ for phi0 = 0 (then J^2 = 0).
MatD j_exp(const MatD& J, double phi0, double t);
MatD j_exp(const GeodesicParams& params, double t);

/// J^{-1} = -(1/phi0) J; exact. Throws method_error when phi0 = 0.
MatQ j_inverse(const GeodesicParams& params);

/// Truncated power-series matrix exponential (validation oracle).
MatD matrix_exp_series(const MatD& A, int terms = 30);

/// A geodesic through the identity in exponential coordinates,
/// t -> (z(t), x(t)).
class GeodesicCurve {
 public:
  enum class Kind { ClosedForm, General, Sampled };

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& note() const { return note_; }
  [[nodiscard]] std::pair<VecD, VecD> eval(double t) const { return fn_(t); }

  /// Node times when the curve was produced by the integrator (empty
  /// otherwise). eval() is exact at nodes, linear in between.
  [[nodiscard]] const std::vector<double>& sample_times() const { return ts_; }

  static GeodesicCurve closed_form(std::function<std::pair<VecD, VecD>(double)> fn,
                                   std::string note = {});
  static GeodesicCurve general(std::function<std::pair<VecD, VecD>(double)> fn);
  static GeodesicCurve sampled(std::vector<double> ts, std::vector<VecD> zs,
                               std::vector<VecD> xs, std::string note = {});
  [[nodiscard]] GeodesicCurve with_note(std::string note) const {
    GeodesicCurve c = *this;
    c.note_ = std::move(note);
    return c;
  }

 private:
  Kind kind_ = Kind::ClosedForm;
  std::function<std::pair<VecD, VecD>(double)> fn_;
  std::vector<double> ts_;
  std::string note_;
};

/// Closed-form geodesic of a modified H-type metric with initial velocity
/// z0 + x0. For phi0 = 0 with j(z0) = 0 the curve is the straight line
/// (t z0, t x0); phi0 = 0 with j(z0) != 0 falls outside the closed form's
/// hypotheses (possible in indefinite signature) and silently routes to the
/// integrator, with the reason recorded in note().
///
/// The z-coefficient defaults to the value forced by the spectral reduction
/// and the connection ODE; `paper_literal_z` swaps in the published variant,
/// which fails dz/dt(0) = z0 whenever |x0|^2 Rc(z0) != 0 and is kept for
/// comparison runs only.
GeodesicCurve geodesic_closed_form(const StepTwoAlgebra& alg, const BlockMetric& g,
                                   const PhiForm& phi, const VecQ& z0, const VecQ& x0,
                                   bool paper_literal_z = false);

struct SpectralBlock {
  double theta = 0.0;                 // eigenvalue of J^2 on this block
  std::optional<Rat> theta_exact;
  std::vector<VecD> basis;
  VecD w;                             // component of x0 in the block
  std::optional<VecQ> w_exact;
};

/// Splitting of the complement under J = j(z0): kernel plus one invariant
/// block per distinct nonzero eigenvalue of J^2.
struct SpectralSplit {
  std::vector<VecQ> kernel_basis;     // ker J, exact
  VecD x1;                            // kernel component of x0
  std::optional<VecQ> x1_exact;
  std::vector<SpectralBlock> blocks;
  bool exact = false;                 // rational spectrum, all data exact
};

/// Throws spectral_error when J^2 fails to diagonalize over the reals or
/// when ker J^2 exceeds ker J (J not invertible off its kernel).
SpectralSplit spectral_split(const StepTwoAlgebra& alg, const BlockMetric& g,
                             const MatQ& J, const VecQ& x0);

/// Geodesic of a general 2-step metric (no modified H-type assumption) with
/// J^2 real-diagonalizable, assembled from the spectral splitting.
GeodesicCurve geodesic_general(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const VecQ& z0, const VecQ& x0);

/// Fixed-step RK4 on the exponential-coordinate system
///   X' = v,  Z' = z0 + 1/2 [X, v],  v' = j(z0) v,
/// which is the geodesic equation written in the left-invariant frame: the
/// center part of the body velocity is constant, the complement part rotates
/// by e^{t j(z0)}, and positions follow from the 2-step
/// Baker-Campbell-Hausdorff product (see the derivation note in geodesics.cpp).
GeodesicCurve geodesic_integrate(const StepTwoAlgebra& alg, const BlockMetric& g,
                                 const VecQ& z0, const VecQ& x0, double t_max,
                                 int steps);

enum class TgClass { TgSubgroup, TgNotSubgroup, NotTg };

struct TgResult {
  TgClass cls = TgClass::NotTg;
  Rat x_norm2;
  VecQ rcz_z;            // Rc|_center applied to z
  bool rcz_parallel_z = false;
  VecQ witness_bracket;  // [x, j(z)x] = (4/m)|x|^2 Rc(z), computed exactly
};

/// Classifies span{z, x, j(z)x}: a totally geodesic subgroup iff x is
/// non-null and z is an eigenvector of Rc|_center with nonzero eigenvalue;
/// totally geodesic but not a subgroup iff |x|^2 = 0 or Rc(z) = 0;
/// not totally geodesic otherwise. Exact rank-one minor tests throughout.
TgResult totally_geodesic_test(const StepTwoAlgebra& alg, const BlockMetric& g,
                               const PhiForm& phi, const VecQ& z, const VecQ& x);

enum class HullType { Heis3Subgroup, FlatR3, Heis3xR };

struct HullResult {
  HullType type = HullType::FlatR3;
  std::vector<Vector> basis;  // basis of span{z0, x0, j(z0)x0, Rc(z0)}
  std::size_t dim = 0;
};

/// The minimal submanifold every geodesic lives in, and which of the three
/// model geometries it carries.
HullResult classify_geodesic_hull(const StepTwoAlgebra& alg, const BlockMetric& g,
                                  const PhiForm& phi, const VecQ& z0, const VecQ& x0);

/// Flattens a split vector to length p + m (center coordinates first).
VecQ flatten(const Vector& v);

struct SpanClosure {
  bool bracket_closed = false;
  bool connection_closed = false;
};

/// Checks that brackets and all pairwise connection values of the given
/// vectors stay inside their span (exact).
SpanClosure span_closure(const StepTwoAlgebra& alg, const BlockMetric& g,
                         const std::vector<Vector>& gens);

}  // namespace nilgeo
