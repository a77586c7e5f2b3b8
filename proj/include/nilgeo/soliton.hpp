#pragma once

#include <optional>

#include "nilgeo/curvature.hpp"

namespace nilgeo {

/// Basis of the derived algebra [v, v] (a subspace of the center), by exact
/// row reduction of all pairwise brackets.
std::vector<VecQ> derived_algebra(const StepTwoAlgebra& alg);

struct SolitonVerdict {
  bool is_soliton = false;
  std::optional<Rat> c;        // D = Rc + c Id is a derivation
  std::optional<Rat> lambda;   // common eigenvalue of Rc|_center on [v,v]
  bool c_non_unique = false;   // derived algebra zero: every c works
  std::optional<VecQ> witness; // derived-algebra generator that is not an eigenvector
  std::vector<VecQ> derived_basis;
  bool derivation_identity_ok = false;  // D[x,y] = [Dx,y] + [x,Dy] on basis pairs
};

/// Nilsoliton criterion for a certified modified H-type metric: the metric is
/// a nilsoliton iff the derived algebra sits inside a single eigenspace of
/// Rc|_center; then c = lambda + xi. The derivation identity is re-verified
/// exactly on all bracket generators.
SolitonVerdict nilsoliton_check(const StepTwoAlgebra& alg, const BlockMetric& g,
                                const PhiForm& phi);

/// Builds the trivial central extension (phi extended by zero on the new
/// directions), reruns the nilsoliton check, and requires the verdict to
/// match the base: same lambda and same c.
SolitonVerdict extension_soliton_check(const StepTwoAlgebra& alg, const BlockMetric& g,
                                       const PhiForm& phi, std::size_t k,
                                       const MatQ& extra);

}  // namespace nilgeo
