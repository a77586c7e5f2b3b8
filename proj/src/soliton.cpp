#include "nilgeo/soliton.hpp"

namespace nilgeo {

std::vector<VecQ> derived_algebra(const StepTwoAlgebra& alg) {
  std::vector<VecQ> gens;
  for (std::size_t a = 0; a < alg.m(); ++a)
    for (std::size_t b = a + 1; b < alg.m(); ++b) {
      const VecQ& c = alg.bracket_basis(a, b);
      if (!c.is_zero()) gens.push_back(c);
    }
  return span_basis(gens);
}

namespace {

// Solves rc_z w = lambda w exactly for nonzero w; nullopt if w is not an
// eigenvector.
std::optional<Rat> eigenvalue_on(const MatQ& rcz, const VecQ& w) {
  VecQ img = rcz * w;
  std::optional<Rat> lambda;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) {
      if (!img[i].is_zero()) return std::nullopt;
      continue;
    }
    Rat l = img[i] / w[i];
    if (!lambda)
      lambda = l;
    else if (*lambda != l)
      return std::nullopt;
  }
  return lambda ? lambda : std::optional<Rat>(Rat(0));
}

}  // namespace

SolitonVerdict nilsoliton_check(const StepTwoAlgebra& alg, const BlockMetric& g,
                                const PhiForm& phi) {
  SolitonVerdict v;
  v.derived_basis = derived_algebra(alg);

  CurvatureReport rep = ricci_operator(alg, g, phi);
  const Rat xi = rep.xi;

  if (v.derived_basis.empty()) {
    // Abelian bracket: D = Rc + c Id is a derivation for every c.
    v.is_soliton = true;
    v.c_non_unique = true;
    v.lambda = Rat(0);
    v.c = xi;
    v.derivation_identity_ok = true;
    return v;
  }

  std::optional<Rat> lambda;
  for (const auto& w : v.derived_basis) {
    auto l = eigenvalue_on(rep.rc_z, w);
    if (!l || (lambda && *lambda != *l)) {
      v.witness = w;
      return v;
    }
    lambda = *l;
  }
  v.lambda = lambda;
  v.c = *lambda + xi;

  // D = Rc + c Id acts by rc_z + c on the center and (-xi/2 + c) on the
  // complement; check D[x,y] = [Dx,y] + [x,Dy] on all basis pairs.
  Rat dv = Rat(-1, 2) * xi + *v.c;
  MatQ dz = rep.rc_z;
  for (std::size_t i = 0; i < dz.rows(); ++i) dz.at(i, i) += *v.c;
  bool ok = true;
  for (std::size_t a = 0; a < alg.m() && ok; ++a)
    for (std::size_t b = a + 1; b < alg.m() && ok; ++b) {
      const VecQ& br = alg.bracket_basis(a, b);
      VecQ lhs = dz * br;
      VecQ rhs = (dv + dv) * br;
      if (!(lhs - rhs).is_zero()) ok = false;
    }
  v.derivation_identity_ok = ok;
  v.is_soliton = ok;
  if (!ok) v.witness = v.derived_basis.front();
  return v;
}

SolitonVerdict extension_soliton_check(const StepTwoAlgebra& alg, const BlockMetric& g,
                                       const PhiForm& phi, std::size_t k,
                                       const MatQ& extra) {
  SolitonVerdict base = nilsoliton_check(alg, g, phi);
  if (!base.is_soliton)
    throw error("extension_soliton_check: base metric is not a nilsoliton");

  auto [ext_alg, ext_g] = central_extension(alg, g, k, extra);
  const std::size_t p = alg.p();
  MatQ ext_phi(p + k, p + k);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) ext_phi.at(i, j) = phi.Phi.at(i, j);

  SolitonVerdict v = nilsoliton_check(ext_alg, ext_g, PhiForm{ext_phi, phi.basis_label});
  if (!v.is_soliton)
    throw error("extension_soliton_check: extension lost the nilsoliton property");
  if (k > 0 && !base.derived_basis.empty()) {
    if (!v.lambda || !base.lambda || *v.lambda != *base.lambda || *v.c != *base.c)
      throw error("extension_soliton_check: extension changed lambda or c");
  }
  return v;
}

}  // namespace nilgeo
