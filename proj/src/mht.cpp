#include "nilgeo/mht.hpp"

#include <sstream>

#include "nilgeo/random.hpp"

namespace nilgeo {

Rat phi_eval(const PhiForm& phi, const VecQ& z) { return z.dot(phi.Phi * z); }

Rat phi_inner(const PhiForm& phi, const VecQ& z, const VecQ& w) {
  return z.dot(phi.Phi * w);
}

namespace {

// If A = c*Id, returns c; otherwise fills (row, col) with a witness entry:
// either an off-diagonal nonzero or the second of two unequal diagonals.
std::optional<Rat> scalar_or_witness(const MatQ& A, std::size_t& row, std::size_t& col) {
  const std::size_t n = A.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !A.at(i, j).is_zero()) {
        row = i;
        col = j;
        return std::nullopt;
      }
      if (i == j && A.at(i, i) != A.at(0, 0)) {
        row = i;
        col = i;
        return std::nullopt;
      }
    }
  return A.at(0, 0);
}

}  // namespace

MhtCertificate detect_mht(const StepTwoAlgebra& alg, const BlockMetric& g) {
  const std::size_t p = alg.p();
  MhtCertificate cert;

  std::vector<MatQ> J;
  J.reserve(p);
  for (std::size_t k = 0; k < p; ++k) J.push_back(j_map(alg, g, VecQ::unit(p, k)));

  MatQ phi(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      MatQ anti = J[i] * J[j] + J[j] * J[i];
      std::size_t row = 0, col = 0;
      auto c = scalar_or_witness(anti, row, col);
      if (!c) {
        MhtCounterexample ce;
        ce.i = i;
        ce.j = j;
        ce.anticommutator = anti;
        ce.row = row;
        ce.col = col;
        std::ostringstream os;
        os << "j(z_" << i + 1 << ")j(z_" << j + 1 << ") + j(z_" << j + 1 << ")j(z_"
           << i + 1 << ") is not a scalar multiple of the identity; witness entry ("
           << row + 1 << "," << col + 1 << ")";
        ce.description = os.str();
        cert.counterexample = std::move(ce);
        return cert;
      }
      Rat v = -(*c) / Rat(2);
      phi.at(i, j) = v;
      phi.at(j, i) = v;
    }

  cert.is_mht = true;
  cert.phi = PhiForm{std::move(phi), "input"};
  return cert;
}

MhtVerifyReport verify_mht(const StepTwoAlgebra& alg, const BlockMetric& g,
                           const PhiForm& phi, int trials, std::uint64_t seed) {
  MhtVerifyReport rep;
  rep.trials = trials;
  Rng rng(seed);
  const std::size_t p = alg.p(), m = alg.m();

  auto note = [&rep](const Rat& residual, const char* what) {
    Rat a = residual.abs();
    if (a > rep.max_residual) rep.max_residual = a;
    if (!a.is_zero() && rep.all_zero) {
      rep.all_zero = false;
      rep.first_failure = what;
    }
  };

  for (int t = 0; t < trials; ++t) {
    VecQ z = rng.vec(p), z2 = rng.vec(p);
    VecQ e = rng.vec(m), e2 = rng.vec(m);
    MatQ Jz = j_map(alg, g, z);

    // <j(z)e, j(z)e'> = phi(z) <e, e'>
    note(g.inner_v(Jz * e, Jz * e2) - phi_eval(phi, z) * g.inner_v(e, e2), "ghj");

    // j(z)^2 = -phi(z) Id
    MatQ sq = Jz * Jz;
    Rat ph = phi_eval(phi, z);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Rat want = (i == j) ? -ph : Rat(0);
        note(sq.at(i, j) - want, "ghjs");
      }

    // <j(z)e, j(z')e> = <z,z'>_phi <e,e>
    MatQ Jz2 = j_map(alg, g, z2);
    note(g.inner_v(Jz * e, Jz2 * e) - phi_inner(phi, z, z2) * g.inner_v(e, e),
         "jmpol2");
  }
  return rep;
}

PhiClassification classify_phi(const BlockMetric& g, const PhiForm& phi) {
  PhiClassification c;
  c.sig = signature_of(phi.Phi);
  c.degenerate = phi.Phi.det().is_zero();
  c.pseudo_h_type = (phi.Phi == g.Gz);

  // Phi = 4c Gz for a scalar c != 0.
  const std::size_t p = phi.Phi.rows();
  std::optional<Rat> ratio;
  bool proportional = true;
  for (std::size_t i = 0; i < p && proportional; ++i)
    for (std::size_t j = 0; j < p && proportional; ++j) {
      const Rat& a = phi.Phi.at(i, j);
      const Rat& b = g.Gz.at(i, j);
      if (b.is_zero()) {
        if (!a.is_zero()) proportional = false;
      } else {
        Rat r = a / b;
        if (!ratio)
          ratio = r;
        else if (*ratio != r)
          proportional = false;
      }
    }
  if (proportional && ratio && !ratio->is_zero())
    c.generalized_heisenberg_c = *ratio / Rat(4);

  if (c.pseudo_h_type && c.generalized_heisenberg_c &&
      *c.generalized_heisenberg_c == Rat(1, 4)) {
    Signature sz = signature_of(g.Gz), sv = signature_of(g.Gv);
    c.h_type = (sz.negative == 0 && sz.zero == 0 && sv.negative == 0 && sv.zero == 0);
  }
  return c;
}

std::optional<Rat> constant_semicentral_curvature(const StepTwoAlgebra& alg,
                                                  const BlockMetric& g) {
  MhtCertificate cert = detect_mht(alg, g);
  if (!cert.is_mht) return std::nullopt;
  const MatQ& phi = cert.phi->Phi;
  const std::size_t p = alg.p();

  // Phi = 4c Gz, allowing c = 0 (all semi-central planes flat).
  std::optional<Rat> ratio;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const Rat& a = phi.at(i, j);
      const Rat& b = g.Gz.at(i, j);
      if (b.is_zero()) {
        if (!a.is_zero()) return std::nullopt;
      } else {
        Rat r = a / b;
        if (!ratio)
          ratio = r;
        else if (*ratio != r)
          return std::nullopt;
      }
    }
  if (!ratio) return std::nullopt;  // p = 0; not meaningful
  return *ratio / Rat(4);
}

std::optional<MatQ> phi_in_pon_basis(const PhiForm& phi, const PseudoOrthonormalBasis& pon) {
  return pon.transform_bilinear(phi.Phi);
}

}  // namespace nilgeo
