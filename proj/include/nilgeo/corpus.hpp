#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilgeo/algebra.hpp"
#include "nilgeo/random.hpp"

namespace nilgeo {

struct NamedExample {
  std::string name;
  std::string description;
  StepTwoAlgebra alg;
  BlockMetric metric;
};

/// Built-in examples: the Heisenberg-based family on H3 x R with metrics of
/// all four signatures (teh0..teh3, plus rational rescalings of their
/// pseudo-orthonormal bases), the Riemannian and Lorentzian Heisenberg
/// groups, a generalized Heisenberg metric, and the 7-dimensional
/// quaternionic Heisenberg group.
const std::vector<NamedExample>& builtin_corpus();

std::optional<NamedExample> find_builtin(const std::string& name);

/// Names of corpus members used by the cross-check suites.
std::vector<std::string> builtin_names();

/// Random 2-step algebra with nondegenerate block metric (no structure
/// beyond validity; usually not modified H-type).
NamedExample random_general_example(Rng& rng, std::size_t max_p = 3,
                                    std::size_t max_m = 6, long height = 5);

/// Random modified H-type instance: a corpus seed transformed by a random
/// rational change of basis, possibly centrally extended. The defining
/// property is basis-invariant, so the result is modified H-type by
/// construction while looking nothing like the seed.
NamedExample random_mht_example(Rng& rng, long height = 5);

}  // namespace nilgeo
