#pragma once

#include "evi/mesh.hpp"
#include "evi/rng.hpp"

namespace evi {

// A randomized small obstacle instance (n <= max_dofs free dofs, mixed-sign
// forcing, random obstacle, random boundary mix) for enumeration sweeps.
struct OracleInstance {
  DiscreteOperators ops;
  Vec psi;
  Vec g;
};

OracleInstance random_oracle_instance(SplitMix64& rng, int max_dofs);

}  // namespace evi
