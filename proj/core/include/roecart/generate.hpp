#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roecart/operators.hpp"
#include "roecart/space.hpp"

namespace roecart {

// Recipe for a test space.  "grid" reads size as the side length; "union"
// glues the parts at constant cross-component distance gap.
struct SpaceSpec {
  std::string kind;  // interval | cycle | grid | squares | union
  int size = 0;
  std::vector<SpaceSpec> parts;
  double gap = 0.0;
};

// Recipe for a planted near-permutation unitary: a permutation within the
// displacement bound, a product of small plane rotations, diagonal phases.
struct UnitaryPlan {
  double displacement = 0.0;     // max d(x, sigma(x)) for the planted sigma
  double rotation_radius = 0.0;  // rotations act on index pairs within this
  double rotation_angle = 0.0;   // angles drawn uniformly from [-a, a]
  bool randomize_phases = false;
};

// One experiment: shared seed plus per-command knobs.  Commands read only
// the fields they use.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  SpaceSpec space;
  UnitaryPlan unitary;
  std::vector<double> delta_grid;  // empty means default_delta_grid()
  int random_subsets = 8;          // band-profile family extension
  int blocks = 4;                  // cartan verification size
  std::vector<double> radii;       // reconstruction generator radii
  double radius = 1.0;             // decomposition entourage radius
  double onl_eps = 0.1;            // localisation slack
};

// All randomness flows through this generator; the identifier is recorded in
// reports so runs can be reproduced elsewhere.
inline constexpr const char* kRngId = "mt19937_64";

SpacePtr generate_space(const SpaceSpec& spec);

// Permutation with d(x, sigma(x)) <= displacement for every x: seeded greedy
// assignment over a shuffled vertex order, completed by augmenting paths.
// Throws when the displacement graph admits no permutation at all.
std::vector<int> generate_permutation(const SpacePtr& space, double displacement,
                                      std::uint64_t seed);

// v = P_sigma * (plane rotations in lex pair order) * diag(phases), unitary
// by construction.  The permutation equals generate_permutation at the same
// seed, so planted instances can be compared against their recovery.
Operator generate_unitary(const UnitaryPlan& plan, const SpacePtr& space, std::uint64_t seed);

}  // namespace roecart
