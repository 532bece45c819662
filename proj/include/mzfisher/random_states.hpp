#pragma once

#include "mzfisher/fock.hpp"
#include "mzfisher/optimal.hpp"
#include "mzfisher/rng.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

/// Seeded generators for randomized property checks. All draws come from the
/// caller's CounterRng, so suites are reproducible and stateless.

PureState random_pure_state(const FockSpace& space, CounterRng& rng);

/// Haar-like random unit vector supported on sectors N <= cap.
PureState random_pure_state_capped(const FockSpace& space, int cap, CounterRng& rng);

/// rho = (1 - floor_weight) G G^dag / tr + floor_weight I / dim, full rank for
/// floor_weight > 0.
MixedState random_mixed_state(const FockSpace& space, CounterRng& rng, int rank,
                              double floor_weight = 0.0);

/// Random unitary commuting with the photon-number grading, built per sector
/// as exp(i H) of a random Hermitian block.
Operator random_sector_preserving_unitary(const FockSpace& space, CounterRng& rng);

OneModeDistribution random_one_mode_distribution(int max_photons, CounterRng& rng);

SectorDistribution random_sector_distribution(int two_j, CounterRng& rng);

}  // namespace mzfisher
