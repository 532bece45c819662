#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzfisher/fock.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

/// Polynomial in the ladder operators of a single mode. A word lists ladder
/// letters leftmost-first in operator order, so {Create, Annihilate} in mode
/// a realizes a^dag a.
struct LocalObservable {
  BosonMode mode = BosonMode::A;
  std::vector<std::pair<Complex, std::vector<LadderKind>>> polynomial;
  bool hermitized = false;

  int max_degree() const;
};

/// Builds the matrix of the observable from ladder words; hermitized
/// observables are symmetrized to (M + M^dag)/2.
Operator realize(const FockSpace& space, const LocalObservable& obs);

/// <AB> - <A><B> for observables from the two commuting mode algebras.
Complex connected_correlator(const FockSpace& space, const PureState& state,
                             const LocalObservable& a_obs, const LocalObservable& b_obs);
Complex connected_correlator(const FockSpace& space, const MixedState& state,
                             const LocalObservable& a_obs, const LocalObservable& b_obs);

struct WitnessReport {
  double max_correlator = 0.0;
  bool factorizing = true;  // max below 1e-8 on every sampled pair
  int trials = 0;
  int degree_cap = 0;
  std::uint64_t seed = 0;
  std::string worst_pair;
};

/// Samples random Hermitized observable pairs (one per mode algebra, degree
/// <= degree_cap) and reports the largest connected correlator magnitude.
/// One-sided: a nonzero value certifies correlation between the mode
/// algebras; zero on all samples is evidence of factorization, not proof.
/// The state must be supported on sectors N <= n_max - 2 degree_cap so that
/// truncation cannot pollute the sampled expectations.
WitnessReport separability_witness_report(const FockSpace& space, const PureState& state,
                                          int trials, int degree_cap, std::uint64_t seed);

}  // namespace mzfisher
