#include "mzfisher/random_states.hpp"

#include <cmath>

#include "mzfisher/interferometer.hpp"

namespace mzfisher {

namespace {
Vector gaussian_vector(int dim, CounterRng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
  return v;
}
}  // namespace

PureState random_pure_state(const FockSpace& space, CounterRng& rng) {
  return PureState::normalized(gaussian_vector(space.dim(), rng), space.tag());
}

PureState random_pure_state_capped(const FockSpace& space, int cap, CounterRng& rng) {
  require(cap >= 0 && cap <= space.n_max(), "random_pure_state_capped: cap outside [0, n_max]");
  const int cap_dim = FockSpace::sector_begin(cap + 1);
  Vector v = Vector::Zero(space.dim());
  v.head(cap_dim) = gaussian_vector(cap_dim, rng);
  return PureState::normalized(std::move(v), space.tag());
}

MixedState random_mixed_state(const FockSpace& space, CounterRng& rng, int rank,
                              double floor_weight) {
  require(rank >= 1, "random_mixed_state: rank must be >= 1");
  require(floor_weight >= 0.0 && floor_weight < 1.0,
          "random_mixed_state: floor_weight outside [0, 1)");
  const int dim = space.dim();
  Matrix g(dim, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = gaussian_vector(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  if (floor_weight > 0.0)
    rho = (1.0 - floor_weight) * rho +
          floor_weight * Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return MixedState(std::move(rho), space.tag());
}

Operator random_sector_preserving_unitary(const FockSpace& space, CounterRng& rng) {
  const int dim = space.dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (int total = 0; total <= space.n_max(); ++total) {
    const int begin = FockSpace::sector_begin(total);
    const int sdim = FockSpace::sector_dim(total);
    Matrix block(sdim, sdim);
    for (int c = 0; c < sdim; ++c) block.col(c) = gaussian_vector(sdim, rng);
    h.block(begin, begin, sdim, sdim) = (block + block.adjoint()) / 2.0;
  }
  return sector_unitary_exp(space, Operator(std::move(h), space.tag(), true), 1.0);
}

OneModeDistribution random_one_mode_distribution(int max_photons, CounterRng& rng) {
  require(max_photons >= 0, "random_one_mode_distribution: negative max_photons");
  std::vector<double> probs(static_cast<size_t>(max_photons) + 1);
  double sum = 0.0;
  for (double& p : probs) {
    const double g = rng.next_gaussian();
    p = g * g;
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return OneModeDistribution(std::move(probs));
}

SectorDistribution random_sector_distribution(int two_j, CounterRng& rng) {
  std::vector<double> probs(static_cast<size_t>(two_j) + 1);
  double sum = 0.0;
  for (double& p : probs) {
    const double g = rng.next_gaussian();
    p = g * g;
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return SectorDistribution(two_j, std::move(probs));
}

}  // namespace mzfisher
