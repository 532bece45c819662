#pragma once

#include <cstdint>
#include <vector>

#include "mzfisher/fock.hpp"
#include "mzfisher/interferometer.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

struct ThetaGrid {
  double theta_min = 0.0;
  double theta_max = 0.0;
  int points = 0;
};

/// Monte Carlo phase-estimation setup: R independent runs of M photon
/// counting shots at the Mach-Zehnder output, maximum-likelihood estimation
/// of the phase on a grid with golden-section refinement.
struct ExperimentConfig {
  PureState input_state;
  BeamSplitterParam bs;
  double theta_true = 0.0;
  int shots_per_run = 1;  // M
  int runs = 1;           // R
  std::uint64_t seed = 0;
  ThetaGrid grid;

  /// Grid of 512 points over [theta_true - pi/2, theta_true + pi/2].
  static ThetaGrid default_grid(double theta_true);
};

void validate_config(const FockSpace& space, const ExperimentConfig& config);

struct MlEstimate {
  double theta_hat = 0.0;
  bool degenerate = false;  // likelihood flat within 1e-14; grid midpoint returned
};

struct EstimationRun {
  std::vector<double> estimates;
  double empirical_mse = 0.0;
  double bias = 0.0;
  double qfi = 0.0;
  double cfi = 0.0;
  double crb_quantum = 0.0;    // 1/(M qfi)
  double crb_classical = 0.0;  // 1/(M cfi)
  int degenerate_runs = 0;
  bool degenerate_working_point = false;  // some outcome has p=0 but dp/dtheta != 0
};

/// Photon counting probabilities |<n_a,n_b| U_MZ(alpha, theta_true) |psi>|^2
/// in basis order.
std::vector<double> outcome_distribution(const FockSpace& space, const ExperimentConfig& config);

/// M*R outcomes (basis indices), run-major. Run r draws from the counter
/// stream (seed, r), so the list is bit-reproducible for a fixed seed and
/// run partitioning, independent of threading.
std::vector<int> sample(const FockSpace& space, const ExperimentConfig& config);

/// Maximum-likelihood phase estimate from outcome basis indices: grid scan
/// followed by golden-section refinement to width 1e-6 around the best grid
/// point.
MlEstimate ml_estimate(const FockSpace& space, const std::vector<int>& outcomes,
                       const ExperimentConfig& config);

/// Full harness: samples R runs of M shots, estimates each run, and attaches
/// the Cramer-Rao bounds computed from the quantum and classical Fisher
/// information of the configured interferometer family.
EstimationRun run_experiment(const FockSpace& space, const ExperimentConfig& config);

}  // namespace mzfisher
