#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzfisher/fock.hpp"
#include "mzfisher/interferometer.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

/// Photon-number distribution p_0..p_K of a one-mode input state.
class OneModeDistribution {
 public:
  explicit OneModeDistribution(std::vector<double> probs, double norm_tol = tol::construction);

  const std::vector<double>& probs() const { return probs_; }
  int max_photons() const { return static_cast<int>(probs_.size()) - 1; }
  double mean() const;
  double variance() const;

 private:
  std::vector<double> probs_;
};

/// Distribution over pseudo-spin projections m = -j..j within one sector.
class SectorDistribution {
 public:
  SectorDistribution(int two_j, std::vector<double> probs, double norm_tol = tol::construction);

  int two_j() const { return two_j_; }
  double j() const { return 0.5 * two_j_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob_of_m_index(int i) const { return probs_[static_cast<size_t>(i)]; }
  double m_of_index(int i) const { return -0.5 * two_j_ + i; }

 private:
  int two_j_;
  std::vector<double> probs_;
};

struct Optimum {
  double max_qfi = 0.0;
  PureState optimizer_state;
  std::pair<double, double> eigen_spread{0.0, 0.0};  // (lambda_min, lambda_max)
  std::string degeneracy_note;
};

/// N(2k+1) - 2k^2: Fisher information of the Fock state |k, N-k> under Jx.
double fisher_fock_closed(int total, int k);

/// 4 [cos^4|a| Var(k) + cos^2|a| sin^2|a| mean(k)] for a one-mode input
/// with photon-number distribution dist through a splitter of parameter a.
double fisher_one_mode_closed(const OneModeDistribution& dist, BeamSplitterParam bs);

/// sqrt(1 - nbar/K) |0,0> + e^{i chi} sqrt(nbar/K) |K,0>.
PureState on_state(const FockSpace& space, int max_photons, double nbar, double chi = 0.0);

enum class ModePicture { Ab, Cd };

/// (|N,0> + e^{i chi} |0,N>)/sqrt2 in the c/d modes; in the ab picture the
/// amplitudes are the Bogoliubov image, a binomial superposition of sector N.
PureState noon_state(const FockSpace& space, int total, double chi = 0.0,
                     ModePicture picture = ModePicture::Ab);

/// sum p_m m^2 - (sum p_m m)^2.
double variance_functional(const SectorDistribution& dist);

/// {(p_m + p_{-m})/2}; never decreases variance_functional.
SectorDistribution symmetrize(const SectorDistribution& dist);

/// Maximum of 4 Var_psi(J) over unit states with at most n_photon_cap total
/// photons, certified by the eigenvalue spread of the restricted generator:
/// max = (lambda_max - lambda_min)^2, attained by the equal superposition of
/// extremal eigenvectors. Requires a sector-diagonal Hermitian J. Degenerate
/// extremal eigenspaces are reported in degeneracy_note; representatives are
/// chosen deterministically (lowest basis index, first amplitude real
/// positive).
Optimum optimize_max_qfi(const FockSpace& space, const Operator& generator, int n_photon_cap);

/// Randomized corroboration of optimize_max_qfi: best 4 Var(J) found by
/// perturbation hill-climbing from random unit states in the capped
/// subspace. Restarts run on derived streams and reduce by max, so the
/// result is independent of scheduling.
double hill_climb_max_qfi(const FockSpace& space, const Operator& generator, int n_photon_cap,
                          int restarts, std::uint64_t seed, int steps_per_restart = 160);

}  // namespace mzfisher
