#include "mzfisher/optimal.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mzfisher/parallel.hpp"
#include "mzfisher/rng.hpp"

namespace mzfisher {

namespace {
const Complex kI(0.0, 1.0);

std::string format_g(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}
}  // namespace

OneModeDistribution::OneModeDistribution(std::vector<double> probs, double norm_tol)
    : probs_(std::move(probs)) {
  require(!probs_.empty(), "OneModeDistribution: empty probability list");
  double sum = 0.0;
  for (double p : probs_) {
    require(p >= 0.0, "OneModeDistribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > norm_tol)
    throw InvariantError("OneModeDistribution: probabilities sum to " + std::to_string(sum));
}

double OneModeDistribution::mean() const {
  double m = 0.0;
  for (size_t k = 0; k < probs_.size(); ++k) m += probs_[k] * static_cast<double>(k);
  return m;
}

double OneModeDistribution::variance() const {
  const double m = mean();
  double second = 0.0;
  for (size_t k = 0; k < probs_.size(); ++k)
    second += probs_[k] * static_cast<double>(k) * static_cast<double>(k);
  return second - m * m;
}

SectorDistribution::SectorDistribution(int two_j, std::vector<double> probs, double norm_tol)
    : two_j_(two_j), probs_(std::move(probs)) {
  require(two_j >= 0, "SectorDistribution: negative sector label");
  require(probs_.size() == static_cast<size_t>(two_j + 1),
          "SectorDistribution: need exactly 2j+1 probabilities");
  double sum = 0.0;
  for (double p : probs_) {
    require(p >= 0.0, "SectorDistribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > norm_tol)
    throw InvariantError("SectorDistribution: probabilities sum to " + std::to_string(sum));
}

double fisher_fock_closed(int total, int k) {
  require(total >= 0, "fisher_fock_closed: N must be >= 0");
  require(k >= 0 && k <= total, "fisher_fock_closed: k outside [0, N]");
  return static_cast<double>(total) * (2.0 * k + 1.0) - 2.0 * static_cast<double>(k) * k;
}

double fisher_one_mode_closed(const OneModeDistribution& dist, BeamSplitterParam bs) {
  const double c = std::cos(bs.angle());
  const double s = std::sin(bs.angle());
  return 4.0 * (c * c * c * c * dist.variance() + c * c * s * s * dist.mean());
}

PureState on_state(const FockSpace& space, int max_photons, double nbar, double chi) {
  require(max_photons >= 0 && max_photons <= space.n_max(),
          "on_state: K must satisfy 0 <= K <= n_max");
  require(nbar >= 0.0 && nbar <= static_cast<double>(max_photons),
          "on_state: nbar outside [0, K]");
  Vector amplitudes = Vector::Zero(space.dim());
  if (max_photons == 0) {
    amplitudes[0] = 1.0;
    return PureState(std::move(amplitudes), space.tag());
  }
  const double weight = nbar / static_cast<double>(max_photons);
  amplitudes[space.index_of(0, 0)] = std::sqrt(1.0 - weight);
  amplitudes[space.index_of(max_photons, 0)] = std::exp(kI * chi) * std::sqrt(weight);
  return PureState(std::move(amplitudes), space.tag());
}

PureState noon_state(const FockSpace& space, int total, double chi, ModePicture picture) {
  require(total >= 1, "noon_state: N must be >= 1");
  require(total <= space.n_max(), "noon_state: N exceeds n_max");
  Vector amplitudes = Vector::Zero(space.dim());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  amplitudes[space.index_of(total, 0)] = inv_sqrt2;
  amplitudes[space.index_of(0, total)] = std::exp(kI * chi) * inv_sqrt2;
  PureState in_cd(std::move(amplitudes), space.tag());
  if (picture == ModePicture::Cd) return in_cd;
  return bogoliubov_cd(space, in_cd, BogoliubovDirection::CdToAb);
}

double variance_functional(const SectorDistribution& dist) {
  double first = 0.0, second = 0.0;
  for (int i = 0; i <= dist.two_j(); ++i) {
    const double m = dist.m_of_index(i);
    first += dist.prob_of_m_index(i) * m;
    second += dist.prob_of_m_index(i) * m * m;
  }
  return second - first * first;
}

SectorDistribution symmetrize(const SectorDistribution& dist) {
  const auto& p = dist.probs();
  std::vector<double> sym(p.size());
  for (size_t i = 0; i < p.size(); ++i) sym[i] = (p[i] + p[p.size() - 1 - i]) / 2.0;
  return SectorDistribution(dist.two_j(), std::move(sym));
}

namespace {

/// Deterministic representative of the eigenspace spanned by `columns`:
/// successively project canonical basis vectors and keep the first with a
/// significant component, then make its first nonzero amplitude real positive.
Vector eigenspace_representative(const Matrix& columns) {
  const int dim = static_cast<int>(columns.rows());
  for (int basis_index = 0; basis_index < dim; ++basis_index) {
    Vector projected = columns * columns.adjoint().col(basis_index);
    const double norm = projected.norm();
    if (norm > 1e-6) {
      projected /= norm;
      for (int i = 0; i < dim; ++i) {
        if (std::abs(projected[i]) > 1e-8) {
          projected *= std::conj(projected[i]) / std::abs(projected[i]);
          break;
        }
      }
      return projected;
    }
  }
  throw InvariantError("eigenspace_representative: no basis vector overlaps the eigenspace");
}

double restricted_qfi(const Matrix& generator, const Vector& state) {
  const Vector applied = generator * state;
  const double second = applied.squaredNorm();
  const double first = state.dot(applied).real();
  return 4.0 * (second - first * first);
}

}  // namespace

Optimum optimize_max_qfi(const FockSpace& space, const Operator& generator, int n_photon_cap) {
  require(generator.hermitian(), "optimize_max_qfi: generator must be Hermitian");
  require_same_space(space.tag(), generator.space_tag());
  require(n_photon_cap >= 0 && n_photon_cap <= space.n_max(),
          "optimize_max_qfi: cap outside [0, n_max]");
  if (sector_off_block_norm(space, generator) > tol::construction)
    throw std::invalid_argument(
        "optimize_max_qfi: generator must be sector diagonal for the capped restriction to be "
        "exact");

  const int cap_dim = FockSpace::sector_begin(n_photon_cap + 1);
  const Matrix restricted = generator.matrix().topLeftCorner(cap_dim, cap_dim);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(restricted);
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  const double lambda_min = eigenvalues[0];
  const double lambda_max = eigenvalues[cap_dim - 1];
  const double spread = lambda_max - lambda_min;

  constexpr double degeneracy_tol = 1e-8;
  int min_mult = 0;
  while (min_mult < cap_dim && eigenvalues[min_mult] - lambda_min <= degeneracy_tol) ++min_mult;
  int max_mult = 0;
  while (max_mult < cap_dim && lambda_max - eigenvalues[cap_dim - 1 - max_mult] <= degeneracy_tol)
    ++max_mult;

  Vector optimizer_restricted;
  if (spread <= degeneracy_tol) {
    optimizer_restricted = eigenspace_representative(solver.eigenvectors());
  } else {
    const Vector low = eigenspace_representative(solver.eigenvectors().leftCols(min_mult));
    const Vector high = eigenspace_representative(solver.eigenvectors().rightCols(max_mult));
    optimizer_restricted = (low + high) / std::sqrt(2.0);
  }

  Vector embedded = Vector::Zero(space.dim());
  embedded.head(cap_dim) = optimizer_restricted;

  std::ostringstream note;
  note << "lambda_min=" << format_g(lambda_min) << " multiplicity " << min_mult
       << "; lambda_max=" << format_g(lambda_max) << " multiplicity " << max_mult << "; "
       << static_cast<long>(min_mult) * max_mult
       << " extremal pairs, each equal superposition attains max_qfi";

  Optimum result{spread * spread, PureState(std::move(embedded), space.tag()),
                 {lambda_min, lambda_max}, note.str()};
  return result;
}

double hill_climb_max_qfi(const FockSpace& space, const Operator& generator, int n_photon_cap,
                          int restarts, std::uint64_t seed, int steps_per_restart) {
  require(generator.hermitian(), "hill_climb_max_qfi: generator must be Hermitian");
  require_same_space(space.tag(), generator.space_tag());
  require(n_photon_cap >= 0 && n_photon_cap <= space.n_max(),
          "hill_climb_max_qfi: cap outside [0, n_max]");
  require(restarts >= 1, "hill_climb_max_qfi: restarts must be >= 1");

  const int cap_dim = FockSpace::sector_begin(n_photon_cap + 1);
  const Matrix restricted = generator.matrix().topLeftCorner(cap_dim, cap_dim);

  std::vector<double> best_per_restart(static_cast<size_t>(restarts), 0.0);
  parallel_for(restarts, [&](int restart) {
    CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(restart));
    Vector state(cap_dim);
    for (int i = 0; i < cap_dim; ++i) state[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
    state.normalize();
    double best = restricted_qfi(restricted, state);
    double step_size = 0.6;
    for (int step = 0; step < steps_per_restart; ++step) {
      Vector proposal(cap_dim);
      for (int i = 0; i < cap_dim; ++i)
        proposal[i] = state[i] + step_size * Complex(rng.next_gaussian(), rng.next_gaussian());
      proposal.normalize();
      const double value = restricted_qfi(restricted, proposal);
      if (value > best) {
        best = value;
        state = proposal;
      } else {
        step_size *= 0.97;
      }
    }
    best_per_restart[static_cast<size_t>(restart)] = best;
  });
  return *std::max_element(best_per_restart.begin(), best_per_restart.end());
}

}  // namespace mzfisher
