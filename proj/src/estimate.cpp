#include "mzfisher/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mzfisher/metrology.hpp"
#include "mzfisher/parallel.hpp"
#include "mzfisher/rng.hpp"

namespace mzfisher {

namespace {

const Complex kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;

/// Probability model p(theta) with the two beam-splitter factors
/// precomputed: U_MZ(theta) psi = U_BS(-alpha) diag(e^{i theta n_a}) U_BS(alpha) psi.
class OutcomeModel {
 public:
  OutcomeModel(const FockSpace& space, const ExperimentConfig& config)
      : space_(space),
        exit_bs_(bs_unitary(space, {-config.bs.alpha}).matrix()),
        after_entry_(bs_unitary(space, config.bs).matrix() * config.input_state.amplitudes()) {}

  std::vector<double> probabilities(double theta) const {
    Vector phased(after_entry_.size());
    for (int i = 0; i < phased.size(); ++i)
      phased[i] = std::exp(kI * theta * double(space_.occupation(i).na)) * after_entry_[i];
    const Vector out = exit_bs_ * phased;
    std::vector<double> probs(static_cast<size_t>(out.size()));
    for (int i = 0; i < out.size(); ++i) probs[static_cast<size_t>(i)] = std::norm(out[i]);
    return probs;
  }

 private:
  const FockSpace& space_;
  Matrix exit_bs_;
  Vector after_entry_;
};

std::vector<double> cumulative(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard the final bin against roundoff
  return cdf;
}

int draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

double log_likelihood(const std::vector<std::pair<int, int>>& counts,
                      const std::vector<double>& probs) {
  double sum = 0.0;
  for (const auto& [index, count] : counts)
    sum += count * std::log(std::max(probs[static_cast<size_t>(index)], 1e-300));
  return sum;
}

}  // namespace

ThetaGrid ExperimentConfig::default_grid(double theta_true) {
  return {theta_true - kPi / 2.0, theta_true + kPi / 2.0, 512};
}

void validate_config(const FockSpace& space, const ExperimentConfig& config) {
  require_same_space(space.tag(), config.input_state.space_tag());
  require(config.shots_per_run >= 1, "ExperimentConfig: shots_per_run must be >= 1");
  require(config.runs >= 1, "ExperimentConfig: runs must be >= 1");
  require(config.grid.points >= 3, "ExperimentConfig: grid needs at least 3 points");
  require(config.grid.theta_min < config.grid.theta_max,
          "ExperimentConfig: empty grid interval");
  require(config.theta_true >= config.grid.theta_min &&
              config.theta_true <= config.grid.theta_max,
          "ExperimentConfig: theta_true outside the search grid");
}

std::vector<double> outcome_distribution(const FockSpace& space, const ExperimentConfig& config) {
  validate_config(space, config);
  std::vector<double> probs = OutcomeModel(space, config).probabilities(config.theta_true);
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > tol::spectral)
    throw InvariantError("outcome_distribution: probabilities sum to " + std::to_string(total));
  return probs;
}

std::vector<int> sample(const FockSpace& space, const ExperimentConfig& config) {
  const std::vector<double> cdf = cumulative(outcome_distribution(space, config));
  std::vector<int> outcomes(static_cast<size_t>(config.runs) *
                            static_cast<size_t>(config.shots_per_run));
  parallel_for(config.runs, [&](int run) {
    CounterRng rng = CounterRng::stream(config.seed, static_cast<std::uint64_t>(run));
    const size_t offset = static_cast<size_t>(run) * static_cast<size_t>(config.shots_per_run);
    for (int shot = 0; shot < config.shots_per_run; ++shot)
      outcomes[offset + static_cast<size_t>(shot)] = draw(cdf, rng.next_double());
  });
  return outcomes;
}

MlEstimate ml_estimate(const FockSpace& space, const std::vector<int>& outcomes,
                       const ExperimentConfig& config) {
  require(!outcomes.empty(), "ml_estimate: empty outcome list");
  validate_config(space, config);

  std::vector<int> histogram(static_cast<size_t>(space.dim()), 0);
  for (int outcome : outcomes) {
    require(outcome >= 0 && outcome < space.dim(), "ml_estimate: outcome index out of range");
    ++histogram[static_cast<size_t>(outcome)];
  }
  std::vector<std::pair<int, int>> counts;
  for (int i = 0; i < space.dim(); ++i)
    if (histogram[static_cast<size_t>(i)] > 0) counts.emplace_back(i, histogram[static_cast<size_t>(i)]);

  const OutcomeModel model(space, config);
  const auto objective = [&](double theta) { return log_likelihood(counts, model.probabilities(theta)); };

  const int points = config.grid.points;
  const double step = (config.grid.theta_max - config.grid.theta_min) / (points - 1);
  int best_index = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  double worst_value = std::numeric_limits<double>::infinity();
  for (int g = 0; g < points; ++g) {
    const double value = objective(config.grid.theta_min + g * step);
    if (value > best_value) {
      best_value = value;
      best_index = g;
    }
    worst_value = std::min(worst_value, value);
  }
  if (best_value - worst_value <= 1e-14)
    return {(config.grid.theta_min + config.grid.theta_max) / 2.0, true};

  // golden-section refinement around the winning grid point
  const double inv_phi = 0.6180339887498949;
  double lo = std::max(config.grid.theta_min, config.grid.theta_min + (best_index - 1) * step);
  double hi = std::min(config.grid.theta_max, config.grid.theta_min + (best_index + 1) * step);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  return {(lo + hi) / 2.0, false};
}

EstimationRun run_experiment(const FockSpace& space, const ExperimentConfig& config) {
  validate_config(space, config);
  const Operator generator = extract_generator(space, config.bs);
  const Povm povm = photon_counting_povm(space);

  EstimationRun result;
  result.qfi = qfi_pure(config.input_state, generator);

  // classical information of the photon-counting family at the working point
  const PureState at_working_point =
      evolve(config.input_state, generator, -config.theta_true);  // e^{+i theta J} psi
  const MixedState rho_wp = MixedState::projector(at_working_point);
  result.cfi = cfi(rho_wp, generator, povm, 0.0);

  {  // flag outcomes that are dark at theta_true but have nonzero slope
    const Matrix drho = -kI * (generator.matrix() * rho_wp.matrix() -
                               rho_wp.matrix() * generator.matrix());
    for (const auto& [label, element] : povm.elements()) {
      const double p = (rho_wp.matrix() * element.matrix()).trace().real();
      const double dp = (drho * element.matrix()).trace().real();
      if (p <= 1e-12 && std::abs(dp) > 1e-9) {
        result.degenerate_working_point = true;
        break;
      }
    }
  }

  const double shots = static_cast<double>(config.shots_per_run);
  result.crb_quantum =
      result.qfi > 0.0 ? 1.0 / (shots * result.qfi) : std::numeric_limits<double>::infinity();
  result.crb_classical =
      result.cfi > 0.0 ? 1.0 / (shots * result.cfi) : std::numeric_limits<double>::infinity();
  if (result.crb_classical < result.crb_quantum - 1e-12)
    throw InvariantError("run_experiment: classical bound fell below the quantum bound");

  const std::vector<double> cdf = cumulative(outcome_distribution(space, config));
  result.estimates.assign(static_cast<size_t>(config.runs), 0.0);
  std::vector<int> degenerate_flags(static_cast<size_t>(config.runs), 0);
  parallel_for(config.runs, [&](int run) {
    CounterRng rng = CounterRng::stream(config.seed, static_cast<std::uint64_t>(run));
    std::vector<int> outcomes(static_cast<size_t>(config.shots_per_run));
    for (int shot = 0; shot < config.shots_per_run; ++shot)
      outcomes[static_cast<size_t>(shot)] = draw(cdf, rng.next_double());
    const MlEstimate estimate = ml_estimate(space, outcomes, config);
    result.estimates[static_cast<size_t>(run)] = estimate.theta_hat;
    degenerate_flags[static_cast<size_t>(run)] = estimate.degenerate ? 1 : 0;
  });

  double mse = 0.0, mean = 0.0;
  for (double estimate : result.estimates) {
    const double err = estimate - config.theta_true;
    mse += err * err;
    mean += estimate;
  }
  result.empirical_mse = mse / config.runs;
  result.bias = mean / config.runs - config.theta_true;
  for (int flag : degenerate_flags) result.degenerate_runs += flag;
  return result;
}

}  // namespace mzfisher
