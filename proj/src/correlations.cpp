#include "mzfisher/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mzfisher/parallel.hpp"
#include "mzfisher/rng.hpp"

namespace mzfisher {

int LocalObservable::max_degree() const {
  size_t degree = 0;
  for (const auto& [coeff, word] : polynomial) degree = std::max(degree, word.size());
  return static_cast<int>(degree);
}

Operator realize(const FockSpace& space, const LocalObservable& obs) {
  require(!obs.polynomial.empty(), "realize: empty polynomial");
  const int dim = space.dim();
  Matrix result = Matrix::Zero(dim, dim);
  for (const auto& [coeff, word] : obs.polynomial) {
    Matrix term = Matrix::Identity(dim, dim);
    // rightmost letter acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      term = ladder(space, obs.mode, *it).matrix() * term;
    result += coeff * term;
  }
  Operator op(std::move(result), space.tag(), false);
  return obs.hermitized ? op.hermitized() : op;
}

namespace {

template <typename State>
Complex connected_impl(const FockSpace& space, const State& state, const LocalObservable& a_obs,
                       const LocalObservable& b_obs) {
  require(a_obs.mode != b_obs.mode,
          "connected_correlator: observables must come from opposite mode algebras");
  const Operator a_op = realize(space, a_obs);
  const Operator b_op = realize(space, b_obs);
  return expectation(state, a_op * b_op) - expectation(state, a_op) * expectation(state, b_op);
}

int max_occupied_sector(const Vector& amplitudes, const FockSpace& space) {
  int top = 0;
  for (int i = 0; i < amplitudes.size(); ++i)
    if (std::abs(amplitudes[i]) > 1e-12) top = std::max(top, space.occupation(i).total());
  return top;
}

std::vector<LadderKind> random_word(CounterRng& rng, int degree_cap) {
  const int degree = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(degree_cap));
  std::vector<LadderKind> word(static_cast<size_t>(degree));
  for (auto& letter : word)
    letter = (rng.next_u64() & 1u) ? LadderKind::Create : LadderKind::Annihilate;
  return word;
}

LocalObservable random_observable(CounterRng& rng, BosonMode mode, int degree_cap) {
  LocalObservable obs;
  obs.mode = mode;
  obs.hermitized = true;
  const int terms = 1 + static_cast<int>(rng.next_u64() % 3u);
  for (int t = 0; t < terms; ++t)
    obs.polynomial.emplace_back(Complex(rng.next_gaussian(), rng.next_gaussian()),
                                random_word(rng, degree_cap));
  return obs;
}

std::string describe(const LocalObservable& obs) {
  std::ostringstream out;
  out << (obs.mode == BosonMode::A ? "A[" : "B[");
  for (size_t i = 0; i < obs.polynomial.size(); ++i) {
    if (i) out << " + ";
    for (LadderKind letter : obs.polynomial[i].second)
      out << (letter == LadderKind::Create ? '+' : '-');
  }
  out << "]";
  return out.str();
}

}  // namespace

Complex connected_correlator(const FockSpace& space, const PureState& state,
                             const LocalObservable& a_obs, const LocalObservable& b_obs) {
  return connected_impl(space, state, a_obs, b_obs);
}

Complex connected_correlator(const FockSpace& space, const MixedState& state,
                             const LocalObservable& a_obs, const LocalObservable& b_obs) {
  return connected_impl(space, state, a_obs, b_obs);
}

WitnessReport separability_witness_report(const FockSpace& space, const PureState& state,
                                          int trials, int degree_cap, std::uint64_t seed) {
  require(trials >= 1, "separability_witness_report: trials must be >= 1");
  require(degree_cap >= 1, "separability_witness_report: degree_cap must be >= 1");
  require_same_space(space.tag(), state.space_tag());
  const int support = max_occupied_sector(state.amplitudes(), space);
  require(support <= space.n_max() - 2 * degree_cap,
          "separability_witness_report: state support N=" + std::to_string(support) +
              " violates the truncation guard N <= n_max - 2*degree_cap");

  std::vector<double> magnitudes(static_cast<size_t>(trials), 0.0);
  std::vector<std::string> descriptions(static_cast<size_t>(trials));
  parallel_for(trials, [&](int trial) {
    CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(trial));
    const LocalObservable a_obs = random_observable(rng, BosonMode::A, degree_cap);
    const LocalObservable b_obs = random_observable(rng, BosonMode::B, degree_cap);
    magnitudes[static_cast<size_t>(trial)] =
        std::abs(connected_correlator(space, state, a_obs, b_obs));
    descriptions[static_cast<size_t>(trial)] = describe(a_obs) + " x " + describe(b_obs);
  });

  WitnessReport report;
  report.trials = trials;
  report.degree_cap = degree_cap;
  report.seed = seed;
  const auto worst = std::max_element(magnitudes.begin(), magnitudes.end());
  report.max_correlator = *worst;
  report.factorizing = report.max_correlator < 1e-8;
  report.worst_pair = descriptions[static_cast<size_t>(worst - magnitudes.begin())];
  return report;
}

}  // namespace mzfisher
