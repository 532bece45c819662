#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzfisher/fock.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

/// Finite POVM: labelled positive operators summing to the identity.
class Povm {
 public:
  Povm(const FockSpace& space, std::vector<std::pair<std::string, Operator>> elements,
       double completeness_tol = tol::spectral);

  const std::vector<std::pair<std::string, Operator>>& elements() const { return elements_; }
  const std::string& space_tag() const { return space_tag_; }
  size_t size() const { return elements_.size(); }

 private:
  std::vector<std::pair<std::string, Operator>> elements_;
  std::string space_tag_;
};

struct FisherReport {
  double qfi = 0.0;
  std::optional<double> cfi;
  double bound = 0.0;  // 1/qfi, per single measurement
  std::string generator_tag;
};

FisherReport make_fisher_report(double qfi, std::optional<double> cfi, std::string generator_tag);

/// 4 (<J^2> - <J>^2) for a pure state; clamped at zero against roundoff.
double qfi_pure(const PureState& state, const Operator& generator);

/// Quantum Fisher information of the unitary family
/// rho_theta = exp(-i theta J) rho exp(i theta J) via the symmetric
/// logarithmic derivative: 2 sum_{p_i+p_j > kernel_tol}
/// (p_i - p_j)^2 / (p_i + p_j) |<i|J|j>|^2.
double qfi_sld(const MixedState& rho, const Operator& generator, double kernel_tol = 1e-10);

/// Uhlmann fidelity tr((rho^1/2 sigma rho^1/2)^1/2) via spectral square
/// roots with eigenvalue clamping at zero.
double fidelity(const MixedState& rho, const MixedState& sigma);

/// Independent finite-difference oracle for qfi_sld:
/// 8 (1 - fidelity(rho_{-dtheta/2}, rho_{+dtheta/2})) / dtheta^2.
double qfi_finite_difference(const MixedState& rho, const Operator& generator, double dtheta);

/// exp(-i theta J) rho exp(i theta J).
MixedState evolve(const MixedState& rho, const Operator& generator, double theta);
PureState evolve(const PureState& psi, const Operator& generator, double theta);

/// Classical Fisher information of the POVM outcome distribution at working
/// point theta0, with the analytic derivative d/dtheta p_xi = tr(-i[J,rho] E_xi).
/// Outcomes with probability below prob_floor are excluded.
double cfi(const MixedState& rho, const Operator& generator, const Povm& povm, double theta0 = 0.0,
           double prob_floor = 1e-12);

/// Central-difference cross-check of cfi (probability derivative via
/// (p(theta0+h) - p(theta0-h)) / 2h).
double cfi_central_difference(const MixedState& rho, const Operator& generator, const Povm& povm,
                              double theta0, double step, double prob_floor = 1e-12);

/// Projective photon counting: one rank-1 projector per Fock basis state.
Povm photon_counting_povm(const FockSpace& space);

}  // namespace mzfisher
