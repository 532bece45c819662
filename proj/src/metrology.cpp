#include "mzfisher/metrology.hpp"

#include <cmath>
#include <limits>

#include "mzfisher/interferometer.hpp"

namespace mzfisher {

namespace {
const Complex kI(0.0, 1.0);

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}
}  // namespace

Povm::Povm(const FockSpace& space, std::vector<std::pair<std::string, Operator>> elements,
           double completeness_tol)
    : elements_(std::move(elements)), space_tag_(space.tag()) {
  require(!elements_.empty(), "Povm: element list is empty");
  Matrix sum = Matrix::Zero(space.dim(), space.dim());
  for (const auto& [label, op] : elements_) {
    require_same_space(space_tag_, op.space_tag());
    if (!op.hermitian())
      throw InvariantError("Povm element '" + label + "' lacks a verified hermitian flag");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < tol::psd_floor)
      throw InvariantError("Povm element '" + label + "' has negative eigenvalue " +
                           std::to_string(min_eig));
    sum += op.matrix();
  }
  const double completeness =
      (sum - Matrix::Identity(space.dim(), space.dim())).cwiseAbs().maxCoeff();
  if (completeness > completeness_tol)
    throw InvariantError("Povm: completeness defect " + std::to_string(completeness));
}

FisherReport make_fisher_report(double qfi, std::optional<double> cfi, std::string generator_tag) {
  if (qfi < 0.0) throw InvariantError("FisherReport: negative qfi");
  if (cfi && *cfi > qfi + 1e-8)
    throw InvariantError("FisherReport: cfi " + std::to_string(*cfi) + " exceeds qfi " +
                         std::to_string(qfi));
  FisherReport report;
  report.qfi = qfi;
  report.cfi = cfi;
  report.bound = qfi > 0.0 ? 1.0 / qfi : std::numeric_limits<double>::infinity();
  report.generator_tag = std::move(generator_tag);
  return report;
}

double qfi_pure(const PureState& state, const Operator& generator) {
  require(generator.hermitian(), "qfi_pure: generator must be Hermitian");
  require_same_space(state.space_tag(), generator.space_tag());
  const double var = variance(state, generator);
  if (var < -1e-10) throw InvariantError("qfi_pure: variance " + std::to_string(var) + " < 0");
  return 4.0 * std::max(var, 0.0);
}

double qfi_sld(const MixedState& rho, const Operator& generator, double kernel_tol) {
  require(kernel_tol > 0.0, "qfi_sld: kernel_tol must be > 0");
  require(generator.hermitian(), "qfi_sld: generator must be Hermitian");
  require_same_space(rho.space_tag(), generator.space_tag());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  Eigen::VectorXd p = solver.eigenvalues().cwiseMax(0.0);
  const Matrix j_eig = solver.eigenvectors().adjoint() * generator.matrix() * solver.eigenvectors();
  const int dim = rho.dim();
  double sum = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const double weight = p[i] + p[k];
      if (weight <= kernel_tol) continue;
      const double diff = p[i] - p[k];
      sum += diff * diff / weight * std::norm(j_eig(i, k));
    }
  return 2.0 * sum;
}

double fidelity(const MixedState& rho, const MixedState& sigma) {
  require_same_space(rho.space_tag(), sigma.space_tag());
  const Matrix root = psd_sqrt(rho.matrix());
  Matrix inner = root * sigma.matrix() * root;
  inner = (inner + inner.adjoint()) / 2.0;  // scrub roundoff asymmetry
  Eigen::SelfAdjointEigenSolver<Matrix> solver(inner, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

MixedState evolve(const MixedState& rho, const Operator& generator, double theta) {
  require(generator.hermitian(), "evolve: generator must be Hermitian");
  require_same_space(rho.space_tag(), generator.space_tag());
  const Matrix u = unitary_exp(generator, -theta).matrix();
  return MixedState(u * rho.matrix() * u.adjoint(), rho.space_tag());
}

PureState evolve(const PureState& psi, const Operator& generator, double theta) {
  require(generator.hermitian(), "evolve: generator must be Hermitian");
  require_same_space(psi.space_tag(), generator.space_tag());
  const Matrix u = unitary_exp(generator, -theta).matrix();
  return PureState(u * psi.amplitudes(), psi.space_tag());
}

double qfi_finite_difference(const MixedState& rho, const Operator& generator, double dtheta) {
  require(dtheta > 0.0 && dtheta <= 1e-2, "qfi_finite_difference: dtheta outside (0, 1e-2]");
  const MixedState minus = evolve(rho, generator, -dtheta / 2.0);
  const MixedState plus = evolve(rho, generator, dtheta / 2.0);
  return 8.0 * (1.0 - fidelity(minus, plus)) / (dtheta * dtheta);
}

namespace {

double cfi_from_probabilities(const std::vector<double>& probs,
                              const std::vector<double>& derivatives, double prob_floor) {
  double sum = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= prob_floor) continue;
    sum += derivatives[i] * derivatives[i] / probs[i];
  }
  return sum;
}

}  // namespace

double cfi(const MixedState& rho, const Operator& generator, const Povm& povm, double theta0,
           double prob_floor) {
  require(generator.hermitian(), "cfi: generator must be Hermitian");
  require_same_space(rho.space_tag(), generator.space_tag());
  require_same_space(rho.space_tag(), povm.space_tag());
  const MixedState at_working_point = theta0 == 0.0 ? rho : evolve(rho, generator, theta0);
  const Matrix drho = -kI * (generator.matrix() * at_working_point.matrix() -
                             at_working_point.matrix() * generator.matrix());
  std::vector<double> probs, derivatives;
  probs.reserve(povm.size());
  derivatives.reserve(povm.size());
  for (const auto& [label, element] : povm.elements()) {
    probs.push_back((at_working_point.matrix() * element.matrix()).trace().real());
    derivatives.push_back((drho * element.matrix()).trace().real());
  }
  return cfi_from_probabilities(probs, derivatives, prob_floor);
}

double cfi_central_difference(const MixedState& rho, const Operator& generator, const Povm& povm,
                              double theta0, double step, double prob_floor) {
  require(step > 0.0, "cfi_central_difference: step must be > 0");
  require_same_space(rho.space_tag(), povm.space_tag());
  const MixedState center = theta0 == 0.0 ? rho : evolve(rho, generator, theta0);
  const MixedState minus = evolve(center, generator, -step);
  const MixedState plus = evolve(center, generator, step);
  std::vector<double> probs, derivatives;
  for (const auto& [label, element] : povm.elements()) {
    probs.push_back((center.matrix() * element.matrix()).trace().real());
    const double p_minus = (minus.matrix() * element.matrix()).trace().real();
    const double p_plus = (plus.matrix() * element.matrix()).trace().real();
    derivatives.push_back((p_plus - p_minus) / (2.0 * step));
  }
  return cfi_from_probabilities(probs, derivatives, prob_floor);
}

Povm photon_counting_povm(const FockSpace& space) {
  std::vector<std::pair<std::string, Operator>> elements;
  elements.reserve(static_cast<size_t>(space.dim()));
  for (int i = 0; i < space.dim(); ++i) {
    const auto& occ = space.occupation(i);
    Matrix projector = Matrix::Zero(space.dim(), space.dim());
    projector(i, i) = 1.0;
    elements.emplace_back("(" + std::to_string(occ.na) + "," + std::to_string(occ.nb) + ")",
                          Operator(std::move(projector), space.tag(), true));
  }
  return Povm(space, std::move(elements));
}

}  // namespace mzfisher
