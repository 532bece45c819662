#include "mzfisher/interferometer.hpp"

#include <cmath>

namespace mzfisher {

namespace {
const Complex kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;
}  // namespace

BeamSplitterParam BeamSplitterParam::balanced() { return {Complex(kPi / 4.0, 0.0)}; }

Operator sector_unitary_exp(const FockSpace& space, const Operator& hermitian, double t) {
  require(hermitian.hermitian(), "sector_unitary_exp: generator must be Hermitian");
  require_same_space(space.tag(), hermitian.space_tag());
  if (sector_off_block_norm(space, hermitian) > tol::construction)
    throw std::invalid_argument("sector_unitary_exp: generator is not sector diagonal");
  const int dim = space.dim();
  Matrix u = Matrix::Zero(dim, dim);
  for (int total = 0; total <= space.n_max(); ++total) {
    const int begin = FockSpace::sector_begin(total);
    const int sdim = FockSpace::sector_dim(total);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        hermitian.matrix().block(begin, begin, sdim, sdim));
    Vector phases(sdim);
    for (int k = 0; k < sdim; ++k) phases[k] = std::exp(kI * t * solver.eigenvalues()[k]);
    u.block(begin, begin, sdim, sdim) =
        solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  }
  return Operator(std::move(u), space.tag(), false);
}

Operator unitary_exp(const Operator& hermitian, double t) {
  require(hermitian.hermitian(), "unitary_exp: generator must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian.matrix());
  const int dim = hermitian.dim();
  Vector phases(dim);
  for (int k = 0; k < dim; ++k) phases[k] = std::exp(kI * t * solver.eigenvalues()[k]);
  Matrix u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  return Operator(std::move(u), hermitian.space_tag(), false);
}

Operator bs_unitary(const FockSpace& space, BeamSplitterParam bs) {
  // exponent X = alpha a^dag b - alpha^* a b^dag = i H with H Hermitian
  const Matrix hop = hop_ab(space).matrix();
  Matrix h = -kI * (bs.alpha * hop - std::conj(bs.alpha) * hop.adjoint());
  return sector_unitary_exp(space, Operator(std::move(h), space.tag(), true), 1.0);
}

Operator phase_unitary(const FockSpace& space, double phi) {
  const int dim = space.dim();
  Matrix u = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) u(i, i) = std::exp(kI * phi * double(space.occupation(i).na));
  return Operator(std::move(u), space.tag(), false);
}

Operator mz_unitary(const FockSpace& space, const MzSetting& setting) {
  const Operator first = bs_unitary(space, setting.bs);
  const Operator second = bs_unitary(space, {-setting.bs.alpha});
  return second * phase_unitary(space, setting.phi) * first;
}

Operator extract_generator(const FockSpace& space, BeamSplitterParam bs) {
  const Matrix u = bs_unitary(space, {-bs.alpha}).matrix();
  auto [na, nb, total] = number_ops(space);
  Matrix j = u * na.matrix() * u.adjoint();
  return Operator(std::move(j), space.tag(), false).hermitized();
}

}  // namespace mzfisher
