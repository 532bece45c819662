#include "mzfisher/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mzfisher {

namespace {

double hermitian_residue(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

const Complex kI(0.0, 1.0);

}  // namespace

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
  require(n_max >= 0, "FockSpace: n_max must be >= 0");
  basis_.reserve(static_cast<size_t>((n_max + 1) * (n_max + 2) / 2));
  for (int total = 0; total <= n_max; ++total)
    for (int na = total; na >= 0; --na) basis_.push_back({na, total - na});
  tag_ = "fock2:nmax=" + std::to_string(n_max);
}

int FockSpace::index_of(int na, int nb) const {
  require(na >= 0 && nb >= 0 && na + nb <= n_max_,
          "FockSpace::index_of: occupation (" + std::to_string(na) + "," + std::to_string(nb) +
              ") outside truncation");
  const int total = na + nb;
  return sector_begin(total) + (total - na);
}

Operator::Operator(Matrix matrix, std::string space_tag, bool hermitian, double check_tol)
    : matrix_(std::move(matrix)), space_tag_(std::move(space_tag)), hermitian_(hermitian) {
  require(matrix_.rows() == matrix_.cols(), "Operator: matrix must be square");
  if (hermitian_) {
    const double residue = hermitian_residue(matrix_);
    if (residue > check_tol)
      throw InvariantError("Operator: hermitian flag set but max |M - M^dag| = " +
                           std::to_string(residue) + " exceeds tolerance");
  }
}

Operator Operator::adjoint() const { return Operator(matrix_.adjoint(), space_tag_, hermitian_); }

Operator Operator::hermitized(double check_tol) const {
  const double residue = hermitian_residue(matrix_);
  if (residue > check_tol)
    throw InvariantError("Operator::hermitized: anti-Hermitian residue " +
                         std::to_string(residue) + " exceeds tolerance");
  return Operator((matrix_ + matrix_.adjoint()) / 2.0, space_tag_, true);
}

Operator Operator::operator+(const Operator& other) const {
  require_same_space(space_tag_, other.space_tag_);
  return Operator(matrix_ + other.matrix_, space_tag_, hermitian_ && other.hermitian_);
}

Operator Operator::operator-(const Operator& other) const {
  require_same_space(space_tag_, other.space_tag_);
  return Operator(matrix_ - other.matrix_, space_tag_, hermitian_ && other.hermitian_);
}

Operator Operator::operator*(const Operator& other) const {
  require_same_space(space_tag_, other.space_tag_);
  return Operator(matrix_ * other.matrix_, space_tag_, false);
}

Operator Operator::scaled(Complex factor) const {
  return Operator(matrix_ * factor, space_tag_, hermitian_ && factor.imag() == 0.0);
}

Operator Operator::identity(const FockSpace& space) {
  return Operator(Matrix::Identity(space.dim(), space.dim()), space.tag(), true);
}

PureState::PureState(Vector amplitudes, std::string space_tag, double check_tol)
    : amplitudes_(std::move(amplitudes)), space_tag_(std::move(space_tag)) {
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > check_tol)
    throw InvariantError("PureState: norm " + std::to_string(norm) + " is not 1 within tolerance");
}

PureState PureState::normalized(Vector amplitudes, std::string space_tag) {
  const double norm = amplitudes.norm();
  require(norm > 0.0, "PureState::normalized: zero vector");
  return PureState(amplitudes / norm, std::move(space_tag));
}

MixedState::MixedState(Matrix matrix, std::string space_tag, double hermitian_tol,
                       double spectral_tol)
    : matrix_(std::move(matrix)), space_tag_(std::move(space_tag)) {
  require(matrix_.rows() == matrix_.cols(), "MixedState: matrix must be square");
  const double residue = hermitian_residue(matrix_);
  if (residue > hermitian_tol)
    throw InvariantError("MixedState: not Hermitian, residue " + std::to_string(residue));
  const double trace_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_err > spectral_tol)
    throw InvariantError("MixedState: trace differs from 1 by " + std::to_string(trace_err));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < tol::psd_floor)
    throw InvariantError("MixedState: negative eigenvalue " + std::to_string(min_eig));
}

MixedState MixedState::projector(const PureState& psi) {
  return MixedState(psi.amplitudes() * psi.amplitudes().adjoint(), psi.space_tag());
}

MixedState MixedState::mixture(const std::vector<std::pair<double, PureState>>& terms) {
  require(!terms.empty(), "MixedState::mixture: empty term list");
  double total = 0.0;
  for (const auto& [w, psi] : terms) {
    require(w >= 0.0, "MixedState::mixture: negative weight");
    require_same_space(terms.front().second.space_tag(), psi.space_tag());
    total += w;
  }
  require(total > 0.0, "MixedState::mixture: zero total weight");
  Matrix rho = Matrix::Zero(terms.front().second.dim(), terms.front().second.dim());
  for (const auto& [w, psi] : terms) rho += (w / total) * psi.amplitudes() * psi.amplitudes().adjoint();
  return MixedState(std::move(rho), terms.front().second.space_tag());
}

void require_same_space(const std::string& lhs, const std::string& rhs) {
  if (lhs != rhs)
    throw std::invalid_argument("space tag mismatch: '" + lhs + "' vs '" + rhs + "'");
}

FockSpace make_space(int n_max) { return FockSpace(n_max); }

Operator ladder(const FockSpace& space, BosonMode mode, LadderKind kind) {
  const int dim = space.dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto& occ = space.occupation(col);
    const int n = (mode == BosonMode::A) ? occ.na : occ.nb;
    if (kind == LadderKind::Annihilate) {
      if (n == 0) continue;
      const int row = (mode == BosonMode::A) ? space.index_of(occ.na - 1, occ.nb)
                                             : space.index_of(occ.na, occ.nb - 1);
      m(row, col) = std::sqrt(static_cast<double>(n));
    } else {
      if (occ.total() == space.n_max()) continue;  // truncation: top sector annihilated
      const int row = (mode == BosonMode::A) ? space.index_of(occ.na + 1, occ.nb)
                                             : space.index_of(occ.na, occ.nb + 1);
      m(row, col) = std::sqrt(static_cast<double>(n + 1));
    }
  }
  return Operator(std::move(m), space.tag(), false);
}

std::tuple<Operator, Operator, Operator> number_ops(const FockSpace& space) {
  const int dim = space.dim();
  Matrix na = Matrix::Zero(dim, dim);
  Matrix nb = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    na(i, i) = static_cast<double>(space.occupation(i).na);
    nb(i, i) = static_cast<double>(space.occupation(i).nb);
  }
  Matrix total = na + nb;
  return {Operator(std::move(na), space.tag(), true), Operator(std::move(nb), space.tag(), true),
          Operator(std::move(total), space.tag(), true)};
}

Operator hop_ab(const FockSpace& space) {
  const int dim = space.dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto& occ = space.occupation(col);
    if (occ.nb == 0) continue;
    const int row = space.index_of(occ.na + 1, occ.nb - 1);
    m(row, col) = std::sqrt(static_cast<double>((occ.na + 1) * occ.nb));
  }
  return Operator(std::move(m), space.tag(), false);
}

std::tuple<Operator, Operator, Operator> schwinger(const FockSpace& space) {
  const Matrix& hop = hop_ab(space).matrix();  // a^dag b, exact on all sectors
  Matrix jx = (hop + hop.adjoint()) / 2.0;
  Matrix jy = (hop - hop.adjoint()) / (2.0 * kI);
  const int dim = space.dim();
  Matrix jz = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& occ = space.occupation(i);
    jz(i, i) = 0.5 * static_cast<double>(occ.na - occ.nb);
  }
  return {Operator(std::move(jx), space.tag(), true), Operator(std::move(jy), space.tag(), true),
          Operator(std::move(jz), space.tag(), true)};
}

Operator total_angular_momentum_squared(const FockSpace& space) {
  auto [jx, jy, jz] = schwinger(space);
  Matrix m = jx.matrix() * jx.matrix() + jy.matrix() * jy.matrix() + jz.matrix() * jz.matrix();
  return Operator(std::move(m), space.tag(), true);
}

namespace {

Matrix axis_matrix(const FockSpace& space, Axis axis) {
  auto [jx, jy, jz] = schwinger(space);
  switch (axis) {
    case Axis::X: return jx.matrix();
    case Axis::Y: return jy.matrix();
    default: return jz.matrix();
  }
}

void fix_phase(Vector& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

}  // namespace

std::vector<PureState> sector_angular_basis(const FockSpace& space, Axis axis, int total) {
  require(total >= 0 && total <= space.n_max(), "sector_angular_basis: sector out of range");
  const Matrix full = axis_matrix(space, axis);
  const int begin = FockSpace::sector_begin(total);
  const int sdim = FockSpace::sector_dim(total);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(full.block(begin, begin, sdim, sdim));
  const auto& eigenvalues = solver.eigenvalues();
  for (int k = 0; k < sdim; ++k) {
    const double expected = -0.5 * total + k;
    if (std::abs(eigenvalues[k] - expected) > tol::spectral)
      throw InvariantError("sector_angular_basis: eigenvalue " + std::to_string(eigenvalues[k]) +
                           " deviates from m = " + std::to_string(expected));
  }
  std::vector<PureState> states;
  states.reserve(static_cast<size_t>(sdim));
  for (int k = 0; k < sdim; ++k) {
    Vector embedded = Vector::Zero(space.dim());
    Vector column = solver.eigenvectors().col(k);
    fix_phase(column);
    embedded.segment(begin, sdim) = column;
    states.emplace_back(std::move(embedded), space.tag());
  }
  return states;
}

std::vector<double> sector_angular_eigenvalues(const FockSpace& space, Axis axis, int total) {
  require(total >= 0 && total <= space.n_max(), "sector_angular_eigenvalues: sector out of range");
  const Matrix full = axis_matrix(space, axis);
  const int begin = FockSpace::sector_begin(total);
  const int sdim = FockSpace::sector_dim(total);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(full.block(begin, begin, sdim, sdim),
                                               Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + sdim};
}

const Matrix& bogoliubov_cd_matrix(const FockSpace& space) {
  static std::mutex cache_mutex;
  static std::map<int, Matrix> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(space.n_max());
  if (it != cache.end()) return it->second;

  const int dim = space.dim();
  const Matrix create_a = ladder(space, BosonMode::A, LadderKind::Create).matrix();
  const Matrix create_b = ladder(space, BosonMode::B, LadderKind::Create).matrix();
  const Matrix create_c = (create_a + create_b) / std::sqrt(2.0);
  const Matrix create_d = (create_a - create_b) / std::sqrt(2.0);

  // Columns are |p,q>_cd in a/b coordinates, built by repeated creation from
  // the vacuum. Total photon number only grows along the recursion, so the
  // truncation convention is never exercised.
  Matrix basis = Matrix::Zero(dim, dim);
  basis.col(0) = Vector::Unit(dim, 0);
  for (int total = 1; total <= space.n_max(); ++total) {
    for (int p = total; p >= 0; --p) {
      const int q = total - p;
      const int col = space.index_of(p, q);
      if (q == 0)
        basis.col(col) = create_c * basis.col(space.index_of(p - 1, 0)) / std::sqrt(double(p));
      else
        basis.col(col) = create_d * basis.col(space.index_of(p, q - 1)) / std::sqrt(double(q));
    }
  }
  return cache.emplace(space.n_max(), std::move(basis)).first->second;
}

Operator bogoliubov_cd(const FockSpace& space, const Operator& op, BogoliubovDirection direction) {
  require_same_space(space.tag(), op.space_tag());
  const Matrix& b = bogoliubov_cd_matrix(space);
  Matrix transformed = (direction == BogoliubovDirection::AbToCd)
                           ? Matrix(b.adjoint() * op.matrix() * b)
                           : Matrix(b * op.matrix() * b.adjoint());
  return Operator(std::move(transformed), op.space_tag(), op.hermitian());
}

PureState bogoliubov_cd(const FockSpace& space, const PureState& state,
                        BogoliubovDirection direction) {
  require_same_space(space.tag(), state.space_tag());
  const Matrix& b = bogoliubov_cd_matrix(space);
  Vector transformed = (direction == BogoliubovDirection::AbToCd)
                           ? Vector(b.adjoint() * state.amplitudes())
                           : Vector(b * state.amplitudes());
  return PureState(std::move(transformed), state.space_tag());
}

MixedState bogoliubov_cd(const FockSpace& space, const MixedState& state,
                         BogoliubovDirection direction) {
  require_same_space(space.tag(), state.space_tag());
  const Matrix& b = bogoliubov_cd_matrix(space);
  Matrix transformed = (direction == BogoliubovDirection::AbToCd)
                           ? Matrix(b.adjoint() * state.matrix() * b)
                           : Matrix(b * state.matrix() * b.adjoint());
  return MixedState(std::move(transformed), state.space_tag());
}

Complex expectation(const PureState& state, const Operator& op) {
  require_same_space(state.space_tag(), op.space_tag());
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

Complex expectation(const MixedState& state, const Operator& op) {
  require_same_space(state.space_tag(), op.space_tag());
  return (state.matrix() * op.matrix()).trace();
}

double variance(const PureState& state, const Operator& op) {
  require(op.hermitian(), "variance: operator must carry a verified hermitian flag");
  require_same_space(state.space_tag(), op.space_tag());
  const Vector applied = op.matrix() * state.amplitudes();
  const double second_moment = applied.squaredNorm();
  const double first_moment = state.amplitudes().dot(applied).real();
  return second_moment - first_moment * first_moment;
}

double sector_off_block_norm(const FockSpace& space, const Operator& op) {
  require_same_space(space.tag(), op.space_tag());
  double worst = 0.0;
  const Matrix& m = op.matrix();
  for (int col = 0; col < m.cols(); ++col)
    for (int row = 0; row < m.rows(); ++row)
      if (space.occupation(row).total() != space.occupation(col).total())
        worst = std::max(worst, std::abs(m(row, col)));
  return worst;
}

}  // namespace mzfisher
