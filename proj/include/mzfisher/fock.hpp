#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "mzfisher/types.hpp"

namespace mzfisher {

enum class BosonMode { A, B };
enum class LadderKind { Create, Annihilate };
enum class Axis { X, Y, Z };
enum class BogoliubovDirection { AbToCd, CdToAb };

struct Occupation {
  int na = 0;
  int nb = 0;
  int total() const { return na + nb; }
  friend bool operator==(const Occupation& l, const Occupation& r) {
    return l.na == r.na && l.nb == r.nb;
  }
};

/// Two-mode Fock space truncated at total photon number n_max.
///
/// Basis order is graded lexicographic: sector N = 0, 1, ..., n_max in
/// ascending order, and within sector N the states (N,0), (N-1,1), ..., (0,N).
/// Sector N therefore occupies the contiguous index range
/// [N(N+1)/2, N(N+1)/2 + N].
class FockSpace {
 public:
  explicit FockSpace(int n_max);

  int n_max() const { return n_max_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Occupation>& basis() const { return basis_; }
  const Occupation& occupation(int index) const { return basis_.at(static_cast<size_t>(index)); }

  int index_of(int na, int nb) const;
  static int sector_begin(int total) { return total * (total + 1) / 2; }
  static int sector_dim(int total) { return total + 1; }

  /// Identifier shared by all states/operators living on this space.
  /// Spaces with equal n_max are interchangeable.
  const std::string& tag() const { return tag_; }

 private:
  int n_max_;
  std::vector<Occupation> basis_;
  std::string tag_;
};

/// Dense complex matrix acting on a tagged FockSpace. The hermitian flag is
/// verified against the entries at construction time.
class Operator {
 public:
  Operator(Matrix matrix, std::string space_tag, bool hermitian = false,
           double check_tol = tol::construction);

  const Matrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  const std::string& space_tag() const { return space_tag_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  Operator adjoint() const;
  /// Symmetrizes (M + M^dagger)/2 and sets the flag; throws InvariantError if
  /// the anti-Hermitian residue exceeds check_tol.
  Operator hermitized(double check_tol = tol::construction) const;

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(const Operator& other) const;
  Operator scaled(Complex factor) const;

  static Operator identity(const FockSpace& space);

 private:
  Matrix matrix_;
  std::string space_tag_;
  bool hermitian_;
};

/// Normalized state vector on a tagged FockSpace.
class PureState {
 public:
  PureState(Vector amplitudes, std::string space_tag, double check_tol = tol::construction);

  static PureState normalized(Vector amplitudes, std::string space_tag);

  const Vector& amplitudes() const { return amplitudes_; }
  const std::string& space_tag() const { return space_tag_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
  std::string space_tag_;
};

/// Density matrix on a tagged FockSpace: Hermitian, positive semidefinite
/// (eigenvalues >= -1e-10) and unit trace within 1e-10.
class MixedState {
 public:
  MixedState(Matrix matrix, std::string space_tag, double hermitian_tol = tol::construction,
             double spectral_tol = tol::spectral);

  static MixedState projector(const PureState& psi);
  /// Convex combination sum_i w_i |psi_i><psi_i| (weights renormalized).
  static MixedState mixture(const std::vector<std::pair<double, PureState>>& terms);

  const Matrix& matrix() const { return matrix_; }
  const std::string& space_tag() const { return space_tag_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  std::string space_tag_;
};

void require_same_space(const std::string& lhs, const std::string& rhs);

FockSpace make_space(int n_max);

/// Single-mode ladder operator. Creation out of the top sector
/// (n_a + n_b = n_max) maps to zero; annihilation is exact everywhere.
Operator ladder(const FockSpace& space, BosonMode mode, LadderKind kind);

/// (n_a, n_b, N_total), all diagonal with integer entries.
std::tuple<Operator, Operator, Operator> number_ops(const FockSpace& space);

/// Exact matrix of a^dag b (moves one photon from mode b to mode a). Sector
/// diagonal, hence free of truncation artifacts on every sector.
Operator hop_ab(const FockSpace& space);

/// Schwinger pseudo-spin (Jx, Jy, Jz). Built from exact sector-diagonal
/// matrix elements, not from truncated ladder products.
std::tuple<Operator, Operator, Operator> schwinger(const FockSpace& space);

/// J^2 = Jx^2 + Jy^2 + Jz^2, equal to (N/2)(N/2+1) on every sector.
Operator total_angular_momentum_squared(const FockSpace& space);

/// Orthonormal eigenstates of J_axis restricted to photon-number sector N,
/// ordered by eigenvalue m = -N/2, ..., N/2. Phases are fixed so the first
/// nonvanishing amplitude is real positive.
std::vector<PureState> sector_angular_basis(const FockSpace& space, Axis axis, int total);

/// Eigenvalues attached to sector_angular_basis, i.e. {-N/2, ..., N/2}
/// reproduced by the diagonalization within tolerance.
std::vector<double> sector_angular_eigenvalues(const FockSpace& space, Axis axis, int total);

/// Change of basis between the a/b modes and the balanced superposition
/// modes c = (a+b)/sqrt2, d = (a-b)/sqrt2. The matrix is real orthogonal and
/// involutive, so the transform is its own inverse.
const Matrix& bogoliubov_cd_matrix(const FockSpace& space);

Operator bogoliubov_cd(const FockSpace& space, const Operator& op, BogoliubovDirection direction);
PureState bogoliubov_cd(const FockSpace& space, const PureState& state,
                        BogoliubovDirection direction);
MixedState bogoliubov_cd(const FockSpace& space, const MixedState& state,
                         BogoliubovDirection direction);

Complex expectation(const PureState& state, const Operator& op);
Complex expectation(const MixedState& state, const Operator& op);
/// <op^2> - <op>^2 for Hermitian op (throws otherwise).
double variance(const PureState& state, const Operator& op);

/// Largest sector-to-sector coupling; zero for sector-diagonal operators.
double sector_off_block_norm(const FockSpace& space, const Operator& op);

}  // namespace mzfisher
