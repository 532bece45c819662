#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mzfisher {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
// construction-time checks (hermiticity, normalization)
inline constexpr double construction = 1e-12;
// spectral checks (unitarity, completeness, eigenvalue floors)
inline constexpr double spectral = 1e-10;
// eigenvalues of positive matrices may dip this far below zero
inline constexpr double psd_floor = -1e-10;
}  // namespace tol

/// A numerical invariant of an already-constructed object failed its
/// tolerance. Distinct from std::invalid_argument, which signals a bad
/// argument or precondition.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace mzfisher
