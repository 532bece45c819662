#pragma once

#include "mzfisher/fock.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

/// Complex beam-splitter parameter; |alpha| is the transmissivity angle and
/// arg(alpha) the splitter phase (arg(0) := 0).
struct BeamSplitterParam {
  Complex alpha{0.0, 0.0};

  double angle() const { return std::abs(alpha); }
  double phase() const { return alpha == Complex(0.0, 0.0) ? 0.0 : std::arg(alpha); }

  static BeamSplitterParam balanced();  // alpha = pi/4
};

struct MzSetting {
  BeamSplitterParam bs;
  double phi = 0.0;
};

/// exp(alpha a^dag b - alpha^* a b^dag). The exponent is anti-Hermitian and
/// sector diagonal, so the exponential is taken per photon-number sector via
/// a Hermitian spectral decomposition and is unitary on every sector.
Operator bs_unitary(const FockSpace& space, BeamSplitterParam bs);

/// Diagonal phase rotation exp(i phi n_a).
Operator phase_unitary(const FockSpace& space, double phi);

/// U_BS(-alpha) exp(i phi n_a) U_BS(alpha).
Operator mz_unitary(const FockSpace& space, const MzSetting& setting);

/// Effective Mach-Zehnder phase generator J = U_BS(-alpha) n_a U_BS(alpha),
/// defined by conjugation. Hermitian by construction (verified); satisfies
/// mz_unitary(alpha, phi) = exp(i phi J) and, for the balanced splitter,
/// J = N/2 + Jx.
Operator extract_generator(const FockSpace& space, BeamSplitterParam bs);

/// exp(i t H) for a Hermitian, sector-diagonal H, computed per sector.
Operator sector_unitary_exp(const FockSpace& space, const Operator& hermitian, double t);

/// exp(i t H) for a general Hermitian H via full spectral decomposition.
Operator unitary_exp(const Operator& hermitian, double t);

}  // namespace mzfisher
