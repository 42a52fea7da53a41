#pragma once

#include "pvrh/mono_core.hpp"

namespace pvrh {

// Ambient data of the Fricke cubic: tr M0, tr M1 and e^{-pi i thetaInf}.
struct Ambient {
  cplx trM0{};
  cplx trM1{};
  cplx expNegPiIThetaInf{};

  static Ambient from_theta(const ThetaTriple& th);
  // thetaInf -> -thetaInf
  Ambient flipped() const;
};

struct CharVarPoint {
  cplx x0{}, x1{}, x2{};
  Ambient ambient;
};

CharVarPoint char_coords(const MonodromyPair& pair);

cplx fricke_residual(const CharVarPoint& p);

// |residual| / (1 + |point|^3)
double fricke_relative_residual(const CharVarPoint& p);

CharVarPoint hat_coords(const CharVarPoint& p);
CharVarPoint check_coords(const CharVarPoint& p);
CharVarPoint monodromy_action(const CharVarPoint& p);

// (m22, m22, tr) of the explicitly conjugated matrices M^hat (or M^check)
// before the sigma1 flip; these are the brute-force targets of hat_coords
// and check_coords.
CharVarPoint hat_coords_direct(const MonodromyPair& pair);
CharVarPoint check_coords_direct(const MonodromyPair& pair);

// Second membership of the hat point: (e^{-pi i tInf} x1^, e^{-pi i tInf} x0^, x2^)
// read back in the original ambient.
CharVarPoint hat_relabel(const CharVarPoint& hat, const Ambient& original);

}  // namespace pvrh
