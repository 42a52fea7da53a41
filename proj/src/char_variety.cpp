#include "pvrh/char_variety.hpp"

#include <algorithm>

namespace pvrh {

Ambient Ambient::from_theta(const ThetaTriple& th) {
  return {2.0 * cos_pi(th.theta0), 2.0 * cos_pi(th.theta1),
          exp_pi_i(-th.thetaInf)};
}

Ambient Ambient::flipped() const {
  return {trM0, trM1, 1.0 / expNegPiIThetaInf};
}

CharVarPoint char_coords(const MonodromyPair& pair) {
  CharVarPoint p;
  p.x0 = pair.m0.m11;
  p.x1 = pair.m1.m11;
  p.x2 = (pair.m1 * pair.m0).trace();
  p.ambient = Ambient::from_theta(pair.theta);
  return p;
}

cplx fricke_residual(const CharVarPoint& p) {
  const Ambient& a = p.ambient;
  cplx e = a.expNegPiIThetaInf;
  cplx mu0 = a.trM0 + e * a.trM1;
  cplx mu1 = a.trM1 + e * a.trM0;
  cplx kappa = e * e + e * a.trM0 * a.trM1 + 1.0;
  return p.x0 * p.x1 * p.x2 + p.x0 * p.x0 + p.x1 * p.x1 - mu0 * p.x0 -
         mu1 * p.x1 - e * p.x2 + kappa;
}

double fricke_relative_residual(const CharVarPoint& p) {
  double n = std::max({std::abs(p.x0), std::abs(p.x1), std::abs(p.x2)});
  return std::abs(fricke_residual(p)) / (1.0 + n * n * n);
}

CharVarPoint hat_coords(const CharVarPoint& p) {
  const Ambient& a = p.ambient;
  cplx ep = 1.0 / a.expNegPiIThetaInf;  // e^{pi i thetaInf}
  CharVarPoint q;
  q.x0 = ep * p.x1;
  q.x1 = a.trM1 - ep * (p.x1 * p.x2 + p.x0 - a.trM0);
  q.x2 = p.x2;
  q.ambient = a.flipped();
  return q;
}

CharVarPoint check_coords(const CharVarPoint& p) {
  const Ambient& a = p.ambient;
  cplx ep = 1.0 / a.expNegPiIThetaInf;
  CharVarPoint q;
  q.x0 = a.trM0 - ep * (p.x0 * p.x2 + p.x1 - a.trM1);
  q.x1 = ep * p.x0;
  q.x2 = p.x2;
  q.ambient = a.flipped();
  return q;
}

CharVarPoint monodromy_action(const CharVarPoint& p) {
  const Ambient& a = p.ambient;
  cplx e = a.expNegPiIThetaInf;
  cplx mu0 = a.trM0 + e * a.trM1;
  CharVarPoint q;
  q.x0 = -p.x1 * p.x2 - p.x0 + mu0;
  q.x1 = p.x1 * p.x2 * p.x2 + p.x0 * p.x2 - p.x1 - mu0 * p.x2 + a.trM1 +
         e * a.trM0;
  q.x2 = p.x2;
  q.ambient = a;
  return q;
}

CharVarPoint hat_coords_direct(const MonodromyPair& pair) {
  // [M^]_s1 has the former (2,2) entries on the diagonal (1,1) slot.
  return char_coords(stokes_hat(pair));
}

CharVarPoint check_coords_direct(const MonodromyPair& pair) {
  return char_coords(stokes_check(pair));
}

CharVarPoint hat_relabel(const CharVarPoint& hat, const Ambient& original) {
  cplx e = original.expNegPiIThetaInf;
  return {e * hat.x1, e * hat.x0, hat.x2, original};
}

}  // namespace pvrh
