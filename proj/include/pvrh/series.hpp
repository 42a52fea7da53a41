#pragma once

#include <string>
#include <vector>

#include "pvrh/types.hpp"

namespace pvrh {

// Coefficients (a, b, c) of the P_V right-hand side
//   y'' = (1/(2y) + 1/(y-1)) y'^2 - y'/x + (y-1)^2/x^2 (a y - b/y)
//         + c y/x - y(y+1)/(2(y-1)).
struct PvParams {
  cplx a{}, b{}, c{};

  static PvParams from_theta(const ThetaTriple& th) {
    return {th.a(), th.b(), th.c()};
  }
  // parameters of the equation solved by 1/y
  PvParams reciprocal() const { return {b, a, -c}; }
};

cplx pv_rhs(cplx x, cplx y, cplx yp, const PvParams& p);

// y'' - rhs
inline cplx pv_defect(cplx x, cplx y, cplx yp, cplx ypp, const PvParams& p) {
  return ypp - pv_rhs(x, y, yp, p);
}

// Leading behaviours at infinity.
//   MinusOne     y  = -1 + 4(t0+t1-1)/x + ...
//   Small0Plus   y  =  (t0-t1-tInf)/(2x) + ...      (trunc_0^0)
//   Small0Minus  y  = -(t0-t1-tInf)/(2x) + ...      (trunc_0^1)
//   Inf0         1/y = (t1-t0-tInf)/(2x) + ...      (trunc_inf^0)
//   Inf1         1/y = (t0-t1+tInf)/(2x) + ...      (trunc_inf^1)
enum class SeriesTag { MinusOne, Small0Plus, Small0Minus, Inf0, Inf1 };

const char* series_tag_name(SeriesTag tag);
SeriesTag parse_series_tag(const std::string& name);

struct FormalSeries {
  SeriesTag tag = SeriesTag::MinusOne;
  ThetaTriple theta;
  // coefficients of the native variable (y, or 1/y for the Inf tags) in
  // powers of 1/x, index j <-> x^{-j}
  std::vector<cplx> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  bool reciprocal() const {
    return tag == SeriesTag::Inf0 || tag == SeriesTag::Inf1;
  }
  // P_V parameters of the native variable
  PvParams native_params() const;

  // native variable and its first two x-derivatives
  cplx native(cplx x) const;
  cplx native_d1(cplx x) const;
  cplx native_d2(cplx x) const;

  // y itself (inverts the native variable when needed)
  cplx y(cplx x) const;
  cplx yprime(cplx x) const;
};

// Order-by-order solution of P_V for the given leading behaviour. The
// first two coefficients are the displayed leading terms; the rest come
// from the triangular recursion.
FormalSeries formal_series_pv(SeriesTag tag, const ThetaTriple& theta, int N);

// Pointwise P_V defect of the truncated series, measured in the native
// variable.
cplx series_defect(const FormalSeries& s, cplx x);

}  // namespace pvrh
