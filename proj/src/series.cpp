#include "pvrh/series.hpp"

#include <algorithm>

namespace pvrh {

cplx pv_rhs(cplx x, cplx y, cplx yp, const PvParams& p) {
  cplx ym1 = y - 1.0;
  return (1.0 / (2.0 * y) + 1.0 / ym1) * yp * yp - yp / x +
         ym1 * ym1 / (x * x) * (p.a * y - p.b / y) + p.c * y / x -
         y * (y + 1.0) / (2.0 * ym1);
}

const char* series_tag_name(SeriesTag tag) {
  switch (tag) {
    case SeriesTag::MinusOne: return "minus_one";
    case SeriesTag::Small0Plus: return "small0";
    case SeriesTag::Small0Minus: return "small0_mirror";
    case SeriesTag::Inf0: return "inf0";
    case SeriesTag::Inf1: return "inf1";
  }
  return "?";
}

SeriesTag parse_series_tag(const std::string& name) {
  for (SeriesTag t : {SeriesTag::MinusOne, SeriesTag::Small0Plus,
                      SeriesTag::Small0Minus, SeriesTag::Inf0, SeriesTag::Inf1})
    if (name == series_tag_name(t)) return t;
  throw Error(ErrorCode::MalformedInput, "unknown series tag '" + name + "'");
}

namespace {

// Truncated power series in w = 1/x, degree <= D.
using Ser = std::vector<cplx>;

Ser pad(const Ser& a, int D) {
  Ser r(D + 1, 0.0);
  std::copy_n(a.begin(), std::min<std::size_t>(a.size(), D + 1), r.begin());
  return r;
}

Ser mul(const Ser& a, const Ser& b, int D) {
  Ser r(D + 1, 0.0);
  for (int i = 0; i <= D && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= D && j < static_cast<int>(b.size()); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

Ser add(const Ser& a, const Ser& b, cplx sb = 1.0) {
  Ser r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += sb * b[i];
  return r;
}

Ser scale(const Ser& a, cplx s) {
  Ser r = a;
  for (auto& v : r) v *= s;
  return r;
}

// d/dx = -w^2 d/dw
Ser deriv_x(const Ser& a, int D) {
  Ser r(D + 1, 0.0);
  for (int j = 1; j < static_cast<int>(a.size()); ++j)
    if (j + 1 <= D) r[j + 1] -= static_cast<double>(j) * a[j];
  return r;
}

// 2y(y-1) times the P_V defect, multiplied through so that every term is a
// power series in w.
Ser pv_polynomial(const Ser& yin, const PvParams& p, int D) {
  Ser y = pad(yin, D);
  Ser one = pad({1.0}, D);
  Ser w = pad({0.0, 1.0}, D);
  Ser yp = deriv_x(y, D);
  Ser ypp = deriv_x(yp, D);
  Ser ym1 = add(y, one, -1.0);
  Ser yy1 = mul(y, ym1, D);
  Ser y2 = mul(y, y, D);
  Ser ym1c = mul(mul(ym1, ym1, D), ym1, D);

  Ser r = scale(mul(yy1, ypp, D), 2.0);
  r = add(r, mul(add(scale(y, 3.0), one, -1.0), mul(yp, yp, D), D), -1.0);
  r = add(r, scale(mul(w, mul(yy1, yp, D), D), 2.0));
  r = add(r, mul(mul(w, w, D),
                 mul(ym1c, add(scale(y2, p.a), scale(one, p.b), -1.0), D), D),
          -2.0);
  r = add(r, mul(w, mul(y2, ym1, D), D), -2.0 * p.c);
  r = add(r, mul(y2, add(y, one), D));
  return r;
}

}  // namespace

PvParams FormalSeries::native_params() const {
  PvParams p = PvParams::from_theta(theta);
  return reciprocal() ? p.reciprocal() : p;
}

cplx FormalSeries::native(cplx x) const {
  cplx w = 1.0 / x, s = 0.0;
  for (int j = order(); j >= 0; --j) s = s * w + coeffs[j];
  return s;
}

cplx FormalSeries::native_d1(cplx x) const {
  // d/dx x^{-j} = -j x^{-j-1}
  cplx w = 1.0 / x, s = 0.0;
  for (int j = order(); j >= 1; --j) s = s * w - static_cast<double>(j) * coeffs[j];
  return s * w * w;
}

cplx FormalSeries::native_d2(cplx x) const {
  cplx w = 1.0 / x, s = 0.0;
  for (int j = order(); j >= 1; --j)
    s = s * w + static_cast<double>(j * (j + 1)) * coeffs[j];
  return s * w * w * w;
}

cplx FormalSeries::y(cplx x) const {
  cplx v = native(x);
  return reciprocal() ? 1.0 / v : v;
}

cplx FormalSeries::yprime(cplx x) const {
  if (!reciprocal()) return native_d1(x);
  cplx v = native(x);
  return -native_d1(x) / (v * v);
}

FormalSeries formal_series_pv(SeriesTag tag, const ThetaTriple& theta, int N) {
  if (N < 1 || N > 20)
    throw Error(ErrorCode::DomainViolation, "series order must lie in [1, 20]");
  FormalSeries s;
  s.tag = tag;
  s.theta = theta;
  const cplx t0 = theta.theta0, t1 = theta.theta1, ti = theta.thetaInf;
  int shift = 1;
  switch (tag) {
    case SeriesTag::MinusOne:
      s.coeffs = {-1.0, 4.0 * (t0 + t1 - 1.0)};
      shift = 0;
      break;
    case SeriesTag::Small0Plus: s.coeffs = {0.0, (t0 - t1 - ti) / 2.0}; break;
    case SeriesTag::Small0Minus: s.coeffs = {0.0, -(t0 - t1 - ti) / 2.0}; break;
    case SeriesTag::Inf0: s.coeffs = {0.0, (t1 - t0 - ti) / 2.0}; break;
    case SeriesTag::Inf1: s.coeffs = {0.0, (t0 - t1 + ti) / 2.0}; break;
  }
  if (tag != SeriesTag::MinusOne && std::abs(s.coeffs[1]) < 1e-14)
    throw Error(ErrorCode::ResonanceFailure,
                "vanishing leading coefficient for tag " +
                    std::string(series_tag_name(tag)));
  const PvParams p = s.native_params();
  s.coeffs.resize(N + 1, 0.0);
  // The order-(n+shift) coefficient of the defect is affine in c_n once the
  // lower coefficients are fixed: probe it at c_n = 0 and c_n = 1.
  for (int n = 2; n <= N; ++n) {
    const int D = n + shift;
    Ser trial(s.coeffs.begin(), s.coeffs.begin() + n + 1);
    trial[n] = 0.0;
    cplx g0 = pv_polynomial(trial, p, D)[D];
    trial[n] = 1.0;
    cplx g1 = pv_polynomial(trial, p, D)[D];
    cplx slope = g1 - g0;
    if (std::abs(slope) < 1e-12 * (1.0 + std::abs(g0)))
      throw Error(ErrorCode::ResonanceFailure,
                  "recursion degenerates at order " + std::to_string(n));
    s.coeffs[n] = -g0 / slope;
  }
  return s;
}

cplx series_defect(const FormalSeries& s, cplx x) {
  return pv_defect(x, s.native(x), s.native_d1(x), s.native_d2(x),
                   s.native_params());
}

}  // namespace pvrh
