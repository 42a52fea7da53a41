#include "pvrh/mono_core.hpp"

#include <algorithm>
#include <cmath>

namespace pvrh {

namespace {

bool finite(const Mat2C& m) {
  for (cplx v : {m.m11, m.m12, m.m21, m.m22})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool is_pm_identity(const Mat2C& m, double tol) {
  return max_abs_diff(m, Mat2C::identity()) <= tol ||
         max_abs_diff(m, Mat2C::identity() * cplx(-1.0)) <= tol;
}

Mat2C power(const Mat2C& m, int p) {
  Mat2C base = p >= 0 ? m : m.inverse();
  Mat2C out = Mat2C::identity();
  for (int i = 0; i < std::abs(p); ++i) out = base * out;
  return out;
}

}  // namespace

double ValidationReport::max_residual() const {
  double r = 0.0;
  for (const auto& x : residuals) r = std::max(r, x.value);
  return r;
}

ValidationReport validate_pair(const Mat2C& m0, const Mat2C& m1,
                               const ThetaTriple& theta, double tol) {
  if (!finite(m0) || !finite(m1))
    throw Error(ErrorCode::MalformedInput, "non-finite matrix entry");
  ValidationReport rep;
  rep.residuals = {
      {"det_m0", std::abs(m0.det() - 1.0)},
      {"det_m1", std::abs(m1.det() - 1.0)},
      {"trace_m0", std::abs(m0.trace() - 2.0 * cos_pi(theta.theta0))},
      {"trace_m1", std::abs(m1.trace() - 2.0 * cos_pi(theta.theta1))},
      {"product_11", std::abs(m0.m11 * m1.m11 + m0.m21 * m1.m12 -
                              exp_pi_i(-theta.thetaInf))},
  };
  rep.valid = rep.max_residual() <= tol;
  rep.non_unique_fiber = is_pm_identity(m0, tol) || is_pm_identity(m1, tol);
  return rep;
}

ValidationReport validate_pair(const MonodromyPair& pair) {
  return validate_pair(pair.m0, pair.m1, pair.theta, pair.tol);
}

MonodromyPair gauge_transform(const MonodromyPair& pair, cplx c) {
  MonodromyPair out = pair;
  cplx c2 = c * c;
  out.m0.m12 *= c2;
  out.m0.m21 /= c2;
  out.m1.m12 *= c2;
  out.m1.m21 /= c2;
  return out;
}

double pair_norm(const MonodromyPair& pair) {
  return std::max(max_abs(pair.m0), max_abs(pair.m1));
}

GaugeNormalForm gauge_normalize(const MonodromyPair& pair, double zero_tol) {
  double thresh = zero_tol * (1.0 + pair_norm(pair));
  auto nonzero = [&](cplx v) { return std::abs(v) > thresh && v != 0.0; };

  GaugeNormalForm out{pair, 1.0};
  // c^2 needed to send each candidate entry to 1; m21 scales by c^-2,
  // m12 by c^2.
  cplx c2;
  if (nonzero(pair.m0.m21))
    c2 = pair.m0.m21;
  else if (nonzero(pair.m0.m12))
    c2 = 1.0 / pair.m0.m12;
  else if (nonzero(pair.m1.m21))
    c2 = pair.m1.m21;
  else if (nonzero(pair.m1.m12))
    c2 = 1.0 / pair.m1.m12;
  else
    return out;

  if (c2 == cplx(1.0)) return out;
  cplx c = std::sqrt(c2);
  out.pair = gauge_transform(pair, c);
  out.scale = c;
  // Pin the normalized entry so that a second pass sees exactly 1.
  if (nonzero(pair.m0.m21))
    out.pair.m0.m21 = 1.0;
  else if (nonzero(pair.m0.m12))
    out.pair.m0.m12 = 1.0;
  else if (nonzero(pair.m1.m21))
    out.pair.m1.m21 = 1.0;
  else
    out.pair.m1.m12 = 1.0;
  return out;
}

const char* region_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::R1: return "R1";
    case RegionTag::R2_0: return "R2_0";
    case RegionTag::R2_1: return "R2_1";
    case RegionTag::R2_01: return "R2_01";
    case RegionTag::R3plus: return "R3plus";
    case RegionTag::R3minus: return "R3minus";
    case RegionTag::R3: return "R3";
    case RegionTag::R4plus: return "R4plus";
    case RegionTag::R4minus: return "R4minus";
    case RegionTag::R4: return "R4";
    case RegionTag::R5: return "R5";
  }
  return "?";
}

Region classify_region(const MonodromyPair& pair, double zero_tol) {
  double thresh = zero_tol * (1.0 + pair_norm(pair));
  auto is_zero = [&](cplx v) { return std::abs(v) <= thresh; };
  const Mat2C& a = pair.m0;
  const Mat2C& b = pair.m1;
  const ThetaTriple& th = pair.theta;
  // Sign matching uses a looser tolerance than the zero test.
  double sign_tol = std::max({1e-8, 100.0 * thresh, pair.tol});

  auto pick_sign = [&](cplx value, cplx theta, RegionTag plus,
                       RegionTag minus, RegionTag merged) {
    if (near_integer(theta, 1e-12)) return merged;
    double dp = std::abs(value - exp_pi_i(theta));
    double dm = std::abs(value - exp_pi_i(-theta));
    if (dp <= sign_tol && dp <= dm) return plus;
    if (dm <= sign_tol) return minus;
    throw Error(ErrorCode::AmbiguousSign,
                "diagonal entry matches neither e^{pi i theta} nor "
                "e^{-pi i theta}");
  };

  bool z021 = is_zero(a.m21);
  bool z112 = is_zero(b.m12);
  Region r;
  if (!z021 && !z112) {
    cplx prod = a.m21 * b.m12;
    bool z011 = is_zero(a.m11);
    bool z111 = is_zero(b.m11);
    if (!z011 && !z111) {
      r.tag = RegionTag::R1;
      r.coords = {{"m0_11", a.m11}, {"m1_11", b.m11}, {"m0_21*m1_12", prod}};
    } else if (!z011) {
      r.tag = RegionTag::R2_0;
      r.coords = {{"m0_11", a.m11}};
    } else if (!z111) {
      r.tag = RegionTag::R2_1;
      r.coords = {{"m1_11", b.m11}};
    } else {
      r.tag = RegionTag::R2_01;
      r.coords = {{"m0_21*m1_12", prod}};
    }
  } else if (!z021 && z112) {
    r.tag = pick_sign(b.m11, th.theta1, RegionTag::R3plus,
                      RegionTag::R3minus, RegionTag::R3);
    r.coords = {{"m1_21/m0_21", b.m21 / a.m21}};
  } else if (z021 && !z112) {
    r.tag = pick_sign(a.m11, th.theta0, RegionTag::R4plus,
                      RegionTag::R4minus, RegionTag::R4);
    r.coords = {{"m0_12/m1_12", a.m12 / b.m12}};
  } else {
    r.tag = RegionTag::R5;
    r.coords = {{"m0_12*m1_21", a.m12 * b.m21}};
  }
  return r;
}

Mat2C StokesMatrices::S(int k) const {
  // S_{k+2} = e^{pi i tInf sigma3} S_k e^{-pi i tInf sigma3}
  bool odd = (k % 2 != 0);
  int j = odd ? (k - 1) / 2 : (k - 2) / 2;
  if (odd) {
    cplx v = s1 * exp_pi_i(-2.0 * thetaInf * static_cast<double>(j));
    return {1.0, 0.0, v, 1.0};
  }
  cplx v = s2 * exp_pi_i(2.0 * thetaInf * static_cast<double>(j));
  return {1.0, v, 0.0, 1.0};
}

StokesMatrices stokes_from_pair(const MonodromyPair& pair) {
  const Mat2C& a = pair.m0;
  const Mat2C& b = pair.m1;
  cplx e = exp_pi_i(pair.theta.thetaInf);
  StokesMatrices st;
  st.s2 = -e * (a.m12 * b.m11 + a.m22 * b.m12);
  st.s1 = -e * (a.m11 * b.m21 + a.m21 * b.m22);
  st.thetaInf = pair.theta.thetaInf;
  return st;
}

double stokes_reconstruction_residual(const MonodromyPair& pair,
                                      const StokesMatrices& st) {
  Mat2C lhs = pair.m1 * pair.m0;
  Mat2C rhs = st.S(1).inverse() * exp_sigma3_half_pi_i(-2.0 * st.thetaInf) *
              st.S(2).inverse();
  return max_abs_diff(lhs, rhs);
}

MonodromyPair monodromy_shift(const MonodromyPair& pair, int p) {
  Mat2C g = power(pair.m1 * pair.m0, p);
  Mat2C gi = g.inverse();
  MonodromyPair out = pair;
  out.m0 = g * pair.m0 * gi;
  out.m1 = g * pair.m1 * gi;
  return out;
}

namespace {

// S2^theta = S2 e^{pi i tInf sigma3 / 2} sigma1; hat map M -> (S2^th)^-1 M S2^th
Mat2C s2_theta(const StokesMatrices& st) {
  Mat2C s = st.S(2) * exp_sigma3_half_pi_i(st.thetaInf);
  return {s.m12, s.m11, s.m22, s.m21};  // right multiplication by sigma1
}

// S1^theta = sigma1 e^{pi i tInf sigma3 / 2} S1; check map M -> S1^th M (S1^th)^-1
Mat2C s1_theta(const StokesMatrices& st) {
  Mat2C s = exp_sigma3_half_pi_i(st.thetaInf) * st.S(1);
  return {s.m21, s.m22, s.m11, s.m12};  // left multiplication by sigma1
}

MonodromyPair conj_pair(const MonodromyPair& p, const Mat2C& g,
                        const Mat2C& gi, bool flip_inf) {
  MonodromyPair out = p;
  out.m0 = g * p.m0 * gi;
  out.m1 = g * p.m1 * gi;
  if (flip_inf) out.theta = p.theta.negated_inf();
  return out;
}

}  // namespace

MonodromyPair stokes_hat(const MonodromyPair& pair) {
  Mat2C g = s2_theta(stokes_from_pair(pair));
  return conj_pair(pair, g.inverse(), g, true);
}

MonodromyPair stokes_check(const MonodromyPair& pair) {
  Mat2C g = s1_theta(stokes_from_pair(pair));
  return conj_pair(pair, g, g.inverse(), true);
}

const char* op_name(OpTag op) {
  switch (op) {
    case OpTag::m: return "m";
    case OpTag::minv: return "minv";
    case OpTag::s0: return "s0";
    case OpTag::s1: return "s1";
    case OpTag::shat0: return "shat0";
    case OpTag::shat1: return "shat1";
  }
  return "?";
}

OpTag parse_op(const std::string& name) {
  for (OpTag op : {OpTag::m, OpTag::minv, OpTag::s0, OpTag::s1, OpTag::shat0,
                   OpTag::shat1})
    if (name == op_name(op)) return op;
  throw Error(ErrorCode::MalformedInput, "unknown operator '" + name + "'");
}

FamilyElement family_member(const MonodromyPair& base, Family family, int p) {
  MonodromyPair mp = monodromy_shift(base, p);
  if (family == Family::Plain) return {mp, p, Family::Plain};
  // [M^hat_(p)]_s1 with the Stokes matrices of the base
  Mat2C g = s2_theta(stokes_from_pair(base));
  return {conj_pair(mp, g.inverse(), g, true), p, Family::Hat};
}

FamilyElement apply_operator(OpTag op, const FamilyElement& element,
                             const MonodromyPair& base) {
  bool plain_op = (op == OpTag::m || op == OpTag::minv || op == OpTag::s0 ||
                   op == OpTag::s1);
  if (plain_op != (element.family == Family::Plain))
    throw Error(ErrorCode::WrongFamily,
                std::string("operator ") + op_name(op) +
                    " does not act on this family");
  StokesMatrices st = stokes_from_pair(base);
  Mat2C s2t = s2_theta(st);
  Mat2C s1t = s1_theta(st);
  const MonodromyPair& e = element.pair;
  switch (op) {
    case OpTag::m: {
      Mat2C g = base.m1 * base.m0;
      return {conj_pair(e, g, g.inverse(), false), element.index + 1,
              Family::Plain};
    }
    case OpTag::minv: {
      Mat2C g = base.m1 * base.m0;
      return {conj_pair(e, g.inverse(), g, false), element.index - 1,
              Family::Plain};
    }
    case OpTag::s0:
      return {conj_pair(e, s2t.inverse(), s2t, true), element.index,
              Family::Hat};
    case OpTag::s1:
      return {conj_pair(e, s1t, s1t.inverse(), true), element.index - 1,
              Family::Hat};
    case OpTag::shat0:
      return {conj_pair(e, s2t, s2t.inverse(), true), element.index,
              Family::Plain};
    case OpTag::shat1:
      return {conj_pair(e, s1t.inverse(), s1t, true), element.index + 1,
              Family::Plain};
  }
  return element;
}

Mat2C u_p_matrix(const StokesMatrices& st, int p) {
  Mat2C u = Mat2C::identity();
  if (p >= 1) {
    for (int k = 2; k <= 2 * p + 1; ++k) u = u * st.S(k);
  } else if (p <= -1) {
    for (int k = 1; k >= 2 * p + 2; --k) u = u * st.S(k).inverse();
  }
  return u;
}

MonodromyPair pair_from_stokes(const ThetaTriple& theta, cplx s1, cplx s2,
                               cplx a, int root) {
  StokesMatrices st{s1, s2, theta.thetaInf};
  Mat2C P = st.S(1).inverse() * exp_sigma3_half_pi_i(-2.0 * theta.thetaInf) *
            st.S(2).inverse();
  cplx t0 = 2.0 * cos_pi(theta.theta0);
  cplx t1 = 2.0 * cos_pi(theta.theta1);
  cplx d = t0 - a;
  cplx R = P.m11 * d + P.m22 * a - t1;  // P21 b + P12 c = R
  cplx q = a * d - 1.0;                  // b c = q
  cplx b, c;
  if (std::abs(P.m21) > 0.0) {
    if (std::abs(P.m12) > 0.0) {
      // P12 c^2 - R c + P21 q = 0
      cplx disc = std::sqrt(R * R - 4.0 * P.m12 * P.m21 * q);
      c = (R + (root == 0 ? disc : -disc)) / (2.0 * P.m12);
    } else {
      c = P.m21 * q / R;
    }
    b = (R - P.m12 * c) / P.m21;
  } else if (std::abs(P.m12) > 0.0) {
    c = R / P.m12;
    b = q / c;
  } else {
    c = 1.0;
    b = q;
  }
  MonodromyPair out;
  out.theta = theta;
  out.m0 = {a, b, c, d};
  out.m1 = P * out.m0.inverse();
  return out;
}

}  // namespace pvrh
