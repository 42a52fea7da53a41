#include "pvrh/asymptotics.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace pvrh {

namespace {

const cplx kTwoPiI = 2.0 * kPi * kI;

bool is_zero(cplx v, double scale = 1.0) {
  return std::abs(v) <= 1e-13 * scale;
}

// Gamma in a denominator; a pole there is reported rather than silently
// turned into a zero entry.
cplx inv_gamma_strict(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    throw Error(ErrorCode::PoleOfGamma,
                "Gamma pole in a monodromy entry at z = " +
                    std::to_string(z.real()));
  return rgamma(z);
}

Mat2C completed_upper_known_21(cplx m11, cplx m21, cplx trace) {
  // m12 from det = 1
  cplx m22 = trace - m11;
  if (is_zero(m21))
    throw Error(ErrorCode::UnderdeterminedCompletion,
                "m21 vanishes; m12 is not fixed by the determinant");
  return {m11, (m11 * m22 - 1.0) / m21, m21, m22};
}

Mat2C completed_known_12(cplx m11, cplx m12, cplx trace) {
  cplx m22 = trace - m11;
  if (is_zero(m12))
    throw Error(ErrorCode::UnderdeterminedCompletion,
                "m12 vanishes; m21 is not fixed by the determinant");
  return {m11, m12, (m11 * m22 - 1.0) / m12, m22};
}

std::string theta_violations(Variant v, const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  std::string msg;
  auto add = [&](bool bad, const char* what) {
    if (bad) msg += std::string(msg.empty() ? "" : "; ") + what;
  };
  switch (v) {
    case Variant::Trunc00:
      add(in_naturals((t0 - t1 - ti) / 2.0), "t0-t1-tInf in 2N");
      add(in_nonpositive((t0 + t1 + ti) / 2.0), "t0+t1+tInf in -2N u {0}");
      add(in_naturals(t1), "t1 in N");
      break;
    case Variant::Trunc01:
      add(in_naturals(-(t0 - t1 - ti) / 2.0), "t0-t1-tInf in -2N");
      add(in_nonpositive((t0 + t1 - ti) / 2.0), "t0+t1-tInf in -2N u {0}");
      add(in_naturals(t0), "t0 in N");
      break;
    case Variant::TruncInf0:
      add(in_naturals((t0 + t1 - ti) / 2.0), "t0+t1-tInf in 2N");
      add(in_nonpositive((t0 - t1 + ti) / 2.0), "t0-t1+tInf in -2N u {0}");
      add(in_nonpositive(t1), "t1 in -N u {0}");
      break;
    case Variant::TruncInf1:
      add(in_naturals((t0 + t1 + ti) / 2.0), "t0+t1+tInf in 2N");
      add(in_nonnegative((t0 - t1 + ti) / 2.0), "t0-t1+tInf in 2N u {0}");
      add(in_nonpositive(t0), "t0 in -N u {0}");
      break;
    default:
      break;
  }
  return msg;
}

// Leading coefficient L and exponent mu of the exponential families.
void trunc_shape(Variant v, const ThetaTriple& th, cplx* L, cplx* mu) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  switch (v) {
    case Variant::Trunc00:
      *L = (t0 - t1 - ti) / 2.0;
      *mu = 2.0 * t1 + ti - 1.0;
      return;
    case Variant::Trunc01:
      *L = -(t0 - t1 - ti) / 2.0;
      *mu = 2.0 * t0 - ti - 1.0;
      return;
    case Variant::TruncInf0:
      *L = (t1 - t0 - ti) / 2.0;
      *mu = 1.0 - 2.0 * t1 + ti;
      return;
    case Variant::TruncInf1:
      *L = (t0 - t1 + ti) / 2.0;
      *mu = 1.0 - 2.0 * t0 - ti;
      return;
    default:
      throw Error(ErrorCode::WrongFamily, "not an exponential family");
  }
}

bool reciprocal_shape(Variant v) {
  return v == Variant::TruncInf0 || v == Variant::TruncInf1;
}

// amp of the native-variable correction for a given c0
cplx correction_amp(Variant v, cplx L, cplx c0) {
  return reciprocal_shape(v) ? c0 : L * c0;
}

Sector trunc_sector(Variant v, bool doubly) {
  const bool upper = (v == Variant::Trunc00 || v == Variant::TruncInf0);
  if (doubly)
    return upper ? Sector{-kPi / 2, 3 * kPi / 2, false, false}
                 : Sector{-3 * kPi / 2, kPi / 2, false, false};
  return upper ? Sector{-kPi / 2, kPi / 2, false, true}
               : Sector{-kPi / 2, kPi / 2, true, false};
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Elliptic: return "Elliptic";
    case Variant::Trig: return "Trig";
    case Variant::TruncAK: return "TruncAK";
    case Variant::DoublyTruncAK: return "DoublyTruncAK";
    case Variant::Trunc00: return "Trunc00";
    case Variant::Trunc01: return "Trunc01";
    case Variant::TruncInf0: return "TruncInf0";
    case Variant::TruncInf1: return "TruncInf1";
    case Variant::NonGeneric: return "NonGeneric";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v :
       {Variant::Elliptic, Variant::Trig, Variant::TruncAK, Variant::DoublyTruncAK,
        Variant::Trunc00, Variant::Trunc01, Variant::TruncInf0,
        Variant::TruncInf1, Variant::NonGeneric})
    if (name == variant_name(v)) return v;
  throw Error(ErrorCode::MalformedInput, "unknown variant '" + name + "'");
}

bool Sector::contains(double arg, double tol) const {
  bool lo = min_closed ? arg >= arg_min - tol : arg > arg_min - tol;
  bool hi = max_closed ? arg <= arg_max + tol : arg < arg_max + tol;
  return lo && hi;
}

cplx AsymptoticDescriptor::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw Error(ErrorCode::MalformedInput,
                std::string("descriptor ") + variant_name(variant) +
                    " lacks parameter '" + name + "'");
  return it->second;
}

SeriesTag trunc_series_tag(const AsymptoticDescriptor& d) {
  Variant v = d.variant;
  if (v == Variant::NonGeneric) {
    static constexpr std::array<Variant, 4> base = {
        Variant::Trunc00, Variant::Trunc01, Variant::TruncInf0,
        Variant::TruncInf1};
    if (d.ng_case < 1 || d.ng_case > 4)
      throw Error(ErrorCode::MalformedInput, "non-generic case must be 1..4");
    v = base[d.ng_case - 1];
  }
  switch (v) {
    case Variant::TruncAK:
    case Variant::DoublyTruncAK: return SeriesTag::MinusOne;
    case Variant::Trunc00: return SeriesTag::Small0Plus;
    case Variant::Trunc01: return SeriesTag::Small0Minus;
    case Variant::TruncInf0: return SeriesTag::Inf0;
    case Variant::TruncInf1: return SeriesTag::Inf1;
    default:
      throw Error(ErrorCode::WrongFamily,
                  std::string("no power series for variant ") + variant_name(v));
  }
}

// ---------------------------------------------------------------------------

Beta0Vhat beta0_vhat(const MonodromyPair& pair) {
  const Mat2C &m0 = pair.m0, &m1 = pair.m1;
  const double scale = 1.0 + pair_norm(pair);
  cplx ep = exp_pi_i(pair.theta.thetaInf);
  Beta0Vhat r;
  r.log_arg_product = 1.0 - m0.m11 * m1.m11 * ep;
  r.log_arg_offdiag = m0.m21 * m1.m12 * ep;
  if (is_zero(r.log_arg_offdiag, scale))
    throw Error(ErrorCode::DomainViolation,
                "m0_21 m1_12 vanishes; beta0 is undefined");
  r.beta0 = std::log(r.log_arg_product) / kTwoPiI;
  if (std::abs(r.beta0) < 1e-12) {
    r.degenerate = true;
    r.vhat = 0.0;
    return r;
  }
  if (is_zero(m0.m11, scale))
    throw Error(ErrorCode::DomainViolation, "m0_11 vanishes; vhat is undefined");
  r.vhat = -std::sqrt(2.0 * kPi) * rgamma(r.beta0) / m0.m11 *
           std::exp(r.beta0 * std::log(2.0) -
                    0.5 * kPi * kI * pair.theta.thetaInf +
                    0.5 * kPi * kI * r.beta0);
  return r;
}

TrigForm parse_trig_form(const std::string& name) {
  static const std::map<std::string, TrigForm> names = {
      {"auto", TrigForm::Auto},           {"case1", TrigForm::Case1},
      {"case1_plus", TrigForm::Case1Plus}, {"case1_minus", TrigForm::Case1Minus},
      {"case2", TrigForm::Case2},         {"case2_low", TrigForm::Case2Low},
      {"case2_high", TrigForm::Case2High}};
  auto it = names.find(name);
  if (it == names.end())
    throw Error(ErrorCode::MalformedInput, "unknown trig form '" + name + "'");
  return it->second;
}

cplx eval_trig(cplx x, const AsymptoticDescriptor& d, TrigForm form) {
  if (d.variant != Variant::Trig)
    throw Error(ErrorCode::WrongFamily, "eval_trig needs a Trig descriptor");
  const cplx b = d.param("beta0");
  const cplx v = d.param("vhat");
  const double rb = b.real();
  if (form == TrigForm::Auto) {
    if (std::abs(rb) < 0.25)
      form = TrigForm::Case1;
    else if (rb > 0.25 && rb < 0.75)
      form = TrigForm::Case2;
    else if (rb == 0.25)
      form = TrigForm::Case2Low;
    else if (rb > -0.5 && rb < -1.0 / 6.0)
      form = TrigForm::Case1Minus;
    else
      throw Error(ErrorCode::CaseGap,
                  "Re beta0 = " + std::to_string(rb) + " lies in no band");
  }
  auto band = [&](bool ok) {
    if (!ok)
      throw Error(ErrorCode::CaseGap, "Re beta0 = " + std::to_string(rb) +
                                          " is outside the requested band");
  };
  const cplx lx = std::log(x);
  const cplx e_pi4 = std::exp(kI * kPi / 4.0);
  const double s2 = std::sqrt(2.0);
  switch (form) {
    case TrigForm::Case1: {
      band(std::abs(rb) < 0.25);
      cplx sb = std::sqrt(b);
      cplx arg = x / 2.0 + kI * b * lx + kI * std::log(v / sb);
      return -1.0 + 4.0 * s2 / e_pi4 * sb * std::pow(x, -0.5) * std::sin(arg);
    }
    case TrigForm::Case1Plus:
      band(rb > 1.0 / 6.0 && rb < 0.5);
      return -1.0 + 2.0 * s2 * e_pi4 * v * std::exp((b - 0.5) * lx) *
                        std::exp(-kI * x / 2.0);
    case TrigForm::Case2Low:
      band(rb >= 0.25 && rb < 0.5);
      return -1.0 + 2.0 * s2 * e_pi4 * v * std::exp((b - 0.5) * lx) *
                        std::exp(-kI * x / 2.0);
    case TrigForm::Case1Minus:
      band(rb > -0.5 && rb < -1.0 / 6.0);
      return -1.0 - 2.0 * s2 * e_pi4 / v * b * std::exp((-b - 0.5) * lx) *
                        std::exp(kI * x / 2.0);
    case TrigForm::Case2: {
      band(rb > 0.25 && rb < 0.75);
      cplx xt = x / 4.0 + (1.0 - 2.0 * b) / (4.0 * kI) * lx -
                std::log(-e_pi4 * v / s2) / (2.0 * kI);
      cplx sn = std::sin(xt);
      if (std::abs(sn) < 1e-8)
        throw Error(ErrorCode::NearPole, "trigonometric form near a pole");
      cplx cs = std::cos(xt);
      return cs * cs / (sn * sn);
    }
    case TrigForm::Case2High:
      band(rb > 0.5 && rb <= 0.75);
      return -1.0 + 4.0 * s2 / e_pi4 / v * std::exp((0.5 - b) * lx) *
                        std::exp(kI * x / 2.0);
    case TrigForm::Auto:
      break;
  }
  return {};
}

// ---------------------------------------------------------------------------

AsymptoticDescriptor trunc_ak_descriptor(const MonodromyPair& pair) {
  const double scale = 1.0 + pair_norm(pair);
  const ThetaTriple& th = pair.theta;
  bool z0 = is_zero(pair.m0.m11, scale), z1 = is_zero(pair.m1.m11, scale);
  AsymptoticDescriptor d;
  d.theta = th;
  if (z0 && z1) {
    d.variant = Variant::DoublyTruncAK;
    d.sector = {-kPi, kPi, false, false};
  } else if (z0) {
    // m1_11 = i sqrt(2 pi) vhat e^{-pi i tInf/2}
    d.variant = Variant::TruncAK;
    d.params["amp"] =
        pair.m1.m11 * exp_pi_i(th.thetaInf / 2.0) / (kI * std::sqrt(2.0 * kPi));
    d.params["direction"] = -1.0;
    d.sector = {-kPi, 0.0, false, true};
  } else if (z1) {
    // m0_11 = sqrt(2 pi) what e^{-pi i tInf/2}
    d.variant = Variant::TruncAK;
    d.params["amp"] =
        pair.m0.m11 * exp_pi_i(th.thetaInf / 2.0) / std::sqrt(2.0 * kPi);
    d.params["direction"] = 1.0;
    d.sector = {0.0, kPi, true, false};
  } else {
    throw Error(ErrorCode::WrongFamily,
                "truncated solutions at -1 need m0_11 = 0 or m1_11 = 0");
  }
  return d;
}

std::pair<MonodromyPair, AsymptoticDescriptor> build_trunc_family(
    Variant variant, cplx c0, const ThetaTriple& theta, cplx utilde) {
  std::string bad = theta_violations(variant, theta);
  if (!bad.empty())
    throw Error(ErrorCode::ThetaViolation,
                std::string(variant_name(variant)) + ": " + bad);
  if (is_zero(utilde))
    throw Error(ErrorCode::MalformedInput, "gauge parameter must be nonzero");
  const cplx t0 = theta.theta0, t1 = theta.theta1, ti = theta.thetaInf;
  const cplx tr0 = 2.0 * cos_pi(t0), tr1 = 2.0 * cos_pi(t1);
  const cplx u = utilde;
  MonodromyPair p;
  p.theta = theta;
  switch (variant) {
    case Variant::Trunc00: {
      cplx m021 = kTwoPiI * exp_pi_i(-ti) * rgamma(1.0 - (t0 - t1 - ti) / 2.0) *
                  rgamma((t0 + t1 + ti) / 2.0) / u;
      p.m0 = completed_upper_known_21(exp_pi_i(-(t1 + ti)), m021, tr0);
      p.m1 = {exp_pi_i(t1), 0.0,
              kTwoPiI * exp_pi_i(t1) * rgamma(1.0 - t1) / u * c0, exp_pi_i(-t1)};
      break;
    }
    case Variant::Trunc01: {
      cplx m112 = kTwoPiI * u * rgamma(1.0 + (t0 - t1 - ti) / 2.0) *
                  rgamma((t0 + t1 - ti) / 2.0);
      p.m0 = {exp_pi_i(-t0), kTwoPiI * exp_pi_i(ti - t0) * u * rgamma(1.0 - t0) * c0,
              0.0, exp_pi_i(t0)};
      p.m1 = completed_known_12(exp_pi_i(t0 - ti), m112, tr1);
      break;
    }
    case Variant::TruncInf0: {
      cplx m021 = kTwoPiI * exp_pi_i(-ti) * rgamma(1.0 - (t0 + t1 - ti) / 2.0) *
                  rgamma((t0 - t1 + ti) / 2.0) / u;
      p.m0 = completed_upper_known_21(exp_pi_i(t1 - ti), m021, tr0);
      p.m1 = {exp_pi_i(-t1), 0.0,
              kTwoPiI * exp_pi_i(-t1) * rgamma(t1) / u * c0, exp_pi_i(t1)};
      break;
    }
    case Variant::TruncInf1: {
      cplx m112 = kTwoPiI * u * rgamma(1.0 - (t0 + t1 + ti) / 2.0) *
                  rgamma(-(t0 - t1 + ti) / 2.0);
      p.m0 = {exp_pi_i(t0), kTwoPiI * exp_pi_i(ti + t0) * u * rgamma(t0) * c0, 0.0,
              exp_pi_i(-t0)};
      p.m1 = completed_known_12(exp_pi_i(-(t0 + ti)), m112, tr1);
      break;
    }
    default:
      throw Error(ErrorCode::WrongFamily, "build_trunc_family: not a Trunc variant");
  }
  AsymptoticDescriptor d;
  d.variant = variant;
  d.theta = theta;
  cplx L, mu;
  trunc_shape(variant, theta, &L, &mu);
  d.params = {{"c0", c0},
              {"mu", mu},
              {"L", L},
              {"amp", correction_amp(variant, L, c0)},
              {"exp_sign", -1.0}};
  d.sector = trunc_sector(variant, c0 == 0.0);
  return {p, d};
}

cplx trunc_c0_from_pair(Variant variant, const MonodromyPair& pair) {
  const ThetaTriple& th = pair.theta;
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  const Mat2C &m0 = pair.m0, &m1 = pair.m1;
  auto ratio = [](cplx num, cplx den) {
    if (is_zero(den))
      throw Error(ErrorCode::DomainViolation, "c0 ratio has a vanishing denominator");
    return num / den;
  };
  switch (variant) {
    case Variant::Trunc00:
      return exp_pi_i(-(t1 + ti)) * complex_gamma(1.0 - t1) *
             rgamma(1.0 - (t0 - t1 - ti) / 2.0) * rgamma((t0 + t1 + ti) / 2.0) *
             ratio(m1.m21, m0.m21);
    case Variant::Trunc01:
      return exp_pi_i(t0 - ti) * complex_gamma(1.0 - t0) *
             rgamma(1.0 + (t0 - t1 - ti) / 2.0) * rgamma((t0 + t1 - ti) / 2.0) *
             ratio(m0.m12, m1.m12);
    case Variant::TruncInf0:
      return exp_pi_i(t1 - ti) * complex_gamma(t1) *
             rgamma(1.0 - (t0 + t1 - ti) / 2.0) * rgamma((t0 - t1 + ti) / 2.0) *
             ratio(m1.m21, m0.m21);
    case Variant::TruncInf1:
      return exp_pi_i(-(ti + t0)) * complex_gamma(t0) *
             rgamma(1.0 - (t0 + t1 + ti) / 2.0) * rgamma(-(t0 - t1 + ti) / 2.0) *
             ratio(m0.m12, m1.m12);
    default:
      throw Error(ErrorCode::WrongFamily, "trunc_c0_from_pair: not a Trunc variant");
  }
}

namespace {

// Resonance relation of each non-generic case and branch, as the
// combination that must equal the stated multiple of nu.
struct NgRule {
  cplx combo;     // theta combination
  cplx target;    // required value
};

NgRule ng_rule(int ng_case, int branch, int nu, const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  const double n = nu;
  switch (ng_case * 10 + branch) {
    case 11: return {t0 - t1 - ti, 2.0 * n};
    case 12: return {t0 + t1 + ti, -2.0 * (n - 1.0)};
    case 21: return {t0 - t1 - ti, -2.0 * n};
    case 22: return {t0 + t1 - ti, -2.0 * (n - 1.0)};
    case 31: return {t0 + t1 - ti, 2.0 * n};
    case 32: return {t0 - t1 + ti, -2.0 * (n - 1.0)};
    case 41: return {t0 + t1 + ti, 2.0 * n};
    case 42: return {t0 - t1 + ti, 2.0 * (n - 1.0)};
    default:
      throw Error(ErrorCode::MalformedInput, "non-generic case 1..4, branch 1..2");
  }
}

// Triangular factor fixed by the resonance: (diagonal entry, off entry)
// of M0 (cases 1, 3) or M1 (cases 2, 4). The second-branch Gamma factor
// reads Gamma(nu) Gamma(theta + nu - 1).
std::pair<cplx, cplx> ng_fixed_factor(int ng_case, int branch, int nu,
                                      const ThetaTriple& th, cplx u) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  const double n = nu;
  if (ng_case == 1 || ng_case == 3) {
    if (branch == 1)
      return {exp_pi_i(-t0), kTwoPiI * exp_pi_i(ti - t0) * u *
                                 inv_gamma_strict(n) *
                                 inv_gamma_strict(1.0 - t0 + n)};
    return {exp_pi_i(t0), kTwoPiI * exp_pi_i(ti + t0) * u * inv_gamma_strict(n) *
                              inv_gamma_strict(t0 + n - 1.0)};
  }
  if (branch == 1)
    return {exp_pi_i(t1), kTwoPiI * exp_pi_i(t1) * inv_gamma_strict(n) *
                              inv_gamma_strict(1.0 - t1 + n) / u};
  return {exp_pi_i(-t1), kTwoPiI * exp_pi_i(-t1) * inv_gamma_strict(n) *
                             inv_gamma_strict(t1 + n - 1.0) / u};
}

// The c0-carrying factor: its off-diagonal entry divided by c0.
std::pair<cplx, cplx> ng_c0_factor(int ng_case, const ThetaTriple& th, cplx u) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  switch (ng_case) {
    case 1: return {exp_pi_i(t1), kTwoPiI * exp_pi_i(t1) * rgamma(1.0 - t1) / u};
    case 2: return {exp_pi_i(-t0), kTwoPiI * exp_pi_i(ti - t0) * u * rgamma(1.0 - t0)};
    case 3: return {exp_pi_i(-t1), kTwoPiI * exp_pi_i(-t1) * rgamma(t1) / u};
    default: return {exp_pi_i(t0), kTwoPiI * exp_pi_i(ti + t0) * u * rgamma(t0)};
  }
}

}  // namespace

std::pair<MonodromyPair, AsymptoticDescriptor> build_trunc_nongeneric(
    int ng_case, int branch, int nu, cplx c0, const ThetaTriple& theta,
    cplx utilde) {
  if (nu < 1)
    throw Error(ErrorCode::ConditionMismatch, "nu must be a positive integer");
  NgRule rule = ng_rule(ng_case, branch, nu, theta);
  if (std::abs(rule.combo - rule.target) > kIntTol)
    throw Error(ErrorCode::ConditionMismatch,
                "resonance condition of case " + std::to_string(ng_case) +
                    " branch " + std::to_string(branch) + " fails for nu = " +
                    std::to_string(nu));
  const cplx t0 = theta.theta0, t1 = theta.theta1;
  const bool excluded = (ng_case == 1 && in_naturals(t1)) ||
                        (ng_case == 2 && in_naturals(t0)) ||
                        (ng_case == 3 && in_nonpositive(t1)) ||
                        (ng_case == 4 && in_nonpositive(t0));
  if (excluded)
    throw Error(ErrorCode::ConditionMismatch,
                "integer exclusion of case " + std::to_string(ng_case) + " fails");
  auto fixed = ng_fixed_factor(ng_case, branch, nu, theta, utilde);
  auto free = ng_c0_factor(ng_case, theta, utilde);
  MonodromyPair p;
  p.theta = theta;
  if (ng_case == 1 || ng_case == 3) {
    // M0 upper triangular (fixed), M1 lower triangular (carries c0)
    p.m0 = {fixed.first, fixed.second, 0.0, 1.0 / fixed.first};
    p.m1 = {free.first, 0.0, free.second * c0, 1.0 / free.first};
  } else {
    // M0 upper triangular (carries c0), M1 lower triangular (fixed)
    p.m0 = {free.first, free.second * c0, 0.0, 1.0 / free.first};
    p.m1 = {fixed.first, 0.0, fixed.second, 1.0 / fixed.first};
  }
  static constexpr std::array<Variant, 4> base = {
      Variant::Trunc00, Variant::Trunc01, Variant::TruncInf0, Variant::TruncInf1};
  AsymptoticDescriptor d;
  d.variant = Variant::NonGeneric;
  d.theta = theta;
  d.ng_case = ng_case;
  d.ng_branch = branch;
  Variant shape = base[ng_case - 1];
  cplx L, mu;
  trunc_shape(shape, theta, &L, &mu);
  d.params = {{"c0", c0},
              {"mu", mu},
              {"L", L},
              {"amp", correction_amp(shape, L, c0)},
              {"exp_sign", -1.0},
              {"nu", static_cast<double>(nu)}};
  d.sector = trunc_sector(shape, false);
  return {p, d};
}

cplx nongeneric_c0_from_pair(int ng_case, int branch, int nu,
                             const MonodromyPair& pair) {
  // m0_12 m1_21 = (fixed off entry) * (free off entry per c0) * c0, both
  // factors taken at utilde = 1 (the product is gauge invariant).
  auto fixed = ng_fixed_factor(ng_case, branch, nu, pair.theta, 1.0);
  auto free = ng_c0_factor(ng_case, pair.theta, 1.0);
  cplx denom = fixed.second * free.second;
  if (is_zero(denom))
    throw Error(ErrorCode::DomainViolation, "c0 is not recoverable (zero factor)");
  return pair.m0.m12 * pair.m1.m21 / denom;
}

std::pair<cplx, cplx> eval_trunc_d1(cplx x, const AsymptoticDescriptor& d,
                                    const FormalSeries& s, double r) {
  if (s.tag != trunc_series_tag(d))
    throw Error(ErrorCode::WrongFamily, "series tag does not match the descriptor");
  // pick the sheet of arg x that lies in the sector
  double arg = std::arg(x);
  bool found = false;
  for (int k : {0, -1, 1}) {
    double a = arg + 2.0 * kPi * k;
    if (d.sector.contains(a, 1e-12)) {
      arg = a;
      found = true;
      break;
    }
  }
  if (!found)
    throw Error(ErrorCode::OutsideValidity, "arg x lies outside the sector");
  const cplx lx(std::log(std::abs(x)), arg);
  if (d.variant == Variant::DoublyTruncAK) return {s.y(x), s.yprime(x)};
  if (d.variant == Variant::TruncAK) {
    cplx amp = d.param("amp");
    double dir = d.param("direction").real();
    cplx osc = 2.0 * std::sqrt(2.0) * std::exp(kI * kPi / 4.0) * amp *
               std::exp(-0.5 * lx + dir * kI * x / 2.0);
    return {s.y(x) + osc, s.yprime(x) + osc * (-0.5 / x + dir * kI / 2.0)};
  }
  const cplx amp = d.param("amp");
  cplx native = s.native(x);
  cplx dnative = s.native_d1(x);
  if (amp != 0.0) {
    const cplx mu = d.param("mu");
    const double es = d.param("exp_sign").real();
    cplx small = std::exp(mu * lx + es * x);
    if (std::abs(small) >= std::pow(std::abs(x), -r))
      throw Error(ErrorCode::OutsideValidity,
                  "|x^mu e^{sx}| is not below |x|^{-r} at this x");
    native += amp * small / x;
    dnative += amp * small / x * ((mu - 1.0) / x + es);
  }
  if (!s.reciprocal()) return {native, dnative};
  return {1.0 / native, -dnative / (native * native)};
}

cplx eval_trunc(cplx x, const AsymptoticDescriptor& d, const FormalSeries& s,
                double r) {
  return eval_trunc_d1(x, d, s, r).first;
}

// ---------------------------------------------------------------------------

cplx phase_shift_from_logs(cplx log_offdiag, cplx log_m,
                           const BoutrouxSolution& sol) {
  cplx x0 = -(sol.omegaB * log_offdiag + sol.omegaA * log_m) / (kPi * kI) -
            sol.omegaA - sol.omegaB;
  return reduce_mod_lattice(x0, sol.omegaA, sol.omegaB);
}

cplx phase_shift_x0(const MonodromyPair& pair, double phi,
                    const BoutrouxSolution& sol) {
  if (!(phi > -kPi / 2 && phi < kPi / 2) || phi == 0.0)
    throw Error(ErrorCode::WrongSector, "phase_shift_x0 needs 0 < |phi| < pi/2");
  const double scale = 1.0 + pair_norm(pair);
  const cplx ti = pair.theta.thetaInf;
  cplx P = pair.m0.m21 * pair.m1.m12;
  if (is_zero(P, scale))
    throw Error(ErrorCode::DomainViolation, "m0_21 m1_12 vanishes");
  cplx m;
  if (phi < 0) {
    if (is_zero(pair.m0.m11, scale))
      throw Error(ErrorCode::DomainViolation, "m0_11 vanishes (phi < 0)");
    m = exp_pi_i(ti / 2.0) * pair.m0.m11;
  } else {
    if (is_zero(pair.m1.m11, scale))
      throw Error(ErrorCode::DomainViolation, "m1_11 vanishes (phi > 0)");
    m = exp_pi_i(-ti / 2.0) / pair.m1.m11;
  }
  return phase_shift_from_logs(std::log(exp_pi_i(ti) * P), std::log(m), sol);
}

cplx phase_shift_breve(const MonodromyPair& pair, double phi,
                       const BoutrouxSolution& sol) {
  const bool left_upper = phi > kPi / 2 && phi < kPi;
  const bool left_lower = phi > kPi && phi < 3 * kPi / 2;
  if (!left_upper && !left_lower)
    throw Error(ErrorCode::WrongSector,
                "phase_shift_breve needs pi/2 < phi < pi or pi < phi < 3pi/2");
  StokesMatrices st = stokes_from_pair(pair);
  Mat2C S2 = st.S(2), S2i = S2.inverse();
  Mat2C b0 = S2i * pair.m0 * S2, b1 = S2i * pair.m1 * S2;
  const double scale = 1.0 + pair_norm(pair);
  const cplx ti = pair.theta.thetaInf;
  cplx P = b0.m12 * b1.m21;
  if (is_zero(P, scale))
    throw Error(ErrorCode::DomainViolation, "breve m0_12 m1_21 vanishes");
  cplx m;
  if (left_upper) {
    if (is_zero(b0.m22, scale))
      throw Error(ErrorCode::DomainViolation, "breve m0_22 vanishes");
    m = exp_pi_i(ti / 2.0) / b0.m22;
  } else {
    if (is_zero(b1.m22, scale))
      throw Error(ErrorCode::DomainViolation, "breve m1_22 vanishes");
    m = exp_pi_i(-ti / 2.0) * b1.m22;
  }
  return phase_shift_from_logs(std::log(exp_pi_i(ti) / P), std::log(m), sol);
}

cplx zfrak_from_y(cplx x, cplx y, cplx yprime, const ThetaTriple& th) {
  cplx ym1 = y - 1.0;
  return -x * (yprime - y) / (2.0 * ym1 * ym1) +
         (th.theta0 + th.theta1) / (2.0 * ym1) -
         (th.theta0 - th.theta1 + th.thetaInf) / 4.0;
}

PointValue eval_descriptor(const AsymptoticDescriptor& d, cplx x,
                           const EvalSettings& s) {
  if (d.variant == Variant::Elliptic) {
    BoutrouxSolution sol = solve_boutroux(d.param("phi").real());
    EllipticValue v = eval_elliptic(x, d, sol, s.delta0);
    return {v.y, v.yprime, v.zfrak};
  }
  if (d.variant == Variant::Trig) {
    auto f = [&](cplx z) { return eval_trig(z, d, s.trig_form); };
    const double h = 1e-3 * std::max(1.0, std::abs(x));
    cplx y = f(x);
    cplx yp = (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
              (12.0 * h);
    return {y, yp, zfrak_from_y(x, y, yp, d.theta)};
  }
  FormalSeries fs = formal_series_pv(trunc_series_tag(d), d.theta, s.order);
  auto [y, yp] = eval_trunc_d1(x, d, fs);
  return {y, yp, zfrak_from_y(x, y, yp, d.theta)};
}

EllipticValue eval_elliptic(cplx x, const AsymptoticDescriptor& d,
                            const BoutrouxSolution& sol, double delta0) {
  if (d.variant != Variant::Elliptic)
    throw Error(ErrorCode::WrongFamily, "eval_elliptic needs an Elliptic descriptor");
  const cplx A = d.param("A"), x0 = d.param("x0");
  // distance to the pole lattice x0 + Omega_b + Omega_a Z + 2 Omega_b Z
  cplx rel = reduce_mod_lattice(x - x0 - sol.omegaB, sol.omegaA / 2.0, sol.omegaB);
  double dist = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      dist = std::min(dist, std::abs(rel - static_cast<double>(i) * sol.omegaA -
                                     2.0 * static_cast<double>(j) * sol.omegaB));
  if (dist < delta0)
    throw Error(ErrorCode::InsidePoleDisk, "x lies inside an excluded pole disk");
  const cplx k = std::sqrt(A);
  JacobiValues jv = jacobi_elliptic((x - x0) / 2.0, A);
  EllipticValue r;
  r.sn = jv.sn;
  r.snprime = jv.cn * jv.dn;
  cplx W = k * jv.sn;
  r.y = (W + 1.0) / (W - 1.0);
  r.yprime = -k * r.snprime / ((W - 1.0) * (W - 1.0));
  r.zfrak = zfrak_from_y(x, r.y, r.yprime, d.theta);
  return r;
}

// ---------------------------------------------------------------------------

MonodromyPair general_solution_monodromy(const GeneralSolutionParams& p,
                                         const ThetaTriple& theta) {
  const cplx t0 = theta.theta0, t1 = theta.theta1, ti = theta.thetaInf;
  const cplx s = p.sigma, u = p.utilde;
  if (is_zero(p.c0))
    throw Error(ErrorCode::UnderdeterminedCompletion, "c0 = 0 leaves m0_21 undefined");
  cplx m021 = kTwoPiI * exp_pi_i(-ti) / p.c0 *
              inv_gamma_strict(1.0 - (s + 2.0 * t0 - ti) / 4.0) *
              inv_gamma_strict(-(s - 2.0 * t0 - ti) / 4.0) / u;
  cplx m112 = kTwoPiI * p.cx * u * inv_gamma_strict(1.0 - (s + 2.0 * t1 + ti) / 4.0) *
              inv_gamma_strict(-(s - 2.0 * t1 + ti) / 4.0);
  // traces fix the (2,2) entries; the (1,1) product relation fixes the
  // second diagonal entry; det fixes the remaining off-diagonals
  cplx prod = m021 * m112;
  cplx m011, m111;
  if (p.side == Side::Upper) {
    m111 = exp_pi_i(-(s + ti) / 2.0);
    m011 = (exp_pi_i(-ti) - prod) / m111;
  } else {
    m011 = exp_pi_i((s - ti) / 2.0);
    m111 = (exp_pi_i(-ti) - prod) / m011;
  }
  MonodromyPair out;
  out.theta = theta;
  out.m0 = completed_upper_known_21(m011, m021, 2.0 * cos_pi(t0));
  out.m1 = completed_known_12(m111, m112, 2.0 * cos_pi(t1));
  return out;
}

std::pair<MonodromyPair, AsymptoticDescriptor> trunc_boundary_families(
    const std::string& which, const BoundaryParams& bp, const ThetaTriple& theta) {
  const cplx t0 = theta.theta0, t1 = theta.theta1, ti = theta.thetaInf;
  const cplx tr0 = 2.0 * cos_pi(t0), tr1 = 2.0 * cos_pi(t1);
  const cplx u = bp.utilde, c = bp.c;
  if (is_zero(u))
    throw Error(ErrorCode::MalformedInput, "gauge parameter must be nonzero");
  MonodromyPair p;
  p.theta = theta;
  AsymptoticDescriptor d;
  d.theta = theta;
  d.family = which;
  const Sector upper_left{kPi / 2, 3 * kPi / 2, true, false};
  const Sector lower_left{-3 * kPi / 2, -kPi / 2, false, true};
  cplx L, mu, amp;
  if (which == "5.3a") {
    if (in_nonpositive(t1))
      throw Error(ErrorCode::ThetaViolation, "5.3a: Gamma(t1) pole");
    cplx m021 = kTwoPiI * exp_pi_i(-ti) * inv_gamma_strict(1.0 - (t0 - t1 - ti) / 2.0) *
                inv_gamma_strict((t0 + t1 + ti) / 2.0) / u;
    cplx m112 = kTwoPiI * c * u * inv_gamma_strict(t1);
    cplx m011 = exp_pi_i(-t1) * (exp_pi_i(-ti) - m021 * m112);
    p.m0 = completed_upper_known_21(m011, m021, tr0);
    p.m1 = {exp_pi_i(t1), m112, 0.0, exp_pi_i(-t1)};
    d.variant = Variant::Trunc00;
    L = (t0 - t1 - ti) / 2.0;
    mu = 1.0 - 2.0 * t1 - ti;
    amp = c;
    d.sector = upper_left;
  } else if (which == "5.4") {
    if (in_naturals(t0)) throw Error(ErrorCode::ThetaViolation, "5.4: t0 in N");
    cplx m021 = kTwoPiI * exp_pi_i(-ti) * inv_gamma_strict(1.0 - t0) / u;
    cplx m112 = kTwoPiI * c * u * inv_gamma_strict(1.0 - (t0 + t1 + ti) / 2.0) *
                inv_gamma_strict(-(t0 - t1 + ti) / 2.0);
    cplx m111 = exp_pi_i(-t0) * (exp_pi_i(-ti) - m021 * m112);
    p.m0 = {exp_pi_i(t0), 0.0, m021, exp_pi_i(-t0)};
    p.m1 = completed_known_12(m111, m112, tr1);
    d.variant = Variant::TruncInf1;
    L = (t0 - t1 + ti) / 2.0;
    mu = 2.0 * t0 + ti - 1.0;
    amp = -L * c;
    d.sector = lower_left;
  } else if (which == "5.3c") {
    if (in_naturals(t1)) throw Error(ErrorCode::ThetaViolation, "5.3c: t1 in N");
    cplx m021 = kTwoPiI * exp_pi_i(-ti) * inv_gamma_strict(1.0 - (t0 + t1 - ti) / 2.0) *
                inv_gamma_strict((t0 - t1 + ti) / 2.0) / u;
    cplx m112 = kTwoPiI * c * u * inv_gamma_strict(1.0 - t1);
    cplx m011 = exp_pi_i(t1) * (exp_pi_i(-ti) - m021 * m112);
    p.m0 = completed_upper_known_21(m011, m021, tr0);
    p.m1 = {exp_pi_i(-t1), m112, 0.0, exp_pi_i(t1)};
    d.variant = Variant::TruncInf0;
    L = (t1 - t0 - ti) / 2.0;
    mu = 2.0 * t1 - ti - 1.0;
    amp = -L * c;
    d.sector = upper_left;
  } else if (which == "5.3d") {
    if (in_nonpositive(t0))
      throw Error(ErrorCode::ThetaViolation, "5.3d: Gamma(t0) pole");
    cplx m021 = kTwoPiI * exp_pi_i(-ti) * inv_gamma_strict(t0) / u;
    cplx m112 = kTwoPiI * c * u * inv_gamma_strict(1.0 + (t0 - t1 - ti) / 2.0) *
                inv_gamma_strict((t0 + t1 - ti) / 2.0);
    cplx m111 = exp_pi_i(t0) * (exp_pi_i(-ti) - m021 * m112);
    p.m0 = {exp_pi_i(-t0), 0.0, m021, exp_pi_i(t0)};
    p.m1 = completed_known_12(m111, m112, tr1);
    d.variant = Variant::Trunc01;
    L = -(t0 - t1 - ti) / 2.0;
    mu = ti - 2.0 * t0 + 1.0;
    amp = c;
    d.sector = lower_left;
  } else {
    throw Error(ErrorCode::MalformedInput, "unknown boundary family '" + which + "'");
  }
  d.params = {{"c0", c}, {"mu", mu}, {"L", L}, {"amp", amp}, {"exp_sign", 1.0}};
  return {p, d};
}

cplx boundary_constant_from_pair(const std::string& which, const MonodromyPair& pair) {
  const ThetaTriple& th = pair.theta;
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  const cplx P = pair.m0.m21 * pair.m1.m12;
  const cplx base = P / (kTwoPiI * kTwoPiI * exp_pi_i(-ti));
  if (which == "5.3a")
    return base * complex_gamma(1.0 - (t0 - t1 - ti) / 2.0) *
           complex_gamma((t0 + t1 + ti) / 2.0) * complex_gamma(t1);
  if (which == "5.4")
    return base * complex_gamma(1.0 - t0) * complex_gamma(1.0 - (t0 + t1 + ti) / 2.0) *
           complex_gamma(-(t0 - t1 + ti) / 2.0);
  if (which == "5.3c")
    return base * complex_gamma(1.0 - (t0 + t1 - ti) / 2.0) *
           complex_gamma((t0 - t1 + ti) / 2.0) * complex_gamma(1.0 - t1);
  if (which == "5.3d")
    return base * complex_gamma(t0) * complex_gamma(1.0 + (t0 - t1 - ti) / 2.0) *
           complex_gamma((t0 + t1 - ti) / 2.0);
  throw Error(ErrorCode::MalformedInput, "unknown boundary family '" + which + "'");
}

// ---------------------------------------------------------------------------

cplx example_22_coefficient(const ThetaTriple& theta, cplx c0) {
  const cplx t0 = theta.theta0, t1 = theta.theta1, ti = theta.thetaInf;
  return c0 + kTwoPiI * inv_gamma_strict(t0) * inv_gamma_strict((t0 + t1 - ti) / 2.0) *
                  inv_gamma_strict(1.0 + (t0 - t1 - ti) / 2.0);
}

cplx example_22_chain(const ThetaTriple& theta, cplx c0, cplx utilde) {
  auto built = build_trunc_family(Variant::Trunc01, c0, theta, utilde);
  MonodromyPair hat = stokes_hat(built.first);
  cplx cx_minus = boundary_constant_from_pair("5.4", hat);
  return exp_pi_i(-(2.0 * theta.theta0 - theta.thetaInf)) * cx_minus;
}

cplx example_21_m22(const ThetaTriple& theta) {
  return 2.0 * (cos_pi(theta.theta1) + exp_pi_i(theta.thetaInf) * cos_pi(theta.theta0));
}

}  // namespace pvrh
