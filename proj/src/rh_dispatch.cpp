#include "pvrh/rh_dispatch.hpp"

#include <cmath>

namespace pvrh {

ThetaConditionReport theta_conditions(const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  ThetaConditionReport r;
  r.theta = th;
  // x in 2N  <=>  x/2 in N ;  x in -2N u {0}  <=>  x/2 in -N u {0}
  r.theta1 = !in_naturals((t0 - t1 - ti) / 2.0) &&
             !in_nonpositive((t0 + t1 + ti) / 2.0);
  r.theta2 = !in_naturals(-(t0 - t1 - ti) / 2.0) &&
             !in_nonpositive((t0 + t1 - ti) / 2.0);
  r.theta3 = !in_naturals((t0 + t1 - ti) / 2.0) &&
             !in_nonpositive((t0 - t1 + ti) / 2.0);
  r.theta4 = !in_naturals((t0 + t1 + ti) / 2.0) &&
             !in_nonnegative((t0 - t1 + ti) / 2.0);
  r.theta0_integer = near_integer(t0, kIntTol);
  r.theta1_integer = near_integer(t1, kIntTol);
  r.theta0_in_N = in_naturals(t0);
  r.theta1_in_N = in_naturals(t1);
  r.theta0_in_negN0 = in_nonpositive(t0);
  r.theta1_in_negN0 = in_nonpositive(t1);
  r.diagonal_resonance = std::abs(t0 - t1 - ti) <= kIntTol;
  return r;
}

RegionEmptiness region_emptiness(const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  if (near_integer(t0, kIntTol) || near_integer(t1, kIntTol))
    throw Error(ErrorCode::IntegerTheta,
                "region emptiness needs theta0, theta1 not integers");
  RegionEmptiness r;
  r.r3plus_empty = in_nonpositive((t0 + t1 + ti) / 2.0) ||
                   in_naturals((t0 - t1 - ti) / 2.0);
  r.r3minus_empty = in_nonpositive((t0 - t1 + ti) / 2.0) ||
                    in_naturals((t0 + t1 - ti) / 2.0);
  r.r4minus_empty = in_naturals(-(t0 - t1 - ti) / 2.0) ||
                    in_nonpositive((t0 + t1 - ti) / 2.0);
  r.r4plus_empty = in_naturals((t0 + t1 + ti) / 2.0) ||
                   in_nonnegative((t0 - t1 + ti) / 2.0);
  for (double e0 : {-1.0, 1.0})
    for (double e1 : {-1.0, 1.0}) {
      long long n = 0;
      if (near_integer((e0 * t0 + e1 * t1 + ti) / 2.0, kIntTol, &n))
        r.r5_present = true;
    }
  auto note = [&](bool empty, const char* region) {
    if (empty)
      r.notes.push_back(std::string(region) + " is empty; R5 takes its place");
  };
  note(r.r3plus_empty, "R3+");
  note(r.r3minus_empty, "R3-");
  note(r.r4minus_empty, "R4-");
  note(r.r4plus_empty, "R4+");
  return r;
}

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

// Diagonal pattern of the non-generic pairs: (m0_11, m1_11).
std::pair<cplx, cplx> ng_diagonal(int ng_case, int branch, const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1;
  switch (ng_case) {
    case 1: return {exp_pi_i(branch == 1 ? -t0 : t0), exp_pi_i(t1)};
    case 2: return {exp_pi_i(-t0), exp_pi_i(branch == 1 ? t1 : -t1)};
    case 3: return {exp_pi_i(branch == 1 ? -t0 : t0), exp_pi_i(-t1)};
    default: return {exp_pi_i(t0), exp_pi_i(branch == 1 ? t1 : -t1)};
  }
}

// nu solving the resonance relation of (case, branch), if it is a positive
// integer.
std::optional<int> ng_nu(int ng_case, int branch, const ThetaTriple& th) {
  const cplx t0 = th.theta0, t1 = th.theta1, ti = th.thetaInf;
  cplx nu;
  switch (ng_case * 10 + branch) {
    case 11: nu = (t0 - t1 - ti) / 2.0; break;
    case 12: nu = 1.0 - (t0 + t1 + ti) / 2.0; break;
    case 21: nu = -(t0 - t1 - ti) / 2.0; break;
    case 22: nu = 1.0 - (t0 + t1 - ti) / 2.0; break;
    case 31: nu = (t0 + t1 - ti) / 2.0; break;
    case 32: nu = 1.0 - (t0 - t1 + ti) / 2.0; break;
    case 41: nu = (t0 + t1 + ti) / 2.0; break;
    default: nu = 1.0 + (t0 - t1 + ti) / 2.0; break;
  }
  long long n = 0;
  if (!near_integer(nu, kIntTol, &n) || n < 1) return std::nullopt;
  return static_cast<int>(n);
}

bool ng_exclusion_ok(int ng_case, const ThetaTriple& th) {
  switch (ng_case) {
    case 1: return !in_naturals(th.theta1);
    case 2: return !in_naturals(th.theta0);
    case 3: return !in_nonpositive(th.theta1);
    default: return !in_nonpositive(th.theta0);
  }
}

AsymptoticDescriptor dispatch_r5(const MonodromyPair& pair) {
  const double tol = std::max(1e-8, pair.tol);
  for (int ng_case = 1; ng_case <= 4; ++ng_case)
    for (int branch = 1; branch <= 2; ++branch) {
      auto nu = ng_nu(ng_case, branch, pair.theta);
      if (!nu || !ng_exclusion_ok(ng_case, pair.theta)) continue;
      auto diag = ng_diagonal(ng_case, branch, pair.theta);
      if (!close(pair.m0.m11, diag.first, tol) ||
          !close(pair.m1.m11, diag.second, tol))
        continue;
      cplx c0 = nongeneric_c0_from_pair(ng_case, branch, *nu, pair);
      return build_trunc_nongeneric(ng_case, branch, *nu, c0, pair.theta, 1.0)
          .second;
    }
  throw Error(ErrorCode::UnmappedRegion,
              "R5 data matches no non-generic family for these parameters");
}

AsymptoticDescriptor dispatch_trunc(Variant v, const MonodromyPair& pair) {
  cplx c0 = trunc_c0_from_pair(v, pair);
  return build_trunc_family(v, c0, pair.theta, 1.0).second;
}

AsymptoticDescriptor elliptic_descriptor(const ThetaTriple& theta,
                                         const BoutrouxSolution& sol, cplx x0,
                                         double psi) {
  AsymptoticDescriptor d;
  d.variant = Variant::Elliptic;
  d.theta = theta;
  d.params = {{"A", sol.A}, {"x0", x0}, {"phi", psi}};
  // the open quarter-turn around psi that contains it
  double lo = std::floor(psi / (kPi / 2)) * (kPi / 2);
  d.sector = {lo, lo + kPi / 2, false, false};
  return d;
}

}  // namespace

AsymptoticDescriptor solve_rh(const MonodromyPair& pair, double phi,
                              double zero_tol) {
  if (!(std::abs(phi) < kPi / 2))
    throw Error(ErrorCode::WrongSector, "solve_rh needs |phi| < pi/2");
  ValidationReport rep = validate_pair(pair);
  if (rep.non_unique_fiber)
    throw Error(ErrorCode::NonUniqueFiber,
                "M0 or M1 is +-I; the solution is not fixed by the data");
  if (!rep.valid)
    throw Error(ErrorCode::DomainViolation, "pair fails validation");
  Region region = classify_region(pair, zero_tol);
  ThetaConditionReport cond = theta_conditions(pair.theta);
  auto unmapped = [](const char* what) {
    return Error(ErrorCode::UnmappedRegion, what);
  };

  switch (region.tag) {
    case RegionTag::R1: {
      if (phi == 0.0) {
        Beta0Vhat bv = beta0_vhat(pair);
        AsymptoticDescriptor d;
        d.variant = Variant::Trig;
        d.theta = pair.theta;
        d.params = {{"beta0", bv.beta0}, {"vhat", bv.vhat}};
        d.sector = {0.0, 0.0, true, true};
        return d;
      }
      BoutrouxSolution sol = solve_boutroux(phi);
      return elliptic_descriptor(pair.theta, sol, phase_shift_x0(pair, phi, sol), phi);
    }
    case RegionTag::R2_0:
      if (phi < 0) {
        BoutrouxSolution sol = solve_boutroux(phi);
        return elliptic_descriptor(pair.theta, sol, phase_shift_x0(pair, phi, sol),
                                   phi);
      }
      return trunc_ak_descriptor(pair);
    case RegionTag::R2_1:
      if (phi > 0) {
        BoutrouxSolution sol = solve_boutroux(phi);
        return elliptic_descriptor(pair.theta, sol, phase_shift_x0(pair, phi, sol),
                                   phi);
      }
      return trunc_ak_descriptor(pair);
    case RegionTag::R2_01:
      return trunc_ak_descriptor(pair);
    case RegionTag::R3plus:
      if (!cond.theta1 || cond.theta1_in_N)
        throw unmapped("R3+ without (Theta_1) and theta1 not in N");
      return dispatch_trunc(Variant::Trunc00, pair);
    case RegionTag::R3minus:
      if (!cond.theta3 || cond.theta1_in_negN0)
        throw unmapped("R3- without (Theta_3) and theta1 not in -N u {0}");
      return dispatch_trunc(Variant::TruncInf0, pair);
    case RegionTag::R3:
      // theta1 integer: exactly one of the two exclusions can hold
      if (cond.theta1 && !cond.theta1_in_N)
        return dispatch_trunc(Variant::Trunc00, pair);
      if (cond.theta3 && !cond.theta1_in_negN0)
        return dispatch_trunc(Variant::TruncInf0, pair);
      throw unmapped("R3 with integer theta1 and no admissible family");
    case RegionTag::R4minus:
      if (!cond.theta2 || cond.theta0_in_N)
        throw unmapped("R4- without (Theta_2) and theta0 not in N");
      return dispatch_trunc(Variant::Trunc01, pair);
    case RegionTag::R4plus:
      if (!cond.theta4 || cond.theta0_in_negN0)
        throw unmapped("R4+ without (Theta_4) and theta0 not in -N u {0}");
      return dispatch_trunc(Variant::TruncInf1, pair);
    case RegionTag::R4:
      if (cond.theta2 && !cond.theta0_in_N)
        return dispatch_trunc(Variant::Trunc01, pair);
      if (cond.theta4 && !cond.theta0_in_negN0)
        return dispatch_trunc(Variant::TruncInf1, pair);
      throw unmapped("R4 with integer theta0 and no admissible family");
    case RegionTag::R5:
      return dispatch_r5(pair);
  }
  throw unmapped("unknown region");
}

AsymptoticDescriptor elliptic_on_sheet(const MonodromyPair& pair, double psi) {
  // p with psi - 2 pi p in (-pi/2, 3pi/2]
  int p = static_cast<int>(std::floor((psi + kPi / 2) / (2 * kPi)));
  double rel = psi - 2 * kPi * p;
  if (rel <= -kPi / 2) {
    rel += 2 * kPi;
    --p;
  } else if (rel > 3 * kPi / 2) {
    rel -= 2 * kPi;
    ++p;
  }
  const double eps = 1e-14;
  for (double edge : {0.0, kPi / 2, kPi, 3 * kPi / 2})
    if (std::abs(rel - edge) < eps)
      throw Error(ErrorCode::WrongSector,
                  "direction lies on a sheet boundary; no elliptic form");
  BoutrouxSolution sol = solve_boutroux(psi);
  if (rel < kPi / 2) {
    MonodromyPair mp = monodromy_shift(pair, p);
    return elliptic_descriptor(pair.theta, sol, phase_shift_x0(mp, rel, sol), psi);
  }
  FamilyElement hat = family_member(pair, Family::Hat, p);
  cplx x0m = phase_shift_x0(hat.pair, rel - kPi, sol);
  cplx x0 = reduce_mod_lattice(-x0m, sol.omegaA, sol.omegaB);
  return elliptic_descriptor(pair.theta, sol, x0, psi);
}

ContinuationPlan continuation_plan(const FamilyElement& start,
                                   const MonodromyPair& base, double from_arg,
                                   double to_arg) {
  double n_real = (to_arg - from_arg) / kPi;
  long long n = std::llround(n_real);
  if (std::abs(n_real - static_cast<double>(n)) > 1e-9)
    throw Error(ErrorCode::NotPiMultiple,
                "rotation must be an integer multiple of pi");
  ContinuationPlan plan;
  plan.from_arg = from_arg;
  plan.to_arg = to_arg;
  FamilyElement cur = start;
  auto step = [&](OpTag op) {
    cur = apply_operator(op, cur, base);
    plan.steps.push_back({op, cur});
  };
  const bool ccw = n > 0;
  long long left = std::llabs(n);
  while (left > 0) {
    if (cur.family == Family::Plain && left >= 2) {
      step(ccw ? OpTag::m : OpTag::minv);
      left -= 2;
    } else if (cur.family == Family::Plain) {
      step(ccw ? OpTag::s0 : OpTag::s1);
      --left;
    } else {
      step(ccw ? OpTag::shat1 : OpTag::shat0);
      --left;
    }
  }
  plan.result = cur;
  plan.inf_negated = cur.family == Family::Hat;
  plan.reciprocal = std::llabs(n) % 2 == 1;
  if (start.family == Family::Plain) {
    try {
      // arguments are absolute: the start pair labels y(x, M0, M1)
      plan.elliptic = elliptic_on_sheet(start.pair, to_arg);
    } catch (const Error& e) {
      plan.elliptic_note = std::string(error_name(e.code())) + ": " + e.what();
    }
  } else {
    plan.elliptic_note = "start element is in the hat family";
  }
  return plan;
}

ContinuationPlan continuation_plan(const MonodromyPair& pair, double from_arg,
                                   double to_arg) {
  return continuation_plan(FamilyElement{pair, 0, Family::Plain}, pair, from_arg,
                           to_arg);
}

}  // namespace pvrh
