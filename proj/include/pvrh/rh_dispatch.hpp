#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvrh/asymptotics.hpp"

namespace pvrh {

// Conditions (Theta_1)..(Theta_4) and the integer memberships that the
// region classification refers to.
struct ThetaConditionReport {
  ThetaTriple theta;
  bool theta1 = true, theta2 = true, theta3 = true, theta4 = true;
  bool theta0_integer = false, theta1_integer = false;
  bool theta0_in_N = false, theta1_in_N = false;          // {1, 2, ...}
  bool theta0_in_negN0 = false, theta1_in_negN0 = false;  // {0, -1, ...}
  bool diagonal_resonance = false;                        // t0 - t1 - tInf = 0

  bool all_hold() const { return theta1 && theta2 && theta3 && theta4; }
};

ThetaConditionReport theta_conditions(const ThetaTriple& theta);

struct RegionEmptiness {
  bool r3plus_empty = false, r3minus_empty = false;
  bool r4minus_empty = false, r4plus_empty = false;
  // eps0 t0 + eps1 t1 + tInf in 2Z for some signs
  bool r5_present = false;
  std::vector<std::string> notes;
};

// Requires theta0, theta1 not integers (IntegerTheta otherwise).
RegionEmptiness region_emptiness(const ThetaTriple& theta);

// Region classification followed by the family lookup for |phi| < pi/2.
AsymptoticDescriptor solve_rh(const MonodromyPair& pair, double phi,
                              double zero_tol = 0.0);

struct PlanStep {
  OpTag op;
  FamilyElement after;
};

struct ContinuationPlan {
  double from_arg = 0.0, to_arg = 0.0;
  std::vector<PlanStep> steps;
  FamilyElement result;
  bool reciprocal = false;    // odd number of half turns
  bool inf_negated = false;   // result lives in the (t0, t1, -tInf) ambient
  // Elliptic phase at the final direction, when the sheet admits one.
  std::optional<AsymptoticDescriptor> elliptic;
  std::string elliptic_note;
};

// to_arg - from_arg must be an integer multiple of pi (NotPiMultiple).
ContinuationPlan continuation_plan(const MonodromyPair& pair, double from_arg,
                                   double to_arg);

// Same, starting from any member of the families generated by `base`.
// Half turns alternate s0/shat1 (counterclockwise) or s1/shat0
// (clockwise); pairs of half turns from the plain family collapse to m or
// m^{-1}.
ContinuationPlan continuation_plan(const FamilyElement& start,
                                   const MonodromyPair& base, double from_arg,
                                   double to_arg);

// Phase shift of the elliptic representation in an arbitrary direction
// psi on the universal cover, from the monodromy data of the principal
// sheet. Throws DomainViolation when the entry conditions fail and
// WrongSector on the sheet boundaries.
AsymptoticDescriptor elliptic_on_sheet(const MonodromyPair& pair, double psi);

}  // namespace pvrh
