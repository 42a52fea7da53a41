#pragma once

#include <map>
#include <string>
#include <utility>

#include "pvrh/boutroux.hpp"
#include "pvrh/gamma.hpp"
#include "pvrh/mono_core.hpp"
#include "pvrh/series.hpp"

namespace pvrh {

enum class Variant {
  Elliptic,
  Trig,
  TruncAK,
  DoublyTruncAK,
  Trunc00,
  Trunc01,
  TruncInf0,
  TruncInf1,
  NonGeneric,
};

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);

// Arg interval on the universal cover; endpoints may be open or closed.
struct Sector {
  double arg_min = 0.0;
  double arg_max = 0.0;
  bool min_closed = false;
  bool max_closed = false;

  bool contains(double arg, double tol = 0.0) const;
};

// Parameters by variant:
//   Elliptic       A, x0
//   Trig           beta0, vhat
//   TruncAK        amp (vhat or what), direction (-1: e^{-ix/2}, +1: e^{ix/2})
//   Trunc*         c0, mu, L, amp, exp_sign
//   NonGeneric     as Trunc*, plus nu and the case/branch fields
// For the exponential families the native variable (y, or 1/y for the
// TruncInf shapes) is   series + amp x^{mu-1} e^{exp_sign x}.
struct AsymptoticDescriptor {
  Variant variant = Variant::Trig;
  ThetaTriple theta;
  std::map<std::string, cplx> params;
  Sector sector;
  int ng_case = 0;   // NonGeneric: 1..4
  int ng_branch = 0; // NonGeneric: 1 (first) or 2 (second)
  std::string family; // boundary family label, e.g. "5.4"; empty otherwise

  cplx param(const std::string& name) const;
  bool has(const std::string& name) const { return params.count(name) > 0; }
};

// Series tag of the power-series part for the exponential families.
SeriesTag trunc_series_tag(const AsymptoticDescriptor& d);

// ---------------------------------------------------------------------------
// Trigonometric regime on the positive real axis

struct Beta0Vhat {
  cplx beta0{};
  cplx vhat{};
  cplx log_arg_product{};  // 1 - m0_11 m1_11 e^{pi i tInf}
  cplx log_arg_offdiag{};  // m0_21 m1_12 e^{pi i tInf}
  bool degenerate = false; // beta0 = 0: Gamma pole, vhat undefined
};

Beta0Vhat beta0_vhat(const MonodromyPair& pair);

enum class TrigForm {
  Auto,
  Case1,          // |Re b| < 1/4, sine form
  Case1Plus,      // 1/6 < Re b < 1/2, one-exponential rewrite
  Case1Minus,     // -1/2 < Re b < -1/6
  Case2,          // 1/4 < Re b < 3/4, cot^2 form
  Case2Low,       // 1/4 <= Re b < 1/2
  Case2High,      // 1/2 < Re b <= 3/4
};

TrigForm parse_trig_form(const std::string& name);

cplx eval_trig(cplx x, const AsymptoticDescriptor& d,
               TrigForm form = TrigForm::Auto);

// ---------------------------------------------------------------------------
// Truncated families

AsymptoticDescriptor trunc_ak_descriptor(const MonodromyPair& pair);

std::pair<MonodromyPair, AsymptoticDescriptor> build_trunc_family(
    Variant variant, cplx c0, const ThetaTriple& theta, cplx utilde);

// c0 recovered from the entry ratio (gauge invariant).
cplx trunc_c0_from_pair(Variant variant, const MonodromyPair& pair);

std::pair<MonodromyPair, AsymptoticDescriptor> build_trunc_nongeneric(
    int ng_case, int branch, int nu, cplx c0, const ThetaTriple& theta,
    cplx utilde);

// c0 of a non-generic pair, from the gauge invariant m0_12 m1_21.
cplx nongeneric_c0_from_pair(int ng_case, int branch, int nu,
                             const MonodromyPair& pair);

// Power series plus the single exponential term; r is the exponent of the
// validity domain |x^mu e^{s x}| < |x|^{-r}.
cplx eval_trunc(cplx x, const AsymptoticDescriptor& d, const FormalSeries& s,
                double r = 1.0);

// (y, y') from the same representation.
std::pair<cplx, cplx> eval_trunc_d1(cplx x, const AsymptoticDescriptor& d,
                                    const FormalSeries& s, double r = 1.0);

// ---------------------------------------------------------------------------
// Elliptic regime

cplx phase_shift_x0(const MonodromyPair& pair, double phi,
                    const BoutrouxSolution& sol);

// Same formula with the two logarithms supplied by the caller (used to
// check the branch-jump invariance).
cplx phase_shift_from_logs(cplx log_offdiag, cplx log_m, const BoutrouxSolution& sol);

cplx phase_shift_breve(const MonodromyPair& pair, double phi,
                       const BoutrouxSolution& sol);

struct EllipticValue {
  cplx y, yprime, zfrak;
  cplx sn, snprime;
};

// delta0 is the radius of the excluded disks around the pole lattice.
EllipticValue eval_elliptic(cplx x, const AsymptoticDescriptor& d,
                            const BoutrouxSolution& sol, double delta0 = 0.1);

// zfrak from (x, y, y') through the first equation of the isomonodromy
// system.
cplx zfrak_from_y(cplx x, cplx y, cplx yprime, const ThetaTriple& theta);

// ---------------------------------------------------------------------------
// Any descriptor at a point

struct PointValue {
  cplx y, yprime, zfrak;
};

struct EvalSettings {
  int order = 8;  // formal series order for the exponential families
  TrigForm trig_form = TrigForm::Auto;
  double delta0 = 0.1;
};

// Elliptic descriptors carry their direction in the "phi" parameter.
// The trigonometric y' is a five-point difference.
PointValue eval_descriptor(const AsymptoticDescriptor& d, cplx x,
                           const EvalSettings& s = {});

// ---------------------------------------------------------------------------
// Two-parameter family and the boundary sectors

enum class Side { Upper, Lower };

struct GeneralSolutionParams {
  cplx sigma{}, c0{}, cx{};
  cplx utilde{1.0, 0.0};
  Side side = Side::Upper;
};

MonodromyPair general_solution_monodromy(const GeneralSolutionParams& p,
                                         const ThetaTriple& theta);

struct BoundaryParams {
  cplx c{};  // c or c_x as displayed for the family
  cplx utilde{1.0, 0.0};
};

// which is one of "5.3a", "5.4", "5.3c", "5.3d"
std::pair<MonodromyPair, AsymptoticDescriptor> trunc_boundary_families(
    const std::string& which, const BoundaryParams& params,
    const ThetaTriple& theta);

// Inverse of the boundary-family constant for a pair of that shape.
cplx boundary_constant_from_pair(const std::string& which,
                                 const MonodromyPair& pair);

// ---------------------------------------------------------------------------
// Example constants

// c_{pi/2} from the closed form.
cplx example_22_coefficient(const ThetaTriple& theta, cplx c0);

// c_{pi/2} through the derivation chain: build the trunc_0^1 pair, apply
// stokes_hat, read the boundary constant of the (5.4)-shape family in
// the negated-thetaInf ambient and rotate.
cplx example_22_chain(const ThetaTriple& theta, cplx c0, cplx utilde = 1.0);

// 2(cos pi t1 + e^{pi i tInf} cos pi t0)
cplx example_21_m22(const ThetaTriple& theta);

}  // namespace pvrh
