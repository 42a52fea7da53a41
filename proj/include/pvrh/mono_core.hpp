#pragma once

#include <map>
#include <string>
#include <vector>

#include "pvrh/mat2.hpp"
#include "pvrh/types.hpp"

namespace pvrh {

struct MonodromyPair {
  Mat2C m0;
  Mat2C m1;
  ThetaTriple theta;
  double tol = 1e-10;
};

struct Residual {
  std::string name;
  double value;
};

struct ValidationReport {
  std::vector<Residual> residuals;
  bool valid = false;
  // Set when M0 or M1 is +-I; the solution fiber over such data is not
  // a single point.
  bool non_unique_fiber = false;

  double max_residual() const;
};

ValidationReport validate_pair(const Mat2C& m0, const Mat2C& m1,
                               const ThetaTriple& theta, double tol);
ValidationReport validate_pair(const MonodromyPair& pair);

// c^{sigma3} (M0, M1) c^{-sigma3}
MonodromyPair gauge_transform(const MonodromyPair& pair, cplx c);

struct GaugeNormalForm {
  MonodromyPair pair;
  cplx scale{1.0, 0.0};
};

// Scales so that the first nonzero entry of (m0_21, m0_12, m1_21, m1_12)
// becomes 1. Entries with |e| <= zero_tol*(1+|pair|) count as zero.
GaugeNormalForm gauge_normalize(const MonodromyPair& pair,
                                double zero_tol = 0.0);

enum class RegionTag {
  R1,
  R2_0,
  R2_1,
  R2_01,
  R3plus,
  R3minus,
  R3,  // theta1 integer: R3+ and R3- coincide
  R4plus,
  R4minus,
  R4,  // theta0 integer
  R5,
};

const char* region_name(RegionTag tag);

struct Region {
  RegionTag tag;
  std::map<std::string, cplx> coords;
};

double pair_norm(const MonodromyPair& pair);

Region classify_region(const MonodromyPair& pair, double zero_tol = 0.0);

struct StokesMatrices {
  cplx s1{};
  cplx s2{};
  cplx thetaInf{};

  // S_k for any integer k; odd k lower triangular, even k upper.
  Mat2C S(int k) const;
};

StokesMatrices stokes_from_pair(const MonodromyPair& pair);

// | M1 M0 - S1^{-1} e^{-pi i thetaInf sigma3} S2^{-1} |
double stokes_reconstruction_residual(const MonodromyPair& pair,
                                      const StokesMatrices& st);

MonodromyPair monodromy_shift(const MonodromyPair& pair, int p);

// ([M^hat0]_s1, [M^hat1]_s1), valid for (theta0, theta1, -thetaInf).
MonodromyPair stokes_hat(const MonodromyPair& pair);
MonodromyPair stokes_check(const MonodromyPair& pair);

// Elements of the plain family (M_(p)) and of the hat family
// ([M^hat_(p)]_s1), tagged with their index.
enum class Family { Plain, Hat };

struct FamilyElement {
  MonodromyPair pair;
  int index = 0;
  Family family = Family::Plain;
};

enum class OpTag { m, minv, s0, s1, shat0, shat1 };

const char* op_name(OpTag op);
OpTag parse_op(const std::string& name);

FamilyElement family_member(const MonodromyPair& base, Family family, int p);

// Applies the operator through the single-matrix conjugations; the
// Stokes matrices are those of the family base.
FamilyElement apply_operator(OpTag op, const FamilyElement& element,
                             const MonodromyPair& base);

Mat2C u_p_matrix(const StokesMatrices& stokes, int p);

// Builds a valid pair with the given Stokes multipliers by splitting
// M1 M0 = S1^{-1} e^{-pi i thetaInf sigma3} S2^{-1}. `a` is the free
// entry m0_11 and `root` picks one of the two solutions for m0_21.
MonodromyPair pair_from_stokes(const ThetaTriple& theta, cplx s1, cplx s2,
                               cplx a, int root = 0);

}  // namespace pvrh
