#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pvrh {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorCode {
  MalformedInput,
  DomainViolation,
  ThetaViolation,
  ConditionMismatch,
  NoConvergence,
  PoleOfGamma,
  NearPole,
  InsidePoleDisk,
  AmbiguousSign,
  WrongFamily,
  WrongSector,
  DegenerateCurve,
  DegenerateLattice,
  ResonanceFailure,
  CaseGap,
  OutsideValidity,
  UnderdeterminedCompletion,
  NonUniqueFiber,
  UnmappedRegion,
  NotPiMultiple,
  IntegerTheta,
  HitSingularity,
  ToleranceFailure,
  GridTooCoarse,
  LoopHitsSingularity,
  SeedDefectTooLarge,
};

const char* error_name(ErrorCode code);

// Errors that signal numeric trouble rather than bad input.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// exp(pi*i*z) with the real part of z reduced first, so that integer
// arguments give exact signs.
inline cplx exp_pi_i(cplx z) {
  double n = std::round(z.real());
  double r = z.real() - n;
  cplx v = std::exp(kPi * cplx(-z.imag(), r));
  return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

// sin(pi*z) with argument reduction.
inline cplx sin_pi(cplx z) {
  double n = std::round(z.real());
  cplx r(z.real() - n, z.imag());
  cplx v = std::sin(kPi * r);
  return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

// cos(pi*z), exact at integers and half integers.
inline cplx cos_pi(cplx z) { return sin_pi(cplx(z.real() + 0.5, z.imag())); }

struct ThetaTriple {
  cplx theta0{};
  cplx theta1{};
  cplx thetaInf{};

  cplx a() const {
    cplx s = theta0 - theta1 + thetaInf;
    return s * s / 8.0;
  }
  cplx b() const {
    cplx s = theta0 - theta1 - thetaInf;
    return s * s / 8.0;
  }
  cplx c() const { return 1.0 - theta0 - theta1; }
  ThetaTriple negated_inf() const { return {theta0, theta1, -thetaInf}; }
};

// Nearest integer if |z - n| <= tol, used for the membership tests on
// theta combinations.
bool near_integer(cplx z, double tol, long long* n = nullptr);

inline constexpr double kIntTol = 1e-12;

// z in N = {1, 2, ...}
inline bool in_naturals(cplx z, double tol = kIntTol) {
  long long n = 0;
  return near_integer(z, tol, &n) && n >= 1;
}
// z in -N u {0}
inline bool in_nonpositive(cplx z, double tol = kIntTol) {
  long long n = 0;
  return near_integer(z, tol, &n) && n <= 0;
}
// z in N u {0}
inline bool in_nonnegative(cplx z, double tol = kIntTol) {
  long long n = 0;
  return near_integer(z, tol, &n) && n >= 0;
}

}  // namespace pvrh
