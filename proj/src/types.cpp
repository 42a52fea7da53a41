#include "pvrh/types.hpp"

namespace pvrh {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ThetaViolation: return "ThetaViolation";
    case ErrorCode::ConditionMismatch: return "ConditionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PoleOfGamma: return "PoleOfGamma";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::InsidePoleDisk: return "InsidePoleDisk";
    case ErrorCode::AmbiguousSign: return "AmbiguousSign";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::WrongSector: return "WrongSector";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::ResonanceFailure: return "ResonanceFailure";
    case ErrorCode::CaseGap: return "CaseGap";
    case ErrorCode::OutsideValidity: return "OutsideValidity";
    case ErrorCode::UnderdeterminedCompletion: return "UnderdeterminedCompletion";
    case ErrorCode::NonUniqueFiber: return "NonUniqueFiber";
    case ErrorCode::UnmappedRegion: return "UnmappedRegion";
    case ErrorCode::NotPiMultiple: return "NotPiMultiple";
    case ErrorCode::IntegerTheta: return "IntegerTheta";
    case ErrorCode::HitSingularity: return "HitSingularity";
    case ErrorCode::ToleranceFailure: return "ToleranceFailure";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::LoopHitsSingularity: return "LoopHitsSingularity";
    case ErrorCode::SeedDefectTooLarge: return "SeedDefectTooLarge";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::HitSingularity:
    case ErrorCode::ToleranceFailure:
    case ErrorCode::LoopHitsSingularity:
    case ErrorCode::SeedDefectTooLarge:
    case ErrorCode::ResonanceFailure:
      return true;
    default:
      return false;
  }
}

bool near_integer(cplx z, double tol, long long* n) {
  double r = std::round(z.real());
  bool hit = std::abs(z - cplx(r, 0.0)) <= tol;
  if (hit && n) *n = static_cast<long long>(r);
  return hit;
}

}  // namespace pvrh
