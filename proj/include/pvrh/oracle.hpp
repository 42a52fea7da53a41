#pragma once

#include <string>
#include <vector>

#include "pvrh/asymptotics.hpp"
#include "pvrh/mono_core.hpp"
#include "pvrh/series.hpp"

namespace pvrh {

// ---------------------------------------------------------------------------
// Nonlinear side: the isomonodromy system in (y, zfrak, ln u)

struct PvSeed {
  cplx x{};
  cplx y{};
  cplx zfrak{};
  cplx log_u{};
};

PvSeed seed_from_y(cplx x, cplx y, cplx yprime, const ThetaTriple& theta,
                   cplx log_u = 0.0);
PvSeed seed_from_series(const FormalSeries& s, cplx x);
// Power series plus the exponential term of a truncated descriptor.
PvSeed seed_from_descriptor(const AsymptoticDescriptor& d,
                            const FormalSeries& s, cplx x);

struct TrajectorySample {
  cplx x, y, zfrak, log_u;
};

struct ODETrajectory {
  ThetaTriple theta;
  PvSeed seed;
  std::vector<TrajectorySample> samples;
  double tolerance = 0.0;
  int steps = 0;

  const TrajectorySample& back() const { return samples.back(); }
};

// y' recovered from the first equation of the system.
cplx yprime_from_zfrak(cplx x, cplx y, cplx zfrak, const ThetaTriple& theta);

struct IntegrateOptions {
  double tol = 1e-14;
  double guard = 1e-6;  // |y|, |y-1| below this count as a hit
  int samples = 2;      // including both ends
  int max_steps = 200000;
};

// Straight segment from seed.x to x_end (must not pass through 0).
ODETrajectory integrate_pv(const ThetaTriple& theta, const PvSeed& seed,
                           cplx x_end, const IntegrateOptions& opts = {});

struct UniformGrid {
  cplx x0{};
  cplx step{};
  std::vector<cplx> values;
};

struct ResidualReport {
  double max_abs = 0.0;
  std::vector<cplx> defect;  // at interior nodes 2..n-3
};

// Finite-difference P_V residual with the 5-point stencil.
ResidualReport pv_residual(const UniformGrid& grid, const PvParams& params);

// Samples of the native series variable centred at x.
UniformGrid series_grid(const FormalSeries& s, cplx x, cplx step, int n = 9);

// ---------------------------------------------------------------------------
// Linear side

struct LinearSystemState {
  double t = 1.0;
  double phi = 0.0;
  cplx y{}, zfrak{}, log_u{};
  ThetaTriple theta;

  cplx x() const { return t * std::exp(kI * phi); }
  cplx varpi() const;
  cplx uhat() const;
};

LinearSystemState state_from_sample(const TrajectorySample& s,
                                    const ThetaTriple& theta);

// Residues of the u-free coefficient at -e^{i phi} and e^{i phi}; the
// hatted coefficient is uhat^{s3/2} B uhat^{-s3/2}.
Mat2C residue_at_minus(const LinearSystemState& st);
Mat2C residue_at_plus(const LinearSystemState& st);
Mat2C coefficient_B(const LinearSystemState& st, cplx lambda);

struct FrameResult {
  Mat2C frame;
  std::vector<Mat2C> coeffs;  // Y_0 = I, Y_1, ..., Y_N
  double defect = 0.0;        // |Y' - B Y| / |Y|
};

// Formal solution at infinity, principal ln lambda. The frame is for the
// u-free coefficient; conjugate by uhat^{s3/2} for the hatted one.
FrameResult canonical_frame(const LinearSystemState& st, cplx lambda, int N);

enum class LoopTag { L0, L1 };

struct LoopSpec {
  cplx base_point{};
  LoopTag tag = LoopTag::L0;
  std::vector<cplx> polyline;  // starts and ends at base_point
};

// Down the imaginary axis to 0, out to the singular point, once around
// it counterclockwise on a polygon of the given radius, and back.
LoopSpec default_loop(const LinearSystemState& st, LoopTag tag,
                      double base_radius, double radius = 0.5,
                      int polygon = 16);

struct MonodromyOptions {
  int frame_order = 6;
  double frame_defect_max = 1e-8;
  double min_base_radius = 100.0;
  double loop_radius = 0.5;
  double taylor_tol = 1e-30;
};

struct DirectMonodromyResult {
  MonodromyPair pair;  // in the hatted gauge
  double trace_residual0 = 0.0, trace_residual1 = 0.0;
  double det_residual = 0.0;
  double frame_defect = 0.0;
  double base_radius = 0.0;
  int steps = 0;
};

// Transport of the identity along a polyline (u-free coefficient).
Mat2C transport(const LinearSystemState& st, const std::vector<cplx>& polyline,
                double tol = 1e-30, int* steps = nullptr);

DirectMonodromyResult direct_monodromy(const LinearSystemState& st,
                                       const MonodromyOptions& opts = {});
DirectMonodromyResult direct_monodromy(const LinearSystemState& st,
                                       const LoopSpec& l0, const LoopSpec& l1,
                                       const MonodromyOptions& opts = {});

struct DriftReport {
  std::vector<cplx> xs;
  std::vector<DirectMonodromyResult> results;
  std::vector<MonodromyPair> normalized;
  double drift = 0.0;
};

// Entry-wise distance |a-b|/(1+max(|a|,|b|)), maximised over both matrices.
double pair_distance(const MonodromyPair& a, const MonodromyPair& b);

DriftReport isomonodromy_drift(const ThetaTriple& theta, const PvSeed& seed,
                               const std::vector<cplx>& xs,
                               const MonodromyOptions& opts = {},
                               double zero_tol = 1e-9);

}  // namespace pvrh
