#include "pvrh/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/multiprecision/complex128.hpp>
#include <boost/numeric/odeint.hpp>

namespace pvrh {

namespace {

using qc = boost::multiprecision::complex128;
using Mat2Q = Mat2T<qc>;

qc to_q(cplx z) { return qc(z.real(), z.imag()); }
cplx to_d(const qc& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
Mat2Q to_q(const Mat2C& m) {
  return {to_q(m.m11), to_q(m.m12), to_q(m.m21), to_q(m.m22)};
}
Mat2C to_d(const Mat2Q& m) {
  return {to_d(m.m11), to_d(m.m12), to_d(m.m21), to_d(m.m22)};
}
double qabs(const qc& z) {
  return std::abs(to_d(z));
}
double qmax(const Mat2Q& m) {
  return std::max({qabs(m.m11), qabs(m.m12), qabs(m.m21), qabs(m.m22)});
}

Mat2C sigma3() { return Mat2C::diag(1.0, -1.0); }

// half combinations used throughout the system
struct Halves {
  cplx p;  // (t0 - t1 + tInf)/2
  cplx q;  // (t0 + t1 + tInf)/2
  cplx r;  // (3 t0 + t1 + tInf)/2
  cplx t0;
};

Halves halves(const ThetaTriple& th) {
  return {(th.theta0 - th.theta1 + th.thetaInf) / 2.0,
          (th.theta0 + th.theta1 + th.thetaInf) / 2.0,
          (3.0 * th.theta0 + th.theta1 + th.thetaInf) / 2.0, th.theta0};
}

using PvState = std::array<cplx, 3>;  // y, zfrak, ln u

void pv_system(const Halves& h, cplx x, const PvState& s, PvState& ds) {
  const cplx y = s[0], z = s[1];
  ds[0] = (x * y - 2.0 * z * (y - 1.0) * (y - 1.0) -
           (y - 1.0) * (h.p * y - h.r)) / x;
  ds[1] = (y * z * (z + h.p) - (z + h.t0) * (z + h.q) / y) / x;
  ds[2] = (-2.0 * z - h.t0 + y * (z + h.p) + (z + h.q) / y) / x;
}

double seg_point_distance(cplx a, cplx b, cplx p) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + s * d - p);
}

// One Taylor step of  (l-a)(l-b) Y' = Q(l) Y  from lc by h, where
// Q = (t/4) s3 (l-a)(l-b) + A0 (l-b) + A1 (l-a),  a = -e^{i phi}, b = e^{i phi}.
bool taylor_step(const qc& lc, const qc& h, const qc& a, const qc& b,
                 const qc& tq, const Mat2Q& A0, const Mat2Q& A1, Mat2Q& Y,
                 double tol) {
  const qc da = lc - a, db = lc - b;
  const qc P0 = da * db, P1 = da + db;
  const qc quarter_t = tq / qc(4);
  const Mat2Q s3 = Mat2Q::diag(qc(1), qc(-1));
  const Mat2Q Q0 = s3 * (quarter_t * P0) + A0 * db + A1 * da;
  const Mat2Q Q1 = s3 * (quarter_t * P1) + A0 + A1;
  const Mat2Q Q2 = s3 * quarter_t;
  const qc inv_P0 = qc(1) / P0;
  const qc h2 = h * h;

  Mat2Q zm2{}, zm1{}, z = Y, sum = Y;
  double scale = qmax(Y);
  int small_run = 0;
  for (int k = 0; k < 400; ++k) {
    // Z_{k+1} = h [Q0 Z_k + h Q1 Z_{k-1} + h^2 Q2 Z_{k-2}
    //              - P1 k Z_k - h (k-1) Z_{k-1}] / (P0 (k+1))
    Mat2Q acc = Q0 * z - z * (P1 * qc(k));
    if (k >= 1) acc = acc + (Q1 * zm1 - zm1 * qc(k - 1)) * h;
    if (k >= 2) acc = acc + (Q2 * zm2) * h2;
    Mat2Q next = acc * (h * inv_P0 / qc(k + 1));
    zm2 = zm1;
    zm1 = z;
    z = next;
    sum = sum + z;
    scale = std::max(scale, qmax(sum));
    if (qmax(z) <= tol * scale) {
      if (++small_run >= 3) {
        Y = sum;
        return true;
      }
    } else {
      small_run = 0;
    }
  }
  return false;
}

struct QuadSystem {
  qc a, b, t;
  Mat2Q A0, A1;
  cplx ad, bd;
  double td;
  double r0, r1;  // residue sizes
};

QuadSystem quad_system(const LinearSystemState& st) {
  QuadSystem q;
  cplx e = std::exp(kI * st.phi);
  q.ad = -e;
  q.bd = e;
  q.a = to_q(-e);
  q.b = to_q(e);
  q.td = st.t;
  q.t = qc(st.t);
  Mat2C a0 = residue_at_minus(st), a1 = residue_at_plus(st);
  q.A0 = to_q(a0);
  q.A1 = to_q(a1);
  q.r0 = max_abs(a0);
  q.r1 = max_abs(a1);
  return q;
}

Mat2Q transport_q(const QuadSystem& q, const std::vector<cplx>& poly,
                  double tol, int* steps_out) {
  Mat2Q Y = Mat2Q::identity();
  int steps = 0;
  const int budget = 10000;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    const cplx A = poly[i], B = poly[i + 1];
    for (cplx s : {q.ad, q.bd})
      if (seg_point_distance(A, B, s) < 1e-3)
        throw Error(ErrorCode::LoopHitsSingularity,
                    "loop segment passes within 1e-3 of a singular point");
    // march in the double parameter, steps as exact quad differences
    cplx cur = A;
    qc lc = to_q(A);
    while (true) {
      cplx rem = B - cur;
      double remlen = std::abs(rem);
      if (remlen == 0.0) break;
      double dist = std::min(std::abs(cur - q.ad), std::abs(cur - q.bd));
      double rate = q.td / 4.0 + q.r0 / std::abs(cur - q.ad) +
                    q.r1 / std::abs(cur - q.bd);
      double hlen = std::min({remlen, 0.3 * dist, 2.5 / rate});
      bool last = hlen >= remlen;
      for (int tries = 0;; ++tries) {
        cplx next = last ? B : cur + rem * (hlen / remlen);
        qc hq = to_q(next) - lc;
        Mat2Q Yn = Y;
        if (taylor_step(lc, hq, q.a, q.b, q.t, q.A0, q.A1, Yn, tol)) {
          Y = Yn;
          cur = next;
          lc = to_q(next);
          break;
        }
        if (tries > 30 || hlen < 1e-12)
          throw Error(ErrorCode::LoopHitsSingularity,
                      "Taylor transport failed to converge");
        hlen *= 0.5;
        last = false;
      }
      if (++steps > budget)
        throw Error(ErrorCode::ToleranceFailure, "loop step budget exceeded");
      if (cur == B) break;
    }
  }
  if (steps_out) *steps_out += steps;
  return Y;
}

}  // namespace

// ---------------------------------------------------------------------------

cplx yprime_from_zfrak(cplx x, cplx y, cplx zfrak, const ThetaTriple& theta) {
  PvState s{y, zfrak, 0.0}, ds;
  pv_system(halves(theta), x, s, ds);
  return ds[0];
}

PvSeed seed_from_y(cplx x, cplx y, cplx yprime, const ThetaTriple& theta,
                   cplx log_u) {
  if (x == 0.0 || y == 0.0 || y == 1.0)
    throw Error(ErrorCode::DomainViolation, "seed on a singular locus");
  return {x, y, zfrak_from_y(x, y, yprime, theta), log_u};
}

PvSeed seed_from_series(const FormalSeries& s, cplx x) {
  return seed_from_y(x, s.y(x), s.yprime(x), s.theta);
}

PvSeed seed_from_descriptor(const AsymptoticDescriptor& d,
                            const FormalSeries& s, cplx x) {
  auto [y, yp] = eval_trunc_d1(x, d, s);
  return seed_from_y(x, y, yp, d.theta);
}

ODETrajectory integrate_pv(const ThetaTriple& theta, const PvSeed& seed,
                           cplx x_end, const IntegrateOptions& opts) {
  namespace ode = boost::numeric::odeint;
  if (seed.x == 0.0 || seed.y == 0.0 || seed.y == 1.0)
    throw Error(ErrorCode::DomainViolation, "seed on a singular locus");
  if (seg_point_distance(seed.x, x_end, 0.0) < 1e-8)
    throw Error(ErrorCode::DomainViolation, "path passes through x = 0");

  const Halves h = halves(theta);
  const cplx span = x_end - seed.x;
  const double len = std::abs(span);
  const cplx dir = len > 0 ? span / len : cplx(1.0);

  ODETrajectory traj;
  traj.theta = theta;
  traj.seed = seed;
  traj.tolerance = opts.tol;
  traj.samples.push_back({seed.x, seed.y, seed.zfrak, seed.log_u});
  if (len == 0.0) return traj;

  auto rhs = [&](const PvState& s, PvState& ds, double arc) {
    const cplx x = seed.x + dir * arc;
    if (std::abs(s[0]) < opts.guard || std::abs(s[0] - 1.0) < opts.guard)
      throw Error(ErrorCode::HitSingularity,
                  "y reached a singular value near x = (" +
                      std::to_string(x.real()) + ", " +
                      std::to_string(x.imag()) + ")");
    pv_system(h, x, s, ds);
    for (auto& v : ds) v *= dir;
  };

  const int n = std::max(2, opts.samples);
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) times[i] = len * i / (n - 1);

  PvState state{seed.y, seed.zfrak, seed.log_u};
  int steps = 0;
  auto observe = [&](const PvState& s, double arc) {
    if (arc == 0.0) return;
    traj.samples.push_back({seed.x + dir * arc, s[0], s[1], s[2]});
  };
  try {
    auto stepper = ode::make_controlled(
        opts.tol, opts.tol, ode::runge_kutta_fehlberg78<PvState>());
    steps = static_cast<int>(ode::integrate_times(
        stepper, rhs, state, times.begin(), times.end(),
        std::min(0.01, len / 10.0), observe,
        ode::max_step_checker(opts.max_steps)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ToleranceFailure,
                std::string("integration failed: ") + e.what());
  }
  for (const auto& s : traj.samples)
    if (!std::isfinite(std::abs(s.y)) || !std::isfinite(std::abs(s.zfrak)))
      throw Error(ErrorCode::HitSingularity, "non-finite state");
  traj.steps = steps;
  return traj;
}

ResidualReport pv_residual(const UniformGrid& grid, const PvParams& params) {
  const auto& v = grid.values;
  const int n = static_cast<int>(v.size());
  if (n < 5) throw Error(ErrorCode::GridTooCoarse, "need at least 5 samples");
  const cplx h = grid.step;
  double xmin = 1e300;
  for (int j = 0; j < n; ++j)
    xmin = std::min(xmin, std::abs(grid.x0 + static_cast<double>(j) * h));
  if (std::abs(h) == 0.0 || std::abs(h) > 0.1 * xmin)
    throw Error(ErrorCode::GridTooCoarse,
                "step must be nonzero and at most |x|/10");
  ResidualReport rep;
  for (int j = 2; j + 2 < n; ++j) {
    const cplx x = grid.x0 + static_cast<double>(j) * h;
    cplx d1 = (v[j - 2] - 8.0 * v[j - 1] + 8.0 * v[j + 1] - v[j + 2]) /
              (12.0 * h);
    cplx d2 = (-v[j - 2] + 16.0 * v[j - 1] - 30.0 * v[j] + 16.0 * v[j + 1] -
               v[j + 2]) / (12.0 * h * h);
    cplx def = pv_defect(x, v[j], d1, d2, params);
    rep.defect.push_back(def);
    rep.max_abs = std::max(rep.max_abs, std::abs(def));
  }
  return rep;
}

UniformGrid series_grid(const FormalSeries& s, cplx x, cplx step, int n) {
  UniformGrid g;
  g.step = step;
  g.x0 = x - 0.5 * (n - 1) * step;
  for (int j = 0; j < n; ++j)
    g.values.push_back(s.native(g.x0 + static_cast<double>(j) * step));
  return g;
}

// ---------------------------------------------------------------------------

cplx LinearSystemState::varpi() const {
  return std::exp(kI * phi) * t / 4.0 +
         theta.thetaInf / 2.0 * (kI * phi + std::log(2.0));
}

cplx LinearSystemState::uhat() const { return std::exp(log_u - 2.0 * varpi()); }

LinearSystemState state_from_sample(const TrajectorySample& s,
                                    const ThetaTriple& theta) {
  LinearSystemState st;
  st.t = std::abs(s.x);
  st.phi = std::arg(s.x);
  st.y = s.y;
  st.zfrak = s.zfrak;
  st.log_u = s.log_u;
  st.theta = theta;
  return st;
}

Mat2C residue_at_minus(const LinearSystemState& st) {
  const cplx z = st.zfrak, t0 = st.theta.theta0;
  return {z + t0 / 2.0, -z - t0, z, -z - t0 / 2.0};
}

Mat2C residue_at_plus(const LinearSystemState& st) {
  const Halves h = halves(st.theta);
  const cplx z = st.zfrak, y = st.y;
  const cplx w = z + (st.theta.theta0 + st.theta.thetaInf) / 2.0;
  return {-w, y * (z + h.p), -(z + h.q) / y, w};
}

Mat2C coefficient_B(const LinearSystemState& st, cplx lambda) {
  const cplx e = std::exp(kI * st.phi);
  return sigma3() * cplx(st.t / 4.0) +
         residue_at_minus(st) * (1.0 / (lambda + e)) +
         residue_at_plus(st) * (1.0 / (lambda - e));
}

FrameResult canonical_frame(const LinearSystemState& st, cplx lambda, int N) {
  if (N < 0) throw Error(ErrorCode::MalformedInput, "negative frame order");
  const cplx e = std::exp(kI * st.phi);
  const Mat2C A0 = residue_at_minus(st), A1 = residue_at_plus(st);
  const cplx ti = st.theta.thetaInf;
  const double t = st.t;
  const Mat2C s3 = sigma3();
  // B = (t/4) s3 + sum_{m>=1} B_m lambda^{-m}
  std::vector<Mat2C> B(N + 2);
  for (int m = 1; m <= N + 1; ++m)
    B[m] = A0 * std::pow(-e, m - 1) + A1 * std::pow(e, m - 1);

  std::vector<Mat2C> Y(N + 1);
  Y[0] = Mat2C::identity();
  for (int k = 1; k <= N + 1; ++k) {
    if (k >= 2) {
      cplx s11 = B[1].m12 * Y[k - 1].m21, s22 = B[1].m21 * Y[k - 1].m12;
      for (int m = 2; m <= k; ++m) {
        Mat2C p = B[m] * Y[k - m];
        s11 += p.m11;
        s22 += p.m22;
      }
      Y[k - 1].m11 = -s11 / double(k - 1);
      Y[k - 1].m22 = -s22 / double(k - 1);
    }
    if (k > N) break;
    Mat2C R = Y[k - 1] * double(k - 1) + Y[k - 1] * s3 * (ti / 2.0);
    for (int m = 1; m <= k; ++m) R = R + B[m] * Y[k - m];
    Y[k] = Mat2C{0.0, -(2.0 / t) * R.m12, (2.0 / t) * R.m21, 0.0};
  }

  Mat2C Phi{}, dPhi{};
  const cplx il = 1.0 / lambda;
  cplx pw = 1.0;
  for (int j = 0; j <= N; ++j) {
    Phi = Phi + Y[j] * pw;
    dPhi = dPhi + Y[j] * (-double(j) * pw * il);
    pw *= il;
  }
  const cplx ex = t * lambda / 4.0 - ti / 2.0 * std::log(lambda);
  FrameResult out;
  out.coeffs = Y;
  out.frame = Phi * Mat2C::diag(std::exp(ex), std::exp(-ex));
  Mat2C D = dPhi + Phi * s3 * (t / 4.0 - ti / (2.0 * lambda)) -
            coefficient_B(st, lambda) * Phi;
  out.defect = max_abs(D) / max_abs(Phi);
  return out;
}

LoopSpec default_loop(const LinearSystemState& st, LoopTag tag,
                      double base_radius, double radius, int polygon) {
  const cplx e = std::exp(kI * st.phi);
  const cplx c = tag == LoopTag::L0 ? -e : e;
  // entry point on the side facing the origin
  const cplx toward0 = -c / std::abs(c);
  LoopSpec L;
  L.tag = tag;
  L.base_point = kI * base_radius;
  L.polyline = {L.base_point, 0.0};
  const double a0 = std::arg(toward0);
  for (int k = 0; k <= polygon; ++k)
    L.polyline.push_back(c + radius * std::exp(kI * (a0 + 2.0 * kPi * k / polygon)));
  L.polyline.back() = L.polyline[2];
  L.polyline.push_back(0.0);
  L.polyline.push_back(L.base_point);
  return L;
}

Mat2C transport(const LinearSystemState& st, const std::vector<cplx>& polyline,
                double tol, int* steps) {
  return to_d(transport_q(quad_system(st), polyline, tol, steps));
}

DirectMonodromyResult direct_monodromy(const LinearSystemState& st,
                                       const MonodromyOptions& opts) {
  if (!(std::abs(st.phi) < kPi / 2))
    throw Error(ErrorCode::WrongSector, "direct_monodromy needs |phi| < pi/2");
  double R = opts.min_base_radius;
  while (canonical_frame(st, kI * R, opts.frame_order).defect >
         opts.frame_defect_max) {
    R *= 2.0;
    if (R > 1e6)
      throw Error(ErrorCode::SeedDefectTooLarge,
                  "canonical frame defect stays above threshold");
  }
  return direct_monodromy(st, default_loop(st, LoopTag::L0, R, opts.loop_radius),
                          default_loop(st, LoopTag::L1, R, opts.loop_radius),
                          opts);
}

DirectMonodromyResult direct_monodromy(const LinearSystemState& st,
                                       const LoopSpec& l0, const LoopSpec& l1,
                                       const MonodromyOptions& opts) {
  if (l0.base_point != l1.base_point)
    throw Error(ErrorCode::MalformedInput, "loops must share the base point");
  for (const LoopSpec* L : {&l0, &l1})
    if (L->polyline.size() < 3 || L->polyline.front() != L->base_point ||
        L->polyline.back() != L->base_point)
      throw Error(ErrorCode::MalformedInput, "loop must start and end at the base point");
  if (st.y == 0.0)
    throw Error(ErrorCode::DomainViolation, "y = 0 in the linear system");

  DirectMonodromyResult res;
  const cplx p = l0.base_point;
  FrameResult fr = canonical_frame(st, p, opts.frame_order);
  if (fr.defect > opts.frame_defect_max)
    throw Error(ErrorCode::SeedDefectTooLarge,
                "canonical frame defect above threshold at the base point");
  res.frame_defect = fr.defect;
  res.base_radius = std::abs(p);

  const QuadSystem q = quad_system(st);
  const Mat2Q F = to_q(fr.frame);
  const Mat2Q Finv = F.inverse();
  Mat2Q T0 = transport_q(q, l0.polyline, opts.taylor_tol, &res.steps);
  Mat2Q T1 = transport_q(q, l1.polyline, opts.taylor_tol, &res.steps);
  res.det_residual = std::max(qabs(T0.det() - qc(1)), qabs(T1.det() - qc(1)));

  MonodromyPair pair;
  pair.theta = st.theta;
  pair.tol = 1e-3;
  pair.m0 = to_d(Finv * T0 * F);
  pair.m1 = to_d(Finv * T1 * F);
  // hatted gauge: uhat^{s3/2} M uhat^{-s3/2}
  pair = gauge_transform(pair, std::exp((st.log_u - 2.0 * st.varpi()) / 2.0));
  res.pair = pair;
  res.trace_residual0 =
      std::abs(pair.m0.trace() - 2.0 * cos_pi(st.theta.theta0));
  res.trace_residual1 =
      std::abs(pair.m1.trace() - 2.0 * cos_pi(st.theta.theta1));
  return res;
}

double pair_distance(const MonodromyPair& a, const MonodromyPair& b) {
  auto rel = [](cplx u, cplx v) {
    return std::abs(u - v) / (1.0 + std::max(std::abs(u), std::abs(v)));
  };
  double d = 0.0;
  for (auto [ma, mb] : {std::pair{a.m0, b.m0}, std::pair{a.m1, b.m1}}) {
    d = std::max({d, rel(ma.m11, mb.m11), rel(ma.m12, mb.m12),
                  rel(ma.m21, mb.m21), rel(ma.m22, mb.m22)});
  }
  return d;
}

DriftReport isomonodromy_drift(const ThetaTriple& theta, const PvSeed& seed,
                               const std::vector<cplx>& xs,
                               const MonodromyOptions& opts, double zero_tol) {
  DriftReport rep;
  for (cplx x : xs) {
    TrajectorySample s{seed.x, seed.y, seed.zfrak, seed.log_u};
    if (x != seed.x) s = integrate_pv(theta, seed, x).back();
    DirectMonodromyResult r = direct_monodromy(state_from_sample(s, theta), opts);
    rep.xs.push_back(x);
    rep.results.push_back(r);
    rep.normalized.push_back(gauge_normalize(r.pair, zero_tol).pair);
  }
  for (size_t i = 0; i < rep.normalized.size(); ++i)
    for (size_t j = i + 1; j < rep.normalized.size(); ++j)
      rep.drift = std::max(rep.drift,
                           pair_distance(rep.normalized[i], rep.normalized[j]));
  return rep;
}

}  // namespace pvrh
