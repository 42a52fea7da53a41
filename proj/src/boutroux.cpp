#include "pvrh/boutroux.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace pvrh {

namespace {

constexpr double kQuadTol = 1e-13;

cplx sqrtA(cplx A) { return std::sqrt(A); }

}  // namespace

namespace {

// Differences z - e for the four branch points e = -1, -r, r, 1, carried
// separately so that points very close to a branch point keep their
// relative accuracy.
struct BranchOffsets {
  cplx zp1, zpr, zmr, zm1;
};

BranchOffsets offsets_from(cplx anchor, cplx delta, cplx r) {
  return {(anchor + 1.0) + delta, (anchor + r) + delta, (anchor - r) + delta,
          (anchor - 1.0) + delta};
}

cplx w_from(const BranchOffsets& o) {
  cplx s1 = o.zp1 * std::sqrt(o.zpr / o.zp1);
  cplx s2 = o.zm1 * std::sqrt(o.zmr / o.zm1);
  return -s1 * s2;
}

}  // namespace

cplx curve_w(cplx A, cplx z) {
  return w_from(offsets_from(z, 0.0, sqrtA(A)));
}

cplx cycle_integral(cplx A, Integrand integrand, Cycle cycle, double bow,
                    double* error) {
  const cplx r = sqrtA(A);
  if (integrand == Integrand::Period &&
      (std::abs(A) < 1e-14 || std::abs(1.0 - A) < 1e-14))
    throw Error(ErrorCode::DegenerateCurve,
                "period integral on a degenerate curve (A = 0 or 1)");
  // Both cycles equal twice a path integral between two branch points on
  // the upper sheet. With z = c + h sin(t) + off cos(t)^2 the square-root
  // endpoint behaviour cancels against dz/dt.
  // Endpoints p0 (t = -pi/2) and p1 (t = pi/2) are set to the branch
  // points exactly; the offset from the nearer one is formed without
  // cancellation.
  cplx p0, p1, h, off;
  if (cycle == Cycle::a) {
    // -r to r through the gap between the cuts
    p0 = -r;
    p1 = r;
    h = r;
    off = kI * bow * r;
  } else {
    // -1 to -r on the right-hand side of the cut
    p0 = -1.0;
    p1 = -r;
    h = (1.0 - r) / 2.0;
    off = -kI * (0.3 + bow) * h;
  }
  auto f = [&](double t) -> cplx {
    double st = std::sin(t), ct = std::cos(t);
    double c2 = ct * ct;
    BranchOffsets o = (t < 0.0)
                          ? offsets_from(p0, c2 * (h / (1.0 - st) + off), r)
                          : offsets_from(p1, c2 * (off - h / (1.0 + st)), r);
    cplx dz = h * ct - 2.0 * off * ct * st;
    cplx w = w_from(o);
    cplx v = (integrand == Integrand::Period) ? 1.0 / w : -w / (o.zm1 * o.zp1);
    return v * dz;
  };
  double err = 0.0;
  cplx I = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, -kPi / 2, kPi / 2, 20, kQuadTol, &err);
  if (error) *error = 2.0 * err;
  return 2.0 * I;
}

namespace {

struct Residuals {
  double ra, rb;
  double err;
};

Residuals boutroux_residuals(cplx A, double phi) {
  cplx e = std::exp(kI * phi);
  double ea = 0, eb = 0;
  cplx Ia = cycle_integral(A, Integrand::Boutroux, Cycle::a, 0.0, &ea);
  cplx Ib = cycle_integral(A, Integrand::Boutroux, Cycle::b, 0.0, &eb);
  return {(e * Ia).real(), (e * Ib).real(), std::max(ea, eb)};
}

// Newton on (Re A, Im A) with a finite-difference Jacobian and step halving.
cplx newton_boutroux(cplx A, double phi, double* res_out) {
  for (int it = 0; it < 60; ++it) {
    Residuals r = boutroux_residuals(A, phi);
    double nrm = std::hypot(r.ra, r.rb);
    if (nrm < 1e-13) {
      if (res_out) *res_out = nrm;
      return A;
    }
    double h = 1e-7 * std::max(1.0, std::abs(A));
    Residuals rx = boutroux_residuals(A + h, phi);
    Residuals ry = boutroux_residuals(A + kI * h, phi);
    double j11 = (rx.ra - r.ra) / h, j12 = (ry.ra - r.ra) / h;
    double j21 = (rx.rb - r.rb) / h, j22 = (ry.rb - r.rb) / h;
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    double dx = -(j22 * r.ra - j12 * r.rb) / det;
    double dy = -(-j21 * r.ra + j11 * r.rb) / det;
    cplx step(dx, dy);
    double lam = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k) {
      cplx trial = A + lam * step;
      if (trial.real() > -1e-3 && trial.real() < 1.0 + 1e-3) {
        Residuals rt = boutroux_residuals(trial, phi);
        if (std::hypot(rt.ra, rt.rb) < nrm) {
          A = trial;
          accepted = true;
          break;
        }
      }
      lam *= 0.5;
    }
    if (!accepted) {
      if (nrm < 1e-11) {
        if (res_out) *res_out = nrm;
        return A;
      }
      break;
    }
  }
  Residuals r = boutroux_residuals(A, phi);
  double nrm = std::hypot(r.ra, r.rb);
  if (nrm < 1e-11) {
    if (res_out) *res_out = nrm;
    return A;
  }
  throw Error(ErrorCode::NoConvergence,
              "Boutroux Newton iteration stalled at phi = " +
                  std::to_string(phi));
}

// Small-phi start: A ~ i eps with sin(phi) ~ eps ln(4/sqrt(eps)).
cplx small_phi_guess(double phi) {
  double s = std::sin(phi), eps = s;
  for (int i = 0; i < 50; ++i) eps = s / std::log(4.0 / std::sqrt(eps));
  return cplx(0.0, eps);
}

// A_phi for phi in (0, pi/2), by continuation from a small angle.
cplx solve_first_quadrant(double phi, double* res) {
  constexpr double kStart = 0.02;
  constexpr double kStep = 0.05;
  if (phi <= kStart) return newton_boutroux(small_phi_guess(phi), phi, res);
  cplx A = newton_boutroux(small_phi_guess(kStart), kStart, res);
  double cur = kStart;
  cplx prev = A;
  double prev_phi = cur;
  while (cur < phi) {
    double next = std::min(phi, cur + kStep);
    // linear extrapolation from the last two points
    cplx guess = A;
    if (cur > prev_phi) guess = A + (A - prev) * ((next - cur) / (cur - prev_phi));
    prev = A;
    prev_phi = cur;
    A = newton_boutroux(guess, next, res);
    cur = next;
  }
  return A;
}

}  // namespace

BoutrouxSolution solve_boutroux_uncached(double phi) {
  if (!std::isfinite(phi))
    throw Error(ErrorCode::MalformedInput, "non-finite phi");
  BoutrouxSolution sol;
  sol.phi = phi;
  // A_{phi +- pi} = A_phi: reduce into (-pi/2, pi/2]
  double r = phi - kPi * std::round(phi / kPi);
  if (r <= -kPi / 2) r += kPi;
  const double tiny = 1e-14;
  cplx A;
  double res = 0.0;
  if (std::abs(r) < tiny) {
    A = 0.0;
  } else if (std::abs(r - kPi / 2) < tiny) {
    A = 1.0;
  } else {
    A = solve_first_quadrant(std::abs(r), &res);
    if (r < 0) A = std::conj(A);
  }
  sol.A = A;
  if (A != 0.0 && A != 1.0) {
    double ea = 0, eb = 0;
    sol.omegaA = cycle_integral(A, Integrand::Period, Cycle::a, 0.0, &ea);
    sol.omegaB = cycle_integral(A, Integrand::Period, Cycle::b, 0.0, &eb);
    Residuals rr = boutroux_residuals(A, r);
    sol.residual_a = rr.ra;
    sol.residual_b = rr.rb;
    sol.quadrature_error = std::max({ea, eb, rr.err});
  }
  return sol;
}

BoutrouxSolution solve_boutroux(double phi) {
  static std::shared_mutex mutex;
  static std::map<double, BoutrouxSolution> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(phi);
    if (it != cache.end()) return it->second;
  }
  BoutrouxSolution sol = solve_boutroux_uncached(phi);
  std::unique_lock lock(mutex);
  cache.emplace(phi, sol);
  return sol;
}

// ---------------------------------------------------------------------------
// Jacobi elliptic functions

namespace {

// K(m) = pi / (2 agm(1, sqrt(1-m))), with the "right" choice of square
// roots so that the principal value results.
cplx complete_k(cplx m) {
  cplx a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 60; ++i) {
    cplx an = 0.5 * (a + b);
    cplx bn = std::sqrt(a * b);
    if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
  }
  return kPi / (2.0 * a);
}

struct Thetas {
  cplx t1, t2, t3, t4;
};

// Theta functions at (z, q), q = e^{i pi tau}. Sums stop once the terms
// fall below 1e-17 relative to the running value.
Thetas theta_all(cplx z, cplx tau) {
  Thetas th{0.0, 0.0, 1.0, 1.0};
  for (int n = 0; n < 200; ++n) {
    double hn = n + 0.5;
    cplx qh = std::exp(kI * kPi * tau * (hn * hn));
    cplx sgn = (n % 2 == 0) ? 1.0 : -1.0;
    cplx s = std::sin(static_cast<double>(2 * n + 1) * z);
    cplx c = std::cos(static_cast<double>(2 * n + 1) * z);
    th.t1 += 2.0 * sgn * qh * s;
    th.t2 += 2.0 * qh * c;
    double nn = n + 1.0;
    cplx qn = std::exp(kI * kPi * tau * (nn * nn));
    cplx c2 = std::cos(2.0 * nn * z);
    cplx sg2 = (static_cast<int>(nn) % 2 == 0) ? 1.0 : -1.0;
    th.t3 += 2.0 * qn * c2;
    th.t4 += 2.0 * sg2 * qn * c2;
    double mag = std::abs(qh) * std::exp(std::abs(z.imag()) * (2 * n + 3));
    if (mag < 1e-18) break;
  }
  return th;
}

JacobiValues jacobi_theta(cplx u, cplx m) {
  cplx K = complete_k(m), Kp = complete_k(1.0 - m);
  cplx tau = kI * Kp / K;
  cplx z = u * kPi / (2.0 * K);
  // reduce Im z by multiples of pi*tau, Re z by multiples of pi
  double sn_sign = 1.0, cn_sign = 1.0, dn_sign = 1.0;
  cplx pt = kPi * tau;
  double nt = std::round(z.imag() / pt.imag());
  if (nt != 0.0) {
    z -= nt * pt;
    if (static_cast<long long>(nt) % 2 != 0) {
      cn_sign = -cn_sign;
      dn_sign = -dn_sign;
    }
  }
  double np = std::round(z.real() / kPi);
  if (np != 0.0) {
    z -= np * kPi;
    if (static_cast<long long>(np) % 2 != 0) {
      sn_sign = -sn_sign;
      cn_sign = -cn_sign;
    }
  }
  Thetas t0 = theta_all(0.0, tau);
  Thetas tz = theta_all(z, tau);
  JacobiValues v;
  v.sn = sn_sign * (t0.t3 / t0.t2) * tz.t1 / tz.t4;
  v.cn = cn_sign * (t0.t4 / t0.t2) * tz.t2 / tz.t4;
  v.dn = dn_sign * (t0.t4 / t0.t3) * tz.t3 / tz.t4;
  return v;
}

double nome_abs(cplx m) {
  cplx tau = kI * complete_k(1.0 - m) / complete_k(m);
  return std::exp(-kPi * tau.imag());
}

}  // namespace

JacobiValues jacobi_elliptic(cplx u, cplx m, double guard) {
  JacobiValues v;
  if (std::abs(m) < 1e-8) {
    cplx s = std::sin(u), c = std::cos(u);
    cplx corr = (m / 4.0) * (u - s * c);
    v.sn = s - corr * c;
    v.cn = c + corr * s;
    v.dn = 1.0 - (m / 2.0) * s * s;
  } else if (std::abs(1.0 - m) < 1e-8) {
    cplx m1 = 1.0 - m;
    cplx th = std::tanh(u), sech = 1.0 / std::cosh(u);
    cplx sc = std::sinh(u) * std::cosh(u);
    v.sn = th + (m1 / 4.0) * (sc - u) * sech * sech;
    v.cn = sech - (m1 / 4.0) * (sc - u) * th * sech;
    v.dn = sech + (m1 / 4.0) * (sc + u) * th * sech;
  } else if (nome_abs(m) <= nome_abs(1.0 - m)) {
    v = jacobi_theta(u, m);
  } else {
    // imaginary transformation to the complementary parameter
    JacobiValues w = jacobi_theta(kI * u, 1.0 - m);
    v.sn = -kI * w.sn / w.cn;
    v.cn = 1.0 / w.cn;
    v.dn = w.dn / w.cn;
  }
  if (!std::isfinite(std::abs(v.sn)) || std::abs(v.sn) > guard)
    throw Error(ErrorCode::NearPole, "sn evaluated near a pole");
  return v;
}

cplx jacobi_sn(cplx u, cplx k) { return jacobi_elliptic(u, k * k).sn; }

cplx sn_derivative(cplx u, cplx k) {
  JacobiValues v = jacobi_elliptic(u, k * k);
  return v.cn * v.dn;
}

// ---------------------------------------------------------------------------

cplx reduce_mod_lattice(cplx z, cplx omegaA, cplx omegaB) {
  cplx e1 = 2.0 * omegaA, e2 = 2.0 * omegaB;
  double det = e1.real() * e2.imag() - e1.imag() * e2.real();
  if (std::abs(det) < 1e-14 * std::abs(e1) * std::abs(e2))
    throw Error(ErrorCode::DegenerateLattice, "periods are parallel");
  double s = (z.real() * e2.imag() - z.imag() * e2.real()) / det;
  double t = (e1.real() * z.imag() - e1.imag() * z.real()) / det;
  double fs = std::floor(s + 0.5), ft = std::floor(t + 0.5);
  return z - fs * e1 - ft * e2;
}

PoleLattice pole_lattice(cplx base, const BoutrouxSolution& sol,
                         const Window& window) {
  PoleLattice pl{base, sol.omegaA, sol.omegaB, window, {}};
  cplx e1 = sol.omegaA, e2 = 2.0 * sol.omegaB;
  double det = e1.real() * e2.imag() - e1.imag() * e2.real();
  if (std::abs(det) < 1e-12 * std::abs(e1) * std::abs(e2))
    throw Error(ErrorCode::DegenerateLattice, "periods are parallel");
  if (window.half_width <= 0.0 && window.half_height <= 0.0) return pl;
  // lattice coordinates of the window corners bound the index search
  cplx origin = base + sol.omegaB;
  double smin = 1e300, smax = -1e300, tmin = 1e300, tmax = -1e300;
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) {
      cplx z = window.center + cplx(sx * window.half_width, sy * window.half_height) -
               origin;
      double s = (z.real() * e2.imag() - z.imag() * e2.real()) / det;
      double t = (e1.real() * z.imag() - e1.imag() * z.real()) / det;
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
  for (long long i = static_cast<long long>(std::floor(smin));
       i <= static_cast<long long>(std::ceil(smax)); ++i)
    for (long long j = static_cast<long long>(std::floor(tmin));
         j <= static_cast<long long>(std::ceil(tmax)); ++j) {
      cplx p = origin + static_cast<double>(i) * e1 + static_cast<double>(j) * e2;
      if (window.contains(p)) pl.points.push_back(p);
    }
  return pl;
}

}  // namespace pvrh
