// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "pvrh/asymptotics.hpp"
#include "pvrh/char_variety.hpp"
#include "pvrh/oracle.hpp"
#include "pvrh/rh_dispatch.hpp"
#include "pvrh/sampling.hpp"

using namespace pvrh;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && dt > time_limit) {
    o.ok = false;
    o.detail += " (over time limit)";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-28s %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

MonodromyPair r2_01_pair(const ThetaTriple& th, cplx g) {
  MonodromyPair p;
  p.theta = th;
  cplx e = exp_pi_i(-th.thetaInf);
  p.m0 = {0.0, -1.0, 1.0, 2.0 * cos_pi(th.theta0)};
  p.m1 = {0.0, e, -1.0 / e, 2.0 * cos_pi(th.theta1)};
  return gauge_transform(p, g);
}

const ThetaTriple kTheta{1.0 / 3, 1.0 / 5, 1.0 / 7};

}  // namespace

int main() {
  std::mt19937_64 rng(20240229);

  run(1, "boutroux anchors/symmetry", 10.0, [] {
    double a0 = std::abs(solve_boutroux_uncached(0.0).A);
    double a1 = std::abs(solve_boutroux_uncached(kPi / 2).A - 1.0);
    double sym = 0.0;
    for (int i = 0; i < 25; ++i) {
      double phi = -kPi / 2 + (i + 0.5) * kPi / 25;
      cplx ap = solve_boutroux_uncached(phi).A;
      cplx am = solve_boutroux_uncached(-phi).A;
      sym = std::max(sym, std::abs(am - std::conj(ap)));
    }
    return Outcome{a0 < 1e-8 && a1 < 1e-8 && sym < 1e-8,
                   fmt("|A0|=%.1e |A_pi/2-1|=%.1e sym=%.1e", a0, a1, sym)};
  });

  std::vector<MonodromyPair> pairs;
  for (int i = 0; i < 1000; ++i) pairs.push_back(random_pair(rng));

  run(2, "fricke residual", 1.0, [&] {
    double worst = 0.0;
    for (const auto& p : pairs)
      worst = std::max(worst, fricke_relative_residual(char_coords(p)));
    return Outcome{worst < 1e-12, fmt("max=%.2e over 1000 pairs", worst)};
  });

  run(3, "monodromy action", 0.0, [&] {
    double worst = 0.0;
    bool x2_fixed = true;
    for (const auto& p : pairs) {
      auto a = char_coords(p);
      auto b = monodromy_action(a);
      Mat2C g = p.m1 * p.m0, gi = g.inverse();
      MonodromyPair c = p;
      c.m0 = g * p.m0 * gi;
      c.m1 = g * p.m1 * gi;
      auto d = char_coords(c);
      double s = 1.0 + std::max({std::abs(d.x0), std::abs(d.x1), std::abs(d.x2)});
      worst = std::max({worst, std::abs(b.x0 - d.x0) / s, std::abs(b.x1 - d.x1) / s,
                        std::abs(b.x2 - d.x2) / s});
      x2_fixed = x2_fixed && b.x2 == a.x2;
    }
    return Outcome{worst < 1e-12 && x2_fixed,
                   fmt("max rel=%.2e x2 fixed=%g", worst, x2_fixed ? 1.0 : 0.0)};
  });

  run(4, "operator identities", 0.0, [&] {
    double worst = 0.0;
    auto norm = [](const MonodromyPair& p) { return gauge_normalize(p, 1e-12).pair; };
    for (int i = 0; i < 500; ++i) {
      const auto& base = pairs[i];
      auto e0 = family_member(base, Family::Plain, 0);
      auto h0 = family_member(base, Family::Hat, 0);
      auto m = apply_operator(OpTag::m, e0, base);
      auto s0 = apply_operator(OpTag::s0, e0, base);
      auto mh = family_member(base, Family::Hat, 1);
      auto checks = {
          std::pair{apply_operator(OpTag::shat1, s0, base), m},
          std::pair{apply_operator(OpTag::shat0, s0, base), e0},
          std::pair{apply_operator(OpTag::s0, apply_operator(OpTag::shat1, h0, base), base), mh},
          std::pair{apply_operator(OpTag::s1, apply_operator(OpTag::shat1, h0, base), base), h0},
      };
      for (const auto& [lhs, rhs] : checks) {
        if (lhs.family != rhs.family || lhs.index != rhs.index) return Outcome{false, "index"};
        worst = std::max(worst, pair_distance(norm(lhs.pair), norm(rhs.pair)));
      }
    }
    return Outcome{worst < 1e-12, fmt("max rel=%.2e over 500 pairs", worst)};
  });

  run(5, "U_p identity", 0.0, [&] {
    double worst = 0.0, recon = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto& p = pairs[i];
      auto st = stokes_from_pair(p);
      recon = std::max(recon, stokes_reconstruction_residual(p, st));
      Mat2C g = p.m1 * p.m0, gi = g.inverse();
      for (int k = -3; k <= 3; ++k) {
        Mat2C pw = Mat2C::identity();
        for (int j = 0; j < std::abs(k); ++j) pw = pw * (k > 0 ? gi : g);
        Mat2C rhs = pw * exp_sigma3_half_pi_i(-2.0 * p.theta.thetaInf * double(k));
        worst = std::max(worst, max_abs_diff(u_p_matrix(st, k), rhs) / (1.0 + max_abs(rhs)));
      }
    }
    return Outcome{worst < 1e-10 && recon < 1e-12,
                   fmt("U_p rel=%.2e reconstruction=%.2e", worst, recon)};
  });

  run(6, "hat/check memberships", 0.0, [&] {
    double fr = 0.0, match = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto& p = pairs[i];
      auto x = char_coords(p);
      auto h = hat_coords(x), c = check_coords(x);
      auto hd = hat_coords_direct(p), cd = check_coords_direct(p);
      fr = std::max({fr, fricke_relative_residual(h), fricke_relative_residual(c)});
      for (auto [a, b] : {std::pair{h, hd}, std::pair{c, cd}}) {
        double s = 1.0 + std::max({std::abs(b.x0), std::abs(b.x1), std::abs(b.x2)});
        match = std::max({match, std::abs(a.x0 - b.x0) / s, std::abs(a.x1 - b.x1) / s,
                          std::abs(a.x2 - b.x2) / s});
      }
    }
    return Outcome{fr < 1e-10 && match < 1e-10,
                   fmt("fricke=%.2e direct=%.2e", fr, match)};
  });

  auto series = formal_series_pv(SeriesTag::MinusOne, kTheta, 8);
  PvSeed seed_dt = seed_from_series(series, 60.0);
  auto [t00_pair, t00_desc] = build_trunc_family(Variant::Trunc00, 1.0, kTheta, 1.0);
  auto t00_series = formal_series_pv(trunc_series_tag(t00_desc), kTheta, 8);
  PvSeed seed_t00 = seed_from_descriptor(t00_desc, t00_series, 60.0);
  auto state = [](const PvSeed& s) {
    return state_from_sample({s.x, s.y, s.zfrak, s.log_u}, kTheta);
  };

  run(7, "RH check, doubly truncated", 60.0, [&] {
    auto r = direct_monodromy(state(seed_dt));
    const auto& q = r.pair;
    double a = std::abs(q.m0.m11), b = std::abs(q.m1.m11);
    double c = std::abs(q.m0.m21 * q.m1.m12 - exp_pi_i(-kTheta.thetaInf));
    double tr = std::max(r.trace_residual0, r.trace_residual1);
    return Outcome{a < 1e-3 && b < 1e-3 && c < 1e-3 && tr < 1e-6,
                   fmt("|m0_11|=%.1e |m1_11|=%.1e prod=%.1e", a, b, c) +
                       fmt(" trace=%.1e", tr)};
  });

  run(8, "RH check, trunc00 c0=1", 60.0, [&] {
    auto r = direct_monodromy(state(seed_t00));
    double a = std::abs(r.pair.m1.m11 - exp_pi_i(kTheta.theta1));
    double b = std::abs(r.pair.m1.m12);
    return Outcome{a < 1e-3 && b < 1e-3, fmt("|m1_11-e|=%.1e |m1_12|=%.1e", a, b)};
  });

  run(9, "isomonodromy drift", 0.0, [&] {
    double d1 = isomonodromy_drift(kTheta, seed_dt, {50.0, 55.0, 60.0}).drift;
    double d2 = isomonodromy_drift(kTheta, seed_t00, {50.0, 55.0, 60.0}).drift;
    return Outcome{d1 < 1e-3 && d2 < 1e-3, fmt("doubly=%.1e trunc00=%.1e", d1, d2)};
  });

  run(10, "jacobi sn limits", 0.0, [&] {
    double lim = 0.0, ident = 0.0;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        cplx u(-3.0 + 6.0 * i / 9, -1.0 + 2.0 * j / 9);
        lim = std::max(lim, std::abs(jacobi_sn(u, 0.0) - std::sin(u)));
        lim = std::max(lim, std::abs(jacobi_sn(u, 1.0) - std::tanh(u)));
      }
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      cplx u(d(g), d(g)), k(0.5 + 0.4 * d(g), 0.4 * d(g));
      cplx sn = jacobi_sn(u, k), sp = sn_derivative(u, k);
      ident = std::max(ident, std::abs(sp * sp - (1.0 - sn * sn) * (1.0 - k * k * sn * sn)));
    }
    return Outcome{lim < 1e-12 && ident < 1e-8, fmt("limits=%.1e identity=%.1e", lim, ident)};
  });

  run(11, "series residual scaling", 0.0, [&] {
    double lo = 1e300, hi = 0.0;
    for (auto tag : {SeriesTag::MinusOne, SeriesTag::Small0Plus}) {
      auto s = formal_series_pv(tag, kTheta, 6);
      double r30 = pv_residual(series_grid(s, 30.0, 0.25), s.native_params()).max_abs;
      double r60 = pv_residual(series_grid(s, 60.0, 0.25), s.native_params()).max_abs;
      lo = std::min(lo, r30 / r60);
      hi = std::max(hi, r30 / r60);
    }
    return Outcome{lo > 12.8 && hi < 1280.0, fmt("ratios in [%.1f, %.1f]", lo, hi)};
  });

  run(12, "worked example constants", 0.0, [&] {
    double m22 = 0.0, closed = 0.0, chain = 0.0;
    std::uniform_real_distribution<double> g(0.5, 2.0);
    for (int i = 0; i < 100; ++i) {
      ThetaTriple th = random_theta(rng, SamplingBox{});
      auto hat = stokes_hat(r2_01_pair(th, cplx(g(rng), g(rng))));
      // [M^1]_{sigma1} carries the former (2,2) entry in the (1,1) slot
      m22 = std::max(m22, std::abs(hat.m1.m11 - example_21_m22(th)));
      cplx c0(g(rng) - 1.0, g(rng) - 1.0);
      cplx disp = 2.0 * kPi * kI /
                  (complex_gamma(th.theta0) *
                   complex_gamma((th.theta0 + th.theta1 - th.thetaInf) / 2.0) *
                   complex_gamma(1.0 + (th.theta0 - th.theta1 - th.thetaInf) / 2.0));
      cplx c = example_22_coefficient(th, c0);
      closed = std::max(closed, std::abs(c - c0 - disp));
      chain = std::max(chain, std::abs(example_22_chain(th, c0, cplx(g(rng), 0.3)) - c) /
                                  (1.0 + std::abs(c)));
    }
    return Outcome{m22 < 1e-12 && closed < 1e-12 && chain < 1e-10,
                   fmt("m22=%.1e closed=%.1e chain=%.1e", m22, closed, chain)};
  });

  run(13, "elliptic zfrak band", 0.0, [&] {
    const double phi = -0.6;
    auto d = solve_rh(pairs[0], phi);
    auto sol = solve_boutroux(phi);
    cplx k = std::sqrt(sol.A);
    // Points near |x| = 600 are the |x| = 300 points moved by a period
    // vector, so both radii see the same sn phases.
    double abs300 = 0.0, abs600 = 0.0, rel300 = 0.0, rel600 = 0.0;
    int used = 0;
    for (int j = -20; j <= 20; ++j) {
      cplx x = (300.0 + 0.37 * j) * std::exp(kI * phi);
      cplx far = x + (x - reduce_mod_lattice(x, sol.omegaA, sol.omegaB));
      try {
        for (cplx z : {x, far}) {
          auto v = eval_elliptic(z, d, sol, 0.5);
          cplx disp = z / 8.0 * (k * v.snprime + sol.A * v.sn * v.sn - 1.0);
          double a = std::abs(v.zfrak - disp);
          if (z == x) {
            abs300 = std::max(abs300, a);
            rel300 = std::max(rel300, a / std::abs(z));
          } else {
            abs600 = std::max(abs600, a);
            rel600 = std::max(rel600, a / std::abs(z));
          }
        }
        ++used;
      } catch (const Error&) {
      }
    }
    bool ok = used > 10 && abs300 < 10 && abs600 < 10 && rel600 < 0.6 * rel300;
    return Outcome{ok, fmt("|diff| %.2f at 300, %.2f at 600", abs300, abs600) +
                           fmt(" relative %.1e -> %.1e", rel300, rel600)};
  });

  std::printf("%d failure(s)\n", failures);
  return failures;
}
