#include <doctest.h>

#include "pvrh/asymptotics.hpp"
#include "pvrh/char_variety.hpp"
#include "pvrh/rh_dispatch.hpp"
#include "test_helpers.hpp"

using namespace pvrh;
using namespace pvrh::testing;

namespace {

const Variant kTrunc[] = {Variant::Trunc00, Variant::Trunc01, Variant::TruncInf0,
                          Variant::TruncInf1};

}  // namespace

TEST_CASE("build_trunc_family") {
  ThetaTriple th{0.5, 0.25, 0.0};
  SUBCASE("doubly truncated at c0 = 0") {
    auto [p, d] = build_trunc_family(Variant::Trunc00, 0.0, th, 1.0);
    CHECK(p.m1.m21 == cplx(0.0));
    CHECK(d.sector.contains(kPi / 2 + 3.0));
    CHECK_FALSE(d.sector.contains(kPi / 2 + 3.2));
  }
  SUBCASE("m0_21 of Trunc00 from the Gamma display") {
    auto [p, d] = build_trunc_family(Variant::Trunc00, 1.0, th, 1.0);
    cplx expect = 2.0 * kPi * kI /
                  (complex_gamma(1.0 - (th.theta0 - th.theta1 - th.thetaInf) / 2.0) *
                   complex_gamma((th.theta0 + th.theta1 + th.thetaInf) / 2.0));
    CHECK(std::abs(p.m0.m21 - expect) < 1e-13);
    CHECK(std::abs(d.param("mu") - (2.0 * th.theta1 + th.thetaInf - 1.0)) < 1e-15);
    CHECK(std::abs(d.param("L") - (th.theta0 - th.theta1 - th.thetaInf) / 2.0) < 1e-15);
  }
  SUBCASE("c0 does not depend on the gauge parameter") {
    for (Variant v : kTrunc) {
      ThetaTriple t{0.3, 0.2, 0.45};
      cplx c0(0.7, -0.2);
      auto a = build_trunc_family(v, c0, t, 1.0).first;
      auto b = build_trunc_family(v, c0, t, 2.0).first;
      CAPTURE(variant_name(v));
      CHECK(close(a, b) > 1e-3);
      CHECK(std::abs(trunc_c0_from_pair(v, a) - c0) < 1e-12);
      CHECK(std::abs(trunc_c0_from_pair(v, b) - c0) < 1e-12);
    }
  }
  SUBCASE("random admissible theta") {
    SamplingBox box;
    int built = 0;
    for (int i = 0; i < 200; ++i) {
      ThetaTriple t = random_theta(rng(), box);
      for (Variant v : kTrunc) {
        try {
          auto [p, d] = build_trunc_family(v, cplx(0.4, 0.3), t, cplx(1.1, 0.2));
          p.tol = 1e-12;
          CHECK(validate_pair(p).valid);
          ++built;
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::ThetaViolation);
        }
      }
    }
    CHECK(built > 600);
  }
}

TEST_CASE("build_trunc_nongeneric") {
  // case 1, first branch: t0 - t1 - tInf = 2 nu
  ThetaTriple th{0.6, 0.3, 0.6 - 0.3 - 2.0};
  auto [p, d] = build_trunc_nongeneric(1, 1, 1, cplx(0.5, 0.1), th, 1.0);
  cplx expect = 2.0 * kPi * kI * exp_pi_i(th.thetaInf - th.theta0) /
                (complex_gamma(1.0) * complex_gamma(2.0 - th.theta0));
  CHECK(std::abs(p.m0.m12 - expect) < 1e-12);
  p.tol = 1e-12;
  CHECK(validate_pair(p).valid);
  CHECK(classify_region(p).tag == RegionTag::R5);
  CHECK(std::abs(nongeneric_c0_from_pair(1, 1, 1, p) - cplx(0.5, 0.1)) < 1e-12);

  auto z = build_trunc_nongeneric(1, 1, 1, 0.0, th, 1.0).first;
  CHECK(classify_region(z).tag == RegionTag::R5);

  ThetaTriple bad{0.6, 0.3, 0.1};
  CHECK_THROWS_AS(build_trunc_nongeneric(1, 1, 1, 1.0, bad, 1.0), Error);
}

TEST_CASE("beta0_vhat") {
  auto deg = beta0_vhat(half_half_one());
  CHECK(deg.degenerate);
  CHECK(std::abs(deg.beta0) < 1e-15);

  for (int i = 0; i < 100; ++i) {
    auto p = random_pair(rng());
    auto b = beta0_vhat(p);
    CHECK(std::abs(b.log_arg_product - b.log_arg_offdiag) <
          1e-10 * (1 + std::abs(b.log_arg_product)));
    auto n = beta0_vhat(gauge_normalize(p).pair);
    CHECK(std::abs(n.beta0 - b.beta0) < 1e-10);
  }

  MonodromyPair u;
  u.theta = {0, 0, 0};
  u.m0 = {1.0, 0.0, 1.0, 1.0};
  u.m1 = Mat2C::identity();
  CHECK_THROWS_AS(beta0_vhat(u), Error);
}

TEST_CASE("eval_trig") {
  AsymptoticDescriptor d;
  d.variant = Variant::Trig;
  d.theta = {0.3, 0.2, 0.1};
  d.sector = {-0.1, 0.1, false, false};
  // the amplitude carries beta0^{1/2}; vhat shrinks with it
  d.params = {{"beta0", cplx(1e-12, 0.0)}, {"vhat", 1e-6}};
  CHECK(std::abs(eval_trig(50.0, d, TrigForm::Case1) + 1.0) < 1e-4);

  d.params = {{"beta0", cplx(0.35, 0.0)}, {"vhat", cplx(0.8, 0.1)}};
  cplx a = eval_trig(50.0, d, TrigForm::Case2);
  cplx b = eval_trig(50.0, d, TrigForm::Case1Plus);
  CHECK(std::abs(a - b) < 5.0 * std::pow(50.0, -1.0 + 2 * 0.35));
  d.params["beta0"] = cplx(0.9, 0.0);
  CHECK_THROWS_AS(eval_trig(50.0, d), Error);
}

TEST_CASE("eval_trunc") {
  ThetaTriple th{0.5, 0.25, 0.0};
  auto [p0, d0] = build_trunc_family(Variant::Trunc00, 0.0, th, 1.0);
  auto s = formal_series_pv(trunc_series_tag(d0), th, 6);
  CHECK(std::abs(eval_trunc(30.0, d0, s) - s.y(30.0)) < 1e-15);

  auto [p1, d1] = build_trunc_family(Variant::Trunc00, 1.0, th, 1.0);
  cplx corr = eval_trunc(30.0, d1, s) - s.y(30.0);
  // y = (L/x)(1 + c0 x^mu e^{-x} + ...)
  double mag = 0.125 * std::pow(30.0, -1.5) * std::exp(-30.0);
  CHECK(std::abs(corr - mag) < 1e-3 * mag);

  // (y, y') pair against a finite difference
  auto [y, yp] = eval_trunc_d1(cplx(25.0, 1.0), d1, s);
  double h = 1e-3;
  cplx fd = (eval_trunc(cplx(25.0 + h, 1.0), d1, s) -
             eval_trunc(cplx(25.0 - h, 1.0), d1, s)) / (2 * h);
  CHECK(std::abs(yp - fd) < 1e-9);
  CHECK(y == eval_trunc(cplx(25.0, 1.0), d1, s));
}

TEST_CASE("phase shifts and the elliptic evaluator") {
  auto p = random_pair(rng());
  double phi = 0.6;
  auto sol = solve_boutroux(phi);
  cplx x0 = phase_shift_x0(p, phi, sol);
  cplx x0n = phase_shift_x0(gauge_normalize(p).pair, phi, sol);
  CHECK(std::abs(x0 - x0n) < 1e-10);
  CHECK(std::abs(reduce_mod_lattice(x0, sol.omegaA, sol.omegaB) - x0) < 1e-12);

  cplx off = p.m0.m21 * p.m1.m12 * exp_pi_i(p.theta.thetaInf);
  cplx lm = std::log(exp_pi_i(-p.theta.thetaInf / 2.0) / p.m1.m11);
  cplx jumped = phase_shift_from_logs(std::log(off) + 2.0 * kPi * kI, lm, sol);
  CHECK(std::abs(reduce_mod_lattice(jumped - x0, sol.omegaA, sol.omegaB)) < 1e-9);
  CHECK_THROWS_AS(phase_shift_x0(p, 2.0, sol), Error);

  auto d = solve_rh(p, phi);
  REQUIRE(d.variant == Variant::Elliptic);
  cplx xd = d.param("x0");
  // y = -1 where sn vanishes; shift by a period so the point is large
  cplx far = xd + 40.0 * sol.omegaA;
  auto v = eval_elliptic(far, d, sol);
  CHECK(std::abs(v.y + 1.0) < 1e-10);
  CHECK(std::abs(v.sn) < 1e-10);

  // sn = 1 at a quarter of the a-period
  auto q = eval_elliptic(far + sol.omegaA / 2.0, d, sol);
  cplx k = std::sqrt(sol.A);
  CHECK(std::abs(q.sn - 1.0) < 1e-8);
  CHECK(std::abs(q.y - (k + 1.0) / (k - 1.0)) < 1e-7);

  auto lat = pole_lattice(xd, sol, Window{xd + sol.omegaB, 0.5, 0.5});
  REQUIRE(!lat.points.empty());
  CHECK_THROWS_AS(eval_elliptic(lat.points[0] + 0.01, d, sol), Error);
}

TEST_CASE("worked example constants") {
  for (int i = 0; i < 20; ++i) {
    ThetaTriple th = random_theta(rng(), SamplingBox{});
    cplx closed = 2.0 * (cos_pi(th.theta1) + exp_pi_i(th.thetaInf) * cos_pi(th.theta0));
    CHECK(std::abs(example_21_m22(th) - closed) < 1e-14);
    cplx c0(0.6, 0.2);
    cplx a = example_22_coefficient(th, c0);
    cplx b = example_22_chain(th, c0, cplx(1.3, -0.4));
    CHECK(std::abs(a - b) < 1e-10 * (1 + std::abs(a)));
  }
}

TEST_CASE("boundary families and the general solution") {
  ThetaTriple th{0.3, 0.2, 0.45};
  auto [p, d] = trunc_boundary_families("5.4", {cplx(0.5, 0.2), 1.0}, th);
  CHECK(std::abs(p.m0.m12) < 1e-15);
  CHECK(std::abs(p.m0.m11 - exp_pi_i(th.theta0)) < 1e-14);
  CHECK(std::abs(boundary_constant_from_pair("5.4", p) - cplx(0.5, 0.2)) < 1e-12);
  for (const char* w : {"5.3a", "5.4", "5.3c", "5.3d"}) {
    auto q = trunc_boundary_families(w, {cplx(0.3, -0.1), cplx(0.8, 0.3)}, th).first;
    q.tol = 1e-12;
    CAPTURE(w);
    CHECK(validate_pair(q).valid);
  }

  GeneralSolutionParams g;
  g.sigma = cplx(0.3, 0.1);
  g.c0 = cplx(1.2, 0.1);
  g.cx = cplx(0.4, -0.3);
  auto m1 = general_solution_monodromy(g, th);
  g.utilde = 2.0;
  auto m2 = general_solution_monodromy(g, th);
  CHECK(std::abs(m1.m0.m21 * m1.m1.m12 - m2.m0.m21 * m2.m1.m12) < 1e-12);
  CHECK(close(gauge_transform(m1, std::sqrt(2.0)), m2) < 1e-10);
}
