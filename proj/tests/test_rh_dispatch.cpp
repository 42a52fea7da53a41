#include <doctest.h>

#include "pvrh/rh_dispatch.hpp"
#include "test_helpers.hpp"

using namespace pvrh;
using namespace pvrh::testing;

namespace {

// m0_11 = m1_11 = 0 with m0_21 = 1
MonodromyPair r2_01_pair(const ThetaTriple& th) {
  MonodromyPair p;
  p.theta = th;
  cplx e = exp_pi_i(-th.thetaInf);
  p.m0 = {0.0, -1.0, 1.0, 2.0 * cos_pi(th.theta0)};
  p.m1 = {0.0, e, -1.0 / e, 2.0 * cos_pi(th.theta1)};
  p.tol = 1e-12;
  return p;
}

}  // namespace

TEST_CASE("theta_conditions") {
  auto a = theta_conditions({1.0 / 3, 1.0 / 5, 1.0 / 7});
  CHECK(a.all_hold());
  CHECK_FALSE(a.theta0_integer);
  CHECK_FALSE(a.theta1_integer);

  auto b = theta_conditions({2.0, 0.0, 0.0});
  CHECK_FALSE(b.theta1);
  CHECK(b.theta0_integer);

  auto c = theta_conditions({0.3, 0.2, -0.5});
  CHECK_FALSE(c.theta1);
}

TEST_CASE("region_emptiness") {
  CHECK(region_emptiness({0.3, 0.2, -0.5}).r3plus_empty);
  CHECK(region_emptiness({0.3, 0.2, -0.1}).r4plus_empty);
  auto n = region_emptiness({1.0 / 3, 1.0 / 5, 1.0 / 7});
  CHECK_FALSE(n.r3plus_empty);
  CHECK_FALSE(n.r3minus_empty);
  CHECK_FALSE(n.r4plus_empty);
  CHECK_FALSE(n.r4minus_empty);
  CHECK_FALSE(n.r5_present);
  CHECK(region_emptiness({0.3, 0.2, 1.5}).r5_present);
  CHECK_THROWS_AS(region_emptiness({1.0, 0.2, 0.3}), Error);
}

TEST_CASE("solve_rh dispatch") {
  ThetaTriple th{0.3, 0.2, 0.45};
  auto d = solve_rh(r2_01_pair(th), 0.3);
  CHECK(d.variant == Variant::DoublyTruncAK);
  CHECK(d.sector.arg_min == doctest::Approx(-kPi));
  CHECK(d.sector.arg_max == doctest::Approx(kPi));

  auto p = random_pair(rng());
  auto e = solve_rh(p, -0.4);
  REQUIRE(e.variant == Variant::Elliptic);
  auto sol = solve_boutroux(-0.4);
  cplx x0 = phase_shift_x0(p, -0.4, sol);
  CHECK(std::abs(reduce_mod_lattice(e.param("x0") - x0, sol.omegaA, sol.omegaB)) < 1e-10);

  for (Variant v : {Variant::Trunc00, Variant::Trunc01, Variant::TruncInf0,
                    Variant::TruncInf1}) {
    cplx c0(0.6, -0.3);
    auto built = build_trunc_family(v, c0, th, cplx(0.9, 0.4)).first;
    auto t = solve_rh(built, 0.2);
    CAPTURE(variant_name(v));
    CHECK(t.variant == v);
    CHECK(std::abs(t.param("c0") - c0) < 1e-10);
  }
  CHECK_THROWS_AS(solve_rh(p, 1.8), Error);
}

TEST_CASE("continuation_plan") {
  auto p = random_pair(rng());
  auto full = continuation_plan(p, 0.0, 2 * kPi);
  REQUIRE(full.steps.size() == 1);
  CHECK(full.steps[0].op == OpTag::m);
  CHECK(close(full.result.pair, monodromy_shift(p, 1)) < 1e-10 * (1 + pair_norm(p)));
  CHECK_FALSE(full.reciprocal);
  CHECK_FALSE(full.inf_negated);

  auto half = continuation_plan(p, 0.0, kPi);
  REQUIRE(half.steps.size() == 1);
  CHECK(half.steps[0].op == OpTag::s0);
  CHECK(half.reciprocal);
  CHECK(half.inf_negated);
  CHECK(half.result.family == Family::Hat);

  auto back = continuation_plan(p, 0.0, -3 * kPi);
  CHECK(back.steps.size() == 2);
  CHECK(back.reciprocal);

  CHECK_THROWS_AS(continuation_plan(p, 0.0, 1.0), Error);
}

TEST_CASE("doubly truncated data continued onto the next elliptic sheet") {
  for (int i = 0; i < 20; ++i) {
    ThetaTriple th = random_theta(rng(), SamplingBox{});
    auto p = r2_01_pair(th);
    REQUIRE(validate_pair(p).valid);
    double psi = kPi + 0.5;
    auto plan = continuation_plan(p, 0.5, psi);
    REQUIRE(plan.elliptic.has_value());
    const auto& d = *plan.elliptic;
    auto sol = solve_boutroux(psi);
    cplx m22 = example_21_m22(th);
    cplx star = -1.0 / (kPi * kI) * sol.omegaA *
                    std::log(exp_pi_i(-th.thetaInf / 2.0) * m22) -
                sol.omegaA - sol.omegaB;
    CHECK(std::abs(reduce_mod_lattice(d.param("x0") - star, sol.omegaA, sol.omegaB)) <
          1e-9);
  }
}

TEST_CASE("closed-form c_{pi/2}") {
  ThetaTriple th{1.0 / 3, 1.0 / 5, 1.0 / 7};
  cplx base = 2.0 * kPi * kI /
              (complex_gamma(th.theta0) *
               complex_gamma((th.theta0 + th.theta1 - th.thetaInf) / 2.0) *
               complex_gamma(1.0 + (th.theta0 - th.theta1 - th.thetaInf) / 2.0));
  CHECK(std::abs(example_22_coefficient(th, 0.0) - base) < 1e-13);
  CHECK(std::abs(example_22_coefficient(th, 1.0) - (1.0 + base)) < 1e-13);

  ThetaTriple tiny{1e-9, 0.2, 0.1};
  CHECK(std::abs(example_22_coefficient(tiny, 0.7) - 0.7) < 1e-7);
}
