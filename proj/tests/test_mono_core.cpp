#include <doctest.h>

#include "pvrh/mono_core.hpp"
#include "test_helpers.hpp"

using namespace pvrh;
using namespace pvrh::testing;

TEST_CASE("validate_pair on hand-checked data") {
  SUBCASE("unipotent M0, identity M1, theta = 0") {
    auto rep = validate_pair({1.0, 0.0, 1.0, 1.0}, Mat2C::identity(), {0, 0, 0}, 1e-14);
    CHECK(rep.valid);
    CHECK(rep.max_residual() == 0.0);
  }
  SUBCASE("theta = (1/2, 1/2, 1)") {
    auto p = half_half_one();
    p.tol = 1e-14;
    CHECK(validate_pair(p).valid);
  }
  SUBCASE("identities violate the product relation at thetaInf = 1") {
    auto rep = validate_pair(Mat2C::identity(), Mat2C::identity(), {0, 0, 1}, 1e-10);
    CHECK_FALSE(rep.valid);
    CHECK(rep.non_unique_fiber);
  }
}

TEST_CASE("gauge_normalize cascade") {
  auto p = random_pair(rng());
  MonodromyPair q = gauge_transform(p, 1.0 / std::sqrt(cplx(4.0) / p.m0.m21));
  // m0_21 = 4 after this rescaling
  CHECK(close(q.m0.m21, 4.0) < 1e-12);
  auto n = gauge_normalize(q);
  CHECK(n.pair.m0.m21 == cplx(1.0));
  CHECK(close(n.pair.m0.m11, q.m0.m11) == 0.0);
  CHECK(close(n.pair.m0.m12 * n.pair.m1.m21, q.m0.m12 * q.m1.m21) < 1e-12);
  CHECK(close(n.pair.m0.m21 * n.pair.m1.m12, q.m0.m21 * q.m1.m12) < 1e-12);

  auto again = gauge_normalize(n.pair);
  CHECK(again.scale == cplx(1.0));
  CHECK(close(again.pair, n.pair) == 0.0);

  MonodromyPair d;
  d.theta = {0.25, 0.5, 0.25};
  d.m0 = Mat2C::diag(exp_pi_i(-0.25), exp_pi_i(0.25));
  d.m1 = Mat2C::diag(exp_pi_i(0.5), exp_pi_i(-0.5));
  auto dn = gauge_normalize(d);
  CHECK(dn.scale == cplx(1.0));
  CHECK(close(dn.pair, d) == 0.0);
}

TEST_CASE("classify_region zero patterns") {
  CHECK(classify_region(half_half_one()).tag == RegionTag::R2_01);

  MonodromyPair u;
  u.theta = {0, 0, 0};
  u.m0 = {1.0, 0.0, 1.0, 1.0};
  u.m1 = Mat2C::identity();
  CHECK(classify_region(u).tag == RegionTag::R3);

  // R3+ data: m1 lower triangular with e^{pi i t1}
  ThetaTriple th{1.0 / 3, 1.0 / 5, 1.0 / 7};
  MonodromyPair r3;
  r3.theta = th;
  r3.m1 = {exp_pi_i(th.theta1), 0.0, 0.7, exp_pi_i(-th.theta1)};
  cplx m011 = exp_pi_i(-th.thetaInf) / r3.m1.m11;
  cplx m022 = 2.0 * cos_pi(th.theta0) - m011;
  r3.m0 = {m011, (m011 * m022 - 1.0) / 0.3, 0.3, m022};
  r3.tol = 1e-12;
  REQUIRE(validate_pair(r3).valid);
  Region reg = classify_region(r3);
  CHECK(reg.tag == RegionTag::R3plus);
  CHECK(close(reg.coords.at("m1_21/m0_21"), 0.7 / 0.3) < 1e-12);

  for (int i = 0; i < 50; ++i)
    CHECK(classify_region(random_pair(rng())).tag == RegionTag::R1);
}

TEST_CASE("stokes_from_pair and the factorisation of M1 M0") {
  auto h = half_half_one();
  auto st = stokes_from_pair(h);
  CHECK(std::abs(st.s1) < 1e-15);
  CHECK(std::abs(st.s2) < 1e-15);
  CHECK(close(h.m1 * h.m0, Mat2C::identity() * cplx(-1.0)) < 1e-15);
  CHECK(stokes_reconstruction_residual(h, st) < 1e-15);

  for (int i = 0; i < 200; ++i) {
    auto p = random_pair(rng());
    CHECK(stokes_reconstruction_residual(p, stokes_from_pair(p)) < 1e-12);
  }

  MonodromyPair tri = h;
  tri.m0 = {0.0, 0.0, 1.0, 0.0};
  tri.m1 = {0.0, 0.0, 1.0, 0.0};
  CHECK(stokes_from_pair(tri).s2 == cplx(0.0));
}

TEST_CASE("monodromy_shift group structure") {
  auto p = random_pair(rng());
  CHECK(close(monodromy_shift(p, 0), p) == 0.0);
  auto h = half_half_one();
  for (int k = -3; k <= 3; ++k) CHECK(close(monodromy_shift(h, k), h) < 1e-14);
  for (int i = 0; i < 100; ++i) {
    auto q = random_pair(rng());
    for (int k = 1; k <= 3; ++k) {
      MonodromyPair s = monodromy_shift(q, k);
      // conditioning grows with the size of the shifted pair
      double scale = (1.0 + pair_norm(q)) * (1.0 + pair_norm(s)) * (1.0 + pair_norm(s));
      auto back = monodromy_shift(s, -k);
      CHECK(close(back, q) < 1e-13 * scale);
      s.tol = 1e-13 * scale;
      CHECK(validate_pair(s).valid);
    }
  }
}

TEST_CASE("stokes_hat and stokes_check") {
  auto h = half_half_one();
  auto hat = stokes_hat(h);
  CHECK(close(hat.m0, Mat2C{0.0, 1.0, -1.0, 0.0}) < 1e-15);
  hat.tol = 1e-14;
  CHECK(validate_pair(hat.m0, hat.m1, h.theta.negated_inf(), 1e-14).valid);
  auto chk = stokes_check(h);
  CHECK(validate_pair(chk.m0, chk.m1, h.theta.negated_inf(), 1e-14).valid);

  for (int i = 0; i < 100; ++i) {
    auto p = random_pair(rng());
    auto a = stokes_hat(p);
    auto b = stokes_check(p);
    CHECK(validate_pair(a.m0, a.m1, p.theta.negated_inf(), 1e-9).valid);
    CHECK(validate_pair(b.m0, b.m1, p.theta.negated_inf(), 1e-9).valid);
    auto lhs = gauge_normalize(stokes_check(monodromy_shift(p, 1)), 1e-12).pair;
    auto rhs = gauge_normalize(stokes_hat(p), 1e-12).pair;
    CHECK(close(lhs, rhs) < 1e-8 * (1.0 + pair_norm(rhs)));
  }

  // S2 = I and thetaInf = 0 reduce the conjugators to sigma1
  ThetaTriple th{0.3, 0.6, 0.0};
  MonodromyPair s = pair_from_stokes(th, 0.4, 0.0, cplx(0.2, 0.1));
  auto sh = stokes_hat(s);
  CHECK(close(sh.m0, s.m0.sigma1_conj()) < 1e-12);
  CHECK(close(sh.m1, s.m1.sigma1_conj()) < 1e-12);
}

TEST_CASE("operator identities") {
  for (int i = 0; i < 100; ++i) {
    auto base = random_pair(rng());
    auto e0 = family_member(base, Family::Plain, 0);
    auto m = apply_operator(OpTag::m, e0, base);
    auto s0 = apply_operator(OpTag::s0, e0, base);
    auto a = apply_operator(OpTag::shat1, s0, base);
    CHECK(a.index == m.index);
    CHECK(a.family == Family::Plain);
    CHECK(close(gauge_normalize(a.pair, 1e-12).pair,
                gauge_normalize(m.pair, 1e-12).pair) < 1e-8 * (1 + pair_norm(m.pair)));
    auto id = apply_operator(OpTag::shat0, s0, base);
    CHECK(close(gauge_normalize(id.pair, 1e-12).pair,
                gauge_normalize(base, 1e-12).pair) < 1e-8 * (1 + pair_norm(base)));
    auto h0 = family_member(base, Family::Hat, 0);
    auto mh = apply_operator(OpTag::s0, apply_operator(OpTag::shat1, h0, base), base);
    CHECK(mh.family == Family::Hat);
    CHECK(mh.index == 1);
  }
  auto base = random_pair(rng());
  CHECK_THROWS_AS(apply_operator(OpTag::shat0, family_member(base, Family::Plain, 0), base),
                  Error);
}

TEST_CASE("U_p against (M1 M0)^{-p} e^{-pi i tInf p s3}") {
  auto h = half_half_one();
  CHECK(close(u_p_matrix(stokes_from_pair(h), 1), Mat2C::identity()) < 1e-14);
  CHECK(close(u_p_matrix(stokes_from_pair(h), 0), Mat2C::identity()) == 0.0);
  for (int i = 0; i < 50; ++i) {
    auto p = random_pair(rng());
    auto st = stokes_from_pair(p);
    Mat2C g = p.m1 * p.m0, gi = g.inverse();
    for (int k = -3; k <= 3; ++k) {
      Mat2C pw = Mat2C::identity();
      for (int j = 0; j < std::abs(k); ++j) pw = pw * (k > 0 ? gi : g);
      Mat2C rhs = pw * exp_sigma3_half_pi_i(-2.0 * p.theta.thetaInf * double(k));
      CHECK(close(u_p_matrix(st, k), rhs) < 1e-10 * (1.0 + max_abs(rhs)));
    }
  }
}
