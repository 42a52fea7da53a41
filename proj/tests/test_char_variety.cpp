#include <doctest.h>

#include "pvrh/char_variety.hpp"
#include "test_helpers.hpp"

using namespace pvrh;
using namespace pvrh::testing;

namespace {

double close(const CharVarPoint& a, const CharVarPoint& b) {
  return std::max({std::abs(a.x0 - b.x0), std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2)});
}

double size(const CharVarPoint& p) {
  return 1.0 + std::max({std::abs(p.x0), std::abs(p.x1), std::abs(p.x2)});
}

}  // namespace

TEST_CASE("char_coords") {
  auto p = char_coords(half_half_one());
  CHECK(close(p.x0, 0.0) < 1e-15);
  CHECK(close(p.x1, 0.0) < 1e-15);
  CHECK(close(p.x2, -2.0) < 1e-15);
  CHECK(close(p.ambient.trM0, 0.0) < 1e-15);
  CHECK(close(p.ambient.trM1, 0.0) < 1e-15);
  CHECK(close(p.ambient.expNegPiIThetaInf, -1.0) < 1e-15);

  ThetaTriple th{0.3, 0.1, 0.2};  // theta0 - theta1 - thetaInf = 0
  MonodromyPair d;
  d.theta = th;
  d.m0 = Mat2C::diag(exp_pi_i(-th.theta0), exp_pi_i(th.theta0));
  d.m1 = Mat2C::diag(exp_pi_i(th.theta1), exp_pi_i(-th.theta1));
  REQUIRE(validate_pair(d.m0, d.m1, th, 1e-13).valid);
  auto q = char_coords(d);
  CHECK(close(q.x2, q.x0 * q.x1 + 1.0 / (q.x0 * q.x1)) < 1e-14);

  auto r = random_pair(rng());
  auto a = char_coords(r);
  auto b = char_coords(gauge_transform(r, cplx(0.7, -1.3)));
  auto c = char_coords(gauge_normalize(r).pair);
  CHECK(close(a, b) < 1e-12 * size(a));
  CHECK(close(a, c) < 1e-12 * size(a));
}

TEST_CASE("fricke_residual") {
  CHECK(std::abs(fricke_residual(char_coords(half_half_one()))) < 1e-15);
  CharVarPoint id{1.0, 1.0, 2.0, {2.0, 2.0, 1.0}};
  CHECK(std::abs(fricke_residual(id)) == 0.0);
  CharVarPoint off{1.5, 1.0, 2.0, {2.0, 2.0, 1.0}};
  CHECK(std::abs(fricke_residual(off)) > 0.1);
  for (int i = 0; i < 300; ++i)
    CHECK(fricke_relative_residual(char_coords(random_pair(rng()))) < 1e-12);
}

TEST_CASE("hat and check coordinates") {
  auto h = char_coords(half_half_one());
  auto hh = hat_coords(h);
  auto hc = check_coords(h);
  CHECK(close(hh, CharVarPoint{0.0, 0.0, -2.0, {}}) < 1e-15);
  CHECK(close(hc, CharVarPoint{0.0, 0.0, -2.0, {}}) < 1e-15);

  // thetaInf = 0 with symmetric data: the two maps agree up to a swap
  CharVarPoint s{0.4, 0.4, cplx(1.1, 0.2), {0.9, 0.9, 1.0}};
  auto sh = hat_coords(s), sc = check_coords(s);
  CHECK(close(sh.x0, sc.x1) < 1e-15);
  CHECK(close(sh.x1, sc.x0) < 1e-15);

  for (int i = 0; i < 200; ++i) {
    auto pair = random_pair(rng());
    auto p = char_coords(pair);
    auto a = hat_coords(p), b = check_coords(p);
    CHECK(fricke_relative_residual(a) < 1e-12);
    CHECK(fricke_relative_residual(b) < 1e-12);
    CHECK(close(a, hat_coords_direct(pair)) < 1e-9 * size(a));
    CHECK(close(b, check_coords_direct(pair)) < 1e-9 * size(b));
    auto back = hat_relabel(a, p.ambient);
    CHECK(fricke_relative_residual(back) < 1e-12);
  }
}

TEST_CASE("monodromy_action") {
  auto h = char_coords(half_half_one());
  CHECK(close(monodromy_action(h), h) < 1e-15);
  for (int i = 0; i < 200; ++i) {
    auto pair = random_pair(rng());
    auto p = char_coords(pair);
    auto q = monodromy_action(p);
    CHECK(q.x2 == p.x2);
    CHECK(fricke_relative_residual(q) < 1e-12);
    auto direct = char_coords(monodromy_shift(pair, 1));
    CHECK(close(q, direct) < 1e-9 * size(direct) * size(p));
  }
}
