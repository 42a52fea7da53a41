#include "pvrh/sampling.hpp"

namespace pvrh {

ThetaTriple random_theta(std::mt19937_64& rng, const SamplingBox& box) {
  std::uniform_real_distribution<double> re(box.theta_min, box.theta_max);
  std::uniform_real_distribution<double> im(-box.theta_imag, box.theta_imag);
  auto draw = [&] { return cplx(re(rng), box.theta_imag > 0 ? im(rng) : 0.0); };
  ThetaTriple th;
  th.theta0 = draw();
  th.theta1 = draw();
  th.thetaInf = draw();
  return th;
}

MonodromyPair random_pair(std::mt19937_64& rng, const ThetaTriple& theta,
                          const SamplingBox& box) {
  std::uniform_real_distribution<double> u(-box.stokes, box.stokes);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    cplx s1(u(rng), u(rng)), s2(u(rng), u(rng)), a(u(rng), u(rng));
    MonodromyPair p = pair_from_stokes(theta, s1, s2, a, coin(rng));
    if (max_abs(p.m0) > 1e3 || max_abs(p.m1) > 1e3) continue;
    p.tol = 1e-10;
    ValidationReport rep = validate_pair(p);
    if (rep.valid && !rep.non_unique_fiber) return p;
  }
  throw Error(ErrorCode::NoConvergence, "could not sample a valid pair");
}

MonodromyPair random_pair(std::mt19937_64& rng, const SamplingBox& box) {
  return random_pair(rng, random_theta(rng, box), box);
}

}  // namespace pvrh
