#pragma once

#include <random>

#include "pvrh/mono_core.hpp"
#include "pvrh/sampling.hpp"

namespace pvrh::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed5eedULL);
  return gen;
}

inline double close(cplx a, cplx b) { return std::abs(a - b); }

inline double close(const Mat2C& a, const Mat2C& b) { return max_abs_diff(a, b); }

inline double close(const MonodromyPair& a, const MonodromyPair& b) {
  return std::max(max_abs_diff(a.m0, b.m0), max_abs_diff(a.m1, b.m1));
}

// theta = (1/2, 1/2, 1) with M0 = M1 = [[0,1],[-1,0]]
inline MonodromyPair half_half_one() {
  MonodromyPair p;
  p.theta = {0.5, 0.5, 1.0};
  p.m0 = {0.0, 1.0, -1.0, 0.0};
  p.m1 = {0.0, 1.0, -1.0, 0.0};
  return p;
}

}  // namespace pvrh::testing
