#pragma once

#include <cstdint>
#include <random>

#include "pvrh/mono_core.hpp"

namespace pvrh {

struct SamplingBox {
  double theta_min = 0.05, theta_max = 0.95;
  double theta_imag = 0.0;   // half-width of the imaginary parts
  double stokes = 1.5;       // half-width for re/im of s1, s2, m0_11
};

ThetaTriple random_theta(std::mt19937_64& rng, const SamplingBox& box = {});

// Valid pair from random Stokes multipliers through the factorisation of
// M1 M0; retries until validate_pair passes at 1e-10.
MonodromyPair random_pair(std::mt19937_64& rng, const SamplingBox& box = {});
MonodromyPair random_pair(std::mt19937_64& rng, const ThetaTriple& theta,
                          const SamplingBox& box = {});

}  // namespace pvrh
