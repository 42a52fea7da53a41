#pragma once

#include "pvrh/types.hpp"

namespace pvrh {

// Lanczos approximation with reflection for Re z < 1/2.
// Throws PoleOfGamma at nonpositive integers.
cplx complex_gamma(cplx z);

// 1/Gamma(z); zero at the poles instead of throwing.
cplx rgamma(cplx z);

}  // namespace pvrh
