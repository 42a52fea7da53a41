#include "pvrh/gamma.hpp"

#include <array>
#include <cmath>

namespace pvrh {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Gamma(z) for Re z >= 1/2
cplx lanczos(cplx z) {
  z -= 1.0;
  cplx x = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i)
    x += kCoef[i] / (z + static_cast<double>(i));
  cplx t = z + kG + 0.5;
  cplx logv = 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
              std::log(x);
  return std::exp(logv);
}

}  // namespace

cplx complex_gamma(cplx z) {
  if (is_pole(z))
    throw Error(ErrorCode::PoleOfGamma,
                "Gamma pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) return kPi / (sin_pi(z) * lanczos(1.0 - z));
  return lanczos(z);
}

cplx rgamma(cplx z) {
  if (is_pole(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * lanczos(1.0 - z) / kPi;
  return 1.0 / lanczos(z);
}

}  // namespace pvrh
