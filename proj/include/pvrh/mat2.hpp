#pragma once

#include <algorithm>
#include <complex>

#include "pvrh/types.hpp"

namespace pvrh {

// 2x2 matrix, row-major entries. Templated so the oracle can reuse it in
// extended precision.
template <class C>
struct Mat2T {
  C m11{}, m12{}, m21{}, m22{};

  static Mat2T identity() { return {C(1), C(0), C(0), C(1)}; }
  static Mat2T diag(C a, C d) { return {a, C(0), C(0), d}; }

  C det() const { return m11 * m22 - m12 * m21; }
  C trace() const { return m11 + m22; }

  Mat2T inverse() const {
    C d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
  }

  // sigma1 M sigma1
  Mat2T sigma1_conj() const { return {m22, m21, m12, m11}; }

  Mat2T operator*(const Mat2T& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  Mat2T operator+(const Mat2T& o) const {
    return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
  }
  Mat2T operator-(const Mat2T& o) const {
    return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
  }
  Mat2T operator*(C s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
};

using Mat2C = Mat2T<cplx>;

// diag(e^{pi i z/2}, e^{-pi i z/2}) = e^{(pi i z/2) sigma3}
inline Mat2C exp_sigma3_half_pi_i(cplx z) {
  return Mat2C::diag(exp_pi_i(0.5 * z), exp_pi_i(-0.5 * z));
}

inline double max_abs(const Mat2C& m) {
  return std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21),
                   std::abs(m.m22)});
}

inline double max_abs_diff(const Mat2C& a, const Mat2C& b) {
  return max_abs(a - b);
}

}  // namespace pvrh
