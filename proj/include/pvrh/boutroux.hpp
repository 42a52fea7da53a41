#pragma once

#include <vector>

#include "pvrh/types.hpp"

namespace pvrh {

struct BoutrouxSolution {
  double phi = 0.0;
  cplx A{};
  cplx omegaA{}, omegaB{};
  double quadrature_error = 0.0;
  // Re e^{i phi} of the two Boutroux cycle integrals at A
  double residual_a = 0.0, residual_b = 0.0;
};

enum class Integrand { Boutroux, Period };
enum class Cycle { a, b };

// Branch of w(A, z) = sqrt((1-z^2)(A-z^2)) on the upper sheet: cuts on
// [-1, -A^{1/2}] and [A^{1/2}, 1], w/z^2 -> -1 at infinity.
cplx curve_w(cplx A, cplx z);

// Cycle integral of sqrt((A-z^2)/(1-z^2)) (Boutroux) or 1/w (Period).
// `bow` bends the integration path inside its homotopy class (0 is the
// default path); it exists for deformation checks.
cplx cycle_integral(cplx A, Integrand integrand, Cycle cycle, double bow = 0.0,
                    double* error = nullptr);

// A_phi for any real phi, with periods. Results are memoised process-wide.
BoutrouxSolution solve_boutroux(double phi);

// Uncached solve used by the cache and by tests of the solver itself.
BoutrouxSolution solve_boutroux_uncached(double phi);

struct JacobiValues {
  cplx sn, cn, dn;
};

// sn, cn, dn for parameter m = k^2 (complex). Throws NearPole when |sn|
// exceeds the overflow guard.
JacobiValues jacobi_elliptic(cplx u, cplx m, double guard = 1e8);

// Modulus convention of the asymptotic formulas: sn(u; k).
cplx jacobi_sn(cplx u, cplx k);
cplx sn_derivative(cplx u, cplx k);

struct Window {
  cplx center{};
  double half_width = 0.0;
  double half_height = 0.0;

  bool contains(cplx z) const {
    return std::abs(z.real() - center.real()) <= half_width &&
           std::abs(z.imag() - center.imag()) <= half_height;
  }
};

struct PoleLattice {
  cplx base{};
  cplx omegaA{}, omegaB{};
  Window window;
  std::vector<cplx> points;
};

// Points x0 + Omega_a Z + Omega_b (2Z+1) inside the window.
PoleLattice pole_lattice(cplx base, const BoutrouxSolution& sol,
                         const Window& window);

// Reduction of z modulo 2 Omega_a Z + 2 Omega_b Z into the cell
// {2 Omega_a s + 2 Omega_b t : s, t in [-1/2, 1/2)}.
cplx reduce_mod_lattice(cplx z, cplx omegaA, cplx omegaB);

}  // namespace pvrh
