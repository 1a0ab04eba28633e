#pragma once

// Slow reference implementations. Nothing here calls the FFT wrapper or the
// kernels; they exist to check the fast path independently.

#include <complex>
#include <utility>

#include "mhd2/field.hpp"
#include "mhd2/spectral.hpp"
#include "mhd2/symmetry.hpp"

namespace mhd2::oracle {

/// Direct O(n^4) DFT, multiply by (i k)^alpha with the same Nyquist rule as the
/// fast path, direct inverse sum. n <= 32, otherwise GridTooLarge.
ScalarField dft_derivative(const ScalarField& f, MultiIndex alpha);

/// Direct-sum coefficients f_k (same convention as forward_transform).
SpectralScalar dft_coefficients(const ScalarField& f);

/// sum_{|alpha| <= m} ||d^alpha f||^2_L2 by dft_derivative and midpoint quadrature.
double sobolev_norm_sq_bruteforce(const ScalarField& f, int m);

/// Closed-form solution of a' = i k2 c, c' = -|k|^2 c + i k2 a: the amplitudes of
/// u and b along k_perp / |k| for the linearized system. Uses the Jordan form when
/// |k|^4 = 4 k2^2.
std::pair<std::complex<double>, std::complex<double>> linearized_mode_solution(int k1, int k2,
                                                                               std::complex<double> a0,
                                                                               std::complex<double> c0, double t);

struct FdOptions {
  bool nonlinear = true;
  bool coupling = true;
  double poisson_tol = 1e-10;
};

/// Second-order centred finite differences on the n_fd grid, explicit RK4, pressure
/// from a conjugate-gradient Poisson solve. st0 must live on an n_fd grid (n_fd <= 64).
MHDState fd_run(const MHDState& st0, double t_end, int n_fd, double dt, const FdOptions& opts = {});

}  // namespace mhd2::oracle
