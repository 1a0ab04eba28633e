#pragma once

// Fourier representation on the torus [-pi, pi]^2.
//
// Convention: f(x) = sum_k f_k exp(i k.x) and f_k = n^-2 sum_ij f(x_ij) exp(-i k.x_ij).
// Norms carry the full (2 pi)^2 measure so they equal integrals over the torus.

#include <vector>

#include "mhd2/field.hpp"

namespace mhd2 {

struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int order() const { return a1 + a2; }
};

/// Highest Sobolev order accepted by sobolev_norm.
inline constexpr int kMaxSobolevOrder = 16;

SpectralScalar forward_transform(const ScalarField& f);
SpectralVector forward_transform(const PhysicalVector& v);

/// Throws HermitianViolation when the imaginary residue of the synthesized
/// samples exceeds 1e-10 of the coefficient l1 mass.
ScalarField inverse_transform(const SpectralScalar& g);
PhysicalVector inverse_transform(const SpectralVector& v);

/// Samples of g in the real part of a complex buffer; no Hermitian check.
ComplexBuffer synthesize(const SpectralScalar& g);

SpectralScalar partial_derivative(const SpectralScalar& g, MultiIndex alpha);
SpectralVector partial_derivative(const SpectralVector& v, MultiIndex alpha);

/// Sharp cutoff: zero every mode with max(|k1|, |k2|) > fraction * n / 2.
SpectralScalar dealias(SpectralScalar g);
SpectralVector dealias(SpectralVector v);

/// mu_m(k) = sum_{|alpha| <= m} k1^(2 a1) k2^(2 a2), laid out like the coefficients.
std::vector<double> sobolev_multiplier(const GridSpec& grid, int m);

/// (sum_{|alpha|<=m} ||d^alpha f||^2_{L2})^{1/2}, evaluated exactly through Parseval.
double sobolev_norm(const SpectralScalar& f, int m);
double sobolev_norm(const SpectralVector& v, int m);
double sobolev_norm(const ScalarField& f, int m);

/// ||grad v||_{H^m}: the H^m norm of the 2x2 matrix of first derivatives.
double gradient_sobolev_norm(const SpectralVector& v, int m);

/// Real L2 inner product over the torus.
double inner_product(const SpectralScalar& a, const SpectralScalar& b);
double inner_product(const SpectralVector& a, const SpectralVector& b);

SpectralVector leray_project(SpectralVector v);

SpectralScalar divergence(const SpectralVector& v);
/// max_k |k.v_k| / max_k |k| |v_k|; zero for the zero field.
double divergence_defect(const SpectralVector& v);

SpectralScalar vorticity_spectral(const SpectralVector& u);
/// omega = d1 u2 - d2 u1, in physical space.
ScalarField vorticity(const SpectralVector& u);
ScalarField vorticity(const PhysicalVector& u);

/// Integral over the torus, (2 pi)^2 f_0.
double mean(const SpectralScalar& f);
double mean(const ScalarField& f);

}  // namespace mhd2
