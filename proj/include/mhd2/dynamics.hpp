#pragma once

#include <span>
#include <vector>

#include "mhd2/field.hpp"
#include "mhd2/symmetry.hpp"

namespace mhd2 {

enum class Formulation { Perturbation, Total };

/// Switches for the evolution operator. The two flags are test hooks: with
/// nonlinear = false and coupling = true the system reduces to the linearized
/// b_t = lap b + d2 u, u_t = P d2 b; with both false only diffusion remains.
struct DynamicsOptions {
  bool nonlinear = true;
  bool coupling = true;
  Formulation formulation = Formulation::Perturbation;
};

/// Time derivative split as d/dt u = du, d/dt b = db_stiff + db_soft with
/// db_stiff = lap b (handled by the integrating factor).
struct Tendency {
  SpectralVector du;
  SpectralVector db_stiff;
  SpectralVector db_soft;
};

/// Dealiased pseudo-spectral quadratic terms, before projection:
/// nu = -(u.grad)u + (b.grad)b,  nb = -(u.grad)b + (b.grad)u.
struct QuadraticTerms {
  SpectralVector nu;
  SpectralVector nb;
};

QuadraticTerms quadratic_terms(const SpectralVector& u, const SpectralVector& b);

/// Right-hand side of the perturbation system around B = e2.
Tendency rhs_perturbation(const MHDState& st, const DynamicsOptions& opts = {});

/// Right-hand side written for the total field B (mean mode included).
/// Only the full nonlinear system is available in this form.
Tendency rhs_total(const SpectralVector& u, const SpectralVector& total_b);

/// Dispatches on opts.formulation; for Total the state's b is shifted by e2.
Tendency evaluate_rhs(const MHDState& st, const DynamicsOptions& opts);

/// Pressure from -lap p = div(u.grad u - b.grad b - d2 b), zero mean.
SpectralScalar pressure_spectral(const MHDState& st);
ScalarField compute_pressure(const MHDState& st);

/// |int (u.grad f) f dx| / (||u||_L2 ||f||^2_H1): the discrete transport cancellation.
double transport_skew_defect(const SpectralVector& u, const SpectralScalar& f);

/// One point of an L2 energy history.
struct EnergySample {
  double t = 0.0;
  double energy = 0.0;            // (||u||^2 + ||b||^2) / 2
  double dissipation = 0.0;       // ||grad b||^2
  double dissipation_rate = 0.0;  // d/dt ||grad b||^2, from the tendency
};

EnergySample energy_sample(const MHDState& st, const DynamicsOptions& opts = {});

enum class Quadrature {
  Trapezoid,
  /// Trapezoid plus the endpoint-derivative term h^2/12 (f'(t1) - f'(t2)).
  CorrectedTrapezoid,
};

/// max over sample pairs t1 < t2 of |E(t2) - E(t1) + int_t1^t2 ||grad b||^2| / E(t0).
/// Exact law: d/dt (||u||^2 + ||b||^2)/2 = -||grad b||^2.
double energy_balance_residual(std::span<const EnergySample> history,
                               Quadrature rule = Quadrature::CorrectedTrapezoid);
double energy_balance_residual(std::span<const MHDState> history,
                               Quadrature rule = Quadrature::CorrectedTrapezoid);

}  // namespace mhd2
