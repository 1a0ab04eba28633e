#pragma once

#include <array>
#include <span>
#include <utility>

#include "mhd2/dynamics.hpp"
#include "mhd2/symmetry.hpp"

namespace mhd2 {

struct EnergyParams {
  int s = 2;
  /// s >= 2, and 2s + 2 must not exceed kMaxSobolevOrder.
  void validate() const;
};

/// Instantaneous norms at one time. norm_u[j] is ||u||_{H^{2s-2+j}} for
/// j = 0..3; norm_b additionally carries H^{2s+2} at j = 4.
struct DiagnosticsRecord {
  double t = 0.0;
  std::array<double, 4> norm_u{};
  std::array<double, 5> norm_b{};
  double norm_d2u_H2s = 0.0;
  double norm_d2u_H2sm2 = 0.0;
  double l2_energy = 0.0;
  double grad_b_l2_sq = 0.0;
  double grad_b_l2_sq_rate = 0.0;
  double symmetry_defect = 0.0;
  double div_defect_u = 0.0;
  double div_defect_b = 0.0;
  double mean_abs_max = 0.0;

  // offsets into norm_u / norm_b
  static constexpr int kH2sm2 = 0, kH2sm1 = 1, kH2s = 2, kH2sp1 = 3, kH2sp2 = 4;
};

DiagnosticsRecord instantaneous(const MHDState& st, const EnergyParams& p, const DynamicsOptions& dyn = {});

/// Running suprema and trapezoid integrals that make up the time-weighted
/// energies E0(t) = sup0 + int0 and E1(t) = sup1 + int1.
struct EnergyLedger {
  bool initialized = false;
  double sup0 = 0.0;
  double int0 = 0.0;
  double sup1 = 0.0;
  double int1 = 0.0;
  double last_t = 0.0;
  double last_integrand0 = 0.0;
  double last_integrand1 = 0.0;  // already carries the (1 + t)^2 weight

  double e0() const { return sup0 + int0; }
  double e1() const { return sup1 + int1; }
  double total() const { return e0() + e1(); }
};

/// Throws NonMonotoneTime if rec.t precedes the ledger's last time.
EnergyLedger ledger_update(const EnergyLedger& led, const DiagnosticsRecord& rec);

struct PoincareResult {
  double lhs = 0.0;    // ||grad u||_{H^k}
  double rhs = 0.0;    // ||d2 u||_{H^{k+1}}
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
  bool within_bound = true;
};

/// Bound asserted by poincare_check: sqrt(2) + 1e-8.
inline constexpr double kPoincareBound = 1.4142135623730951 + 1e-8;

/// Requires u divergence-free, mean-zero and with u1 even, u2 odd in x2;
/// otherwise throws NotInClass.
PoincareResult poincare_check(const SpectralVector& u, int k);

/// Least-squares slope of log(value) against log(1 + t) over samples with t >= t_start.
double decay_fit(std::span<const std::pair<double, double>> series, double t_start = 1.0);

}  // namespace mhd2
