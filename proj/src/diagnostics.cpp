#include "mhd2/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd2/error.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2 {

void EnergyParams::validate() const {
  if (s < 2) throw Error(ErrorCode::InvalidValue, "s must be >= 2, got " + std::to_string(s));
  if (2 * s + 2 > kMaxSobolevOrder) {
    throw Error(ErrorCode::InvalidValue, "s too large: 2s + 2 exceeds the maximum Sobolev order " +
                                             std::to_string(kMaxSobolevOrder));
  }
}

DiagnosticsRecord instantaneous(const MHDState& st, const EnergyParams& p, const DynamicsOptions& dyn) {
  p.validate();
  DiagnosticsRecord r;
  r.t = st.t;
  const int base = 2 * p.s - 2;
  for (int j = 0; j < 4; ++j) r.norm_u[j] = sobolev_norm(st.u, base + j);
  for (int j = 0; j < 5; ++j) r.norm_b[j] = sobolev_norm(st.b, base + j);
  const SpectralVector d2u = partial_derivative(st.u, {0, 1});
  r.norm_d2u_H2s = sobolev_norm(d2u, 2 * p.s);
  r.norm_d2u_H2sm2 = sobolev_norm(d2u, 2 * p.s - 2);

  const EnergySample e = energy_sample(st, dyn);
  r.l2_energy = e.energy;
  r.grad_b_l2_sq = e.dissipation;
  r.grad_b_l2_sq_rate = e.dissipation_rate;

  r.symmetry_defect = symmetry_defect(st);
  r.div_defect_u = divergence_defect(st.u);
  r.div_defect_b = divergence_defect(st.b);
  r.mean_abs_max = std::max({std::abs(mean(st.u.c1)), std::abs(mean(st.u.c2)), std::abs(mean(st.b.c1)),
                             std::abs(mean(st.b.c2))});
  return r;
}

EnergyLedger ledger_update(const EnergyLedger& led, const DiagnosticsRecord& rec) {
  using R = DiagnosticsRecord;
  const double w = (1.0 + rec.t) * (1.0 + rec.t);
  const double high = rec.norm_u[R::kH2sp1] * rec.norm_u[R::kH2sp1] + rec.norm_b[R::kH2sp1] * rec.norm_b[R::kH2sp1];
  const double low =
      w * (rec.norm_u[R::kH2sm1] * rec.norm_u[R::kH2sm1] + rec.norm_b[R::kH2sm1] * rec.norm_b[R::kH2sm1]);
  const double integrand0 =
      rec.norm_b[R::kH2sp2] * rec.norm_b[R::kH2sp2] + rec.norm_d2u_H2s * rec.norm_d2u_H2s;
  const double integrand1 = w * (rec.norm_b[R::kH2s] * rec.norm_b[R::kH2s] + rec.norm_d2u_H2sm2 * rec.norm_d2u_H2sm2);

  EnergyLedger out = led;
  if (!led.initialized) {
    out.initialized = true;
    out.sup0 = high;
    out.sup1 = low;
    out.int0 = out.int1 = 0.0;
  } else {
    if (rec.t < led.last_t) {
      throw Error(ErrorCode::NonMonotoneTime, "record at t = " + std::to_string(rec.t) +
                                                  " precedes ledger time " + std::to_string(led.last_t));
    }
    const double h = rec.t - led.last_t;
    out.sup0 = std::max(led.sup0, high);
    out.sup1 = std::max(led.sup1, low);
    out.int0 = led.int0 + 0.5 * h * (led.last_integrand0 + integrand0);
    out.int1 = led.int1 + 0.5 * h * (led.last_integrand1 + integrand1);
  }
  out.last_t = rec.t;
  out.last_integrand0 = integrand0;
  out.last_integrand1 = integrand1;
  return out;
}

PoincareResult poincare_check(const SpectralVector& u, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidValue, "Poincare order k must be >= 0");
  const double div = divergence_defect(u);
  const double m = std::max(std::abs(mean(u.c1)), std::abs(mean(u.c2)));
  const double sym = velocity_symmetry_defect(u);
  if (div >= 1e-10 || m >= 1e-12 || sym >= 1e-10) {
    throw Error(ErrorCode::NotInClass, "poincare_check needs a divergence-free, mean-zero field in the "
                                       "symmetry class (div " + std::to_string(div) + ", mean " +
                                           std::to_string(m) + ", symmetry " + std::to_string(sym) + ")");
  }
  PoincareResult r;
  r.lhs = gradient_sobolev_norm(u, k);
  r.rhs = sobolev_norm(partial_derivative(u, {0, 1}), k + 1);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.within_bound = r.ratio <= kPoincareBound;
  return r;
}

double decay_fit(std::span<const std::pair<double, double>> series, double t_start) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (const auto& [t, v] : series) {
    if (t < t_start) continue;
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue, "decay_fit needs positive values, got " + std::to_string(v) +
                                                   " at t = " + std::to_string(t));
    }
    const double x = std::log1p(t);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 8) {
    throw Error(ErrorCode::InsufficientSamples,
                "decay_fit needs >= 8 samples with t >= t_start, got " + std::to_string(count));
  }
  const double c = static_cast<double>(count);
  const double denom = c * sxx - sx * sx;
  if (denom <= 0.0) throw Error(ErrorCode::InsufficientSamples, "decay_fit samples share one time");
  return (c * sxy - sx * sy) / denom;
}

}  // namespace mhd2
