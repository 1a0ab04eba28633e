#include "mhd2/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mhd2/error.hpp"
#include "mhd2/kernels.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2 {

namespace k = kernels::parallel;

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorCode::InvalidValue, "cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw Error(ErrorCode::InvalidValue, "dt_max must be > 0");
  if (!(dt_min > 0.0)) throw Error(ErrorCode::InvalidValue, "dt_min must be > 0");
  if (!(dt_min < dt_max)) throw Error(ErrorCode::InvalidValue, "dt_min must be < dt_max");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidValue, "t_end must be >= 0");
}

double cfl_dt(const MHDState& st, const StepperConfig& cfg) {
  const int n = st.grid().n;
  const ComplexBuffer u1 = synthesize(st.u.c1);
  const ComplexBuffer u2 = synthesize(st.u.c2);
  const ComplexBuffer b1 = synthesize(st.b.c1);
  const ComplexBuffer b2 = synthesize(st.b.c2);
  const double speed = k::max_speed(u1, u2, b1, b2, n);
  const double dt = std::min(cfg.dt_max, cfg.cfl * st.grid().spacing() / (speed + 1e-12));
  if (!(dt >= cfg.dt_min)) {
    throw Error(ErrorCode::StepTooSmall, "CFL step " + std::to_string(dt) + " below dt_min " +
                                             std::to_string(cfg.dt_min) + " at t = " + std::to_string(st.t));
  }
  return dt;
}

namespace {

std::vector<double> heat_factor(const GridSpec& g, double tau) {
  std::vector<double> f(g.size());
  for (int p = 0; p < g.n; ++p) {
    const double k1 = g.wavenumber(p);
    for (int q = 0; q < g.n; ++q) {
      const double k2 = g.wavenumber(q);
      f[g.flat(p, q)] = std::exp(-(k1 * k1 + k2 * k2) * tau);
    }
  }
  return f;
}

void scale(SpectralVector& v, const std::vector<double>& factor) {
  k::scale_by(v.c1.coeffs, factor);
  k::scale_by(v.c2.coeffs, factor);
}

void axpy(SpectralVector& y, double a, const SpectralVector& x) {
  k::axpy(y.c1.coeffs, a, x.c1.coeffs);
  k::axpy(y.c2.coeffs, a, x.c2.coeffs);
}

SpectralVector scaled(SpectralVector v, const std::vector<double>& factor) {
  scale(v, factor);
  return v;
}

}  // namespace

MHDState step_ifrk4(const MHDState& st, double dt, const DynamicsOptions& dyn) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidValue, "step size must be > 0");
  const GridSpec& g = st.grid();
  const bool in_class = spectral_symmetry_defect(st) <= 1e-12;
  const auto half = heat_factor(g, 0.5 * dt);
  const auto full = heat_factor(g, dt);

  auto stage = [&](const SpectralVector& u, const SpectralVector& b) {
    MHDState s{st.t, u, b};
    Tendency t;
    try {
      t = evaluate_rhs(s, dyn);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFiniteTendency) throw;
      throw Error(ErrorCode::NonFiniteState, "stage became non-finite in the step from t = " + std::to_string(st.t));
    }
    return std::pair{std::move(t.du), std::move(t.db_soft)};
  };

  const auto [ku1, kb1] = stage(st.u, st.b);

  SpectralVector u = st.u;
  axpy(u, 0.5 * dt, ku1);
  SpectralVector b = st.b;
  axpy(b, 0.5 * dt, kb1);
  scale(b, half);
  const auto [ku2, kb2] = stage(u, b);

  const SpectralVector b_half = scaled(st.b, half);
  u = st.u;
  axpy(u, 0.5 * dt, ku2);
  b = b_half;
  axpy(b, 0.5 * dt, kb2);
  const auto [ku3, kb3] = stage(u, b);

  u = st.u;
  axpy(u, dt, ku3);
  b = scaled(st.b, full);
  axpy(b, dt, scaled(kb3, half));
  const auto [ku4, kb4] = stage(u, b);

  MHDState next;
  next.t = st.t + dt;
  next.u = st.u;
  axpy(next.u, dt / 6.0, ku1);
  axpy(next.u, dt / 3.0, ku2);
  axpy(next.u, dt / 3.0, ku3);
  axpy(next.u, dt / 6.0, ku4);

  next.b = scaled(st.b, full);
  axpy(next.b, dt / 6.0, scaled(kb1, full));
  SpectralVector mid = kb2;
  axpy(mid, 1.0, kb3);
  axpy(next.b, dt / 3.0, scaled(std::move(mid), half));
  axpy(next.b, dt / 6.0, kb4);

  next.u = leray_project(std::move(next.u));
  next.b = leray_project(std::move(next.b));
  remove_means(next);
  if (in_class) next = symmetrize(next);
  if (!all_finite(next.u) || !all_finite(next.b)) {
    throw Error(ErrorCode::NonFiniteState, "state became non-finite at t = " + std::to_string(next.t));
  }
  return next;
}

namespace {

// Smallest multiple i * period strictly after t (with a relative slack so a
// time that already sits on a multiple moves on to the next one).
double next_multiple(double t, double period) {
  if (period <= 0.0) return std::numeric_limits<double>::infinity();
  double i = std::floor(t / period + 1e-9) + 1.0;
  return i * period;
}

}  // namespace

MHDState run(const MHDState& st0, const RunOptions& opts, const RunSink& sink) {
  opts.stepper.validate();
  opts.energy.validate();
  if (!(opts.sample_every > 0.0)) throw Error(ErrorCode::InvalidValue, "sample_every must be > 0");
  if (!(opts.snapshot_every >= 0.0)) throw Error(ErrorCode::InvalidValue, "snapshot_every must be >= 0");

  const double t_end = opts.stepper.t_end;
  MHDState st = st0;
  std::size_t steps = 0;
  auto emit = [&](bool sample, bool snapshot) {
    if (!sink) return;
    RunEvent ev{st, std::nullopt, snapshot, steps};
    if (sample) {
      try {
        ev.record = instantaneous(st, opts.energy, opts.dynamics);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonFiniteTendency) throw;
        throw StepError(ErrorCode::NonFiniteState, "tendency of the state is non-finite", st.t);
      }
    }
    sink(ev);
  };

  emit(true, false);
  double next_sample = next_multiple(st.t, opts.sample_every);
  double next_snapshot = next_multiple(st.t, opts.snapshot_every);

  while (st.t < t_end) {
    const double t = st.t;
    try {
      double dt = cfl_dt(st, opts.stepper);
      const double target = std::min({t_end, next_sample, next_snapshot});
      const bool lands = t + dt >= target - 1e-12 * std::max(1.0, std::abs(target));
      if (lands) dt = target - t;
      st = step_ifrk4(st, dt, opts.dynamics);
      if (lands) st.t = target;
    } catch (const StepError&) {
      throw;
    } catch (const Error& e) {
      throw StepError(e.code(), e.what(), t);
    }
    ++steps;
    const bool at_end = st.t >= t_end;
    const bool at_sample = st.t >= next_sample;
    const bool at_snapshot = st.t >= next_snapshot;
    if (at_sample) next_sample = next_multiple(st.t, opts.sample_every);
    if (at_snapshot) next_snapshot = next_multiple(st.t, opts.snapshot_every);
    if (at_sample || at_snapshot || at_end) emit(at_sample || at_end, at_snapshot);
  }
  return st;
}

}  // namespace mhd2
