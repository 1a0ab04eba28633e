#pragma once

#include <functional>
#include <optional>

#include "mhd2/diagnostics.hpp"
#include "mhd2/dynamics.hpp"
#include "mhd2/symmetry.hpp"

namespace mhd2 {

struct StepperConfig {
  double cfl = 0.4;
  double dt_max = 1e-2;
  double dt_min = 1e-8;
  double t_end = 1.0;

  void validate() const;
};

/// min(dt_max, cfl * dx / (max |u| + |b + e2|)); throws StepTooSmall below dt_min.
double cfl_dt(const MHDState& st, const StepperConfig& cfg);

/// One integrating-factor RK4 step: classical RK4 in w_k = exp(|k|^2 t) b_k and u_k,
/// so pure diffusion is integrated exactly. The result is re-projected, has zero
/// means, and is symmetrized when the input belonged to the symmetry class.
MHDState step_ifrk4(const MHDState& st, double dt, const DynamicsOptions& dyn = {});

struct RunOptions {
  StepperConfig stepper;
  double sample_every = 0.1;
  /// 0 disables snapshot events.
  double snapshot_every = 0.0;
  DynamicsOptions dynamics;
  EnergyParams energy;
};

/// Passed to the sink at t0, at every multiple of sample_every / snapshot_every and at t_end.
struct RunEvent {
  const MHDState& state;
  std::optional<DiagnosticsRecord> record;  // set at sample times and at t_end
  bool snapshot = false;
  std::size_t steps = 0;
};

using RunSink = std::function<void(const RunEvent&)>;

/// Advances st0 to opts.stepper.t_end, landing exactly on sample, snapshot and final
/// times. Step failures are rethrown as StepError carrying the last good time.
MHDState run(const MHDState& st0, const RunOptions& opts, const RunSink& sink);

}  // namespace mhd2
