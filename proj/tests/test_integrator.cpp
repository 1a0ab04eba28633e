#include <doctest.h>

#include <cmath>
#include <cstring>

#include "mhd2/error.hpp"
#include "mhd2/integrator.hpp"
#include "mhd2/oracle.hpp"
#include "mhd2/spectral.hpp"
#include "util.hpp"

using namespace mhd2;
using namespace testutil;

TEST_CASE("stepper config validation") {
  StepperConfig c;
  CHECK_NOTHROW(c.validate());
  c.cfl = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.cfl = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.dt_min = c.dt_max;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("cfl_dt examples") {
  const GridSpec g = GridSpec::make(64);
  StepperConfig cfg;
  CHECK(cfl_dt(MHDState::zero(g), cfg) == 0.01);

  MHDState fast = MHDState::zero(g);
  fast.u = spec_vec(g, [](double, double y) { return 10.0 * std::cos(y); }, zero_fn);
  cfg.dt_max = 1.0;
  CHECK(cfl_dt(fast, cfg) == doctest::Approx(0.4 * (2 * kPi / 64) / 11.0).epsilon(1e-12));

  cfg.dt_min = 0.5;
  CHECK_THROWS_AS(cfl_dt(fast, cfg), Error);
}

TEST_CASE("step of the zero state") {
  const GridSpec g = GridSpec::make(16);
  MHDState z = MHDState::zero(g, 2.0);
  const MHDState next = step_ifrk4(z, 0.01);
  CHECK(next.t == 2.01);
  CHECK(max_abs(next.u) == 0.0);
  CHECK(max_abs(next.b) == 0.0);
  CHECK_THROWS_AS(step_ifrk4(z, 0.0), Error);
}

TEST_CASE("pure diffusion is exact") {
  const GridSpec g = GridSpec::make(16);
  MHDState st = MHDState::zero(g);
  st.b = spec_vec(g, [](double, double y) { return std::cos(y); }, zero_fn);
  const DynamicsOptions diff{false, false, Formulation::Perturbation};
  const double dt = 0.01;
  const MHDState next = step_ifrk4(st, dt, diff);
  CHECK(rel(next.b.c1.mode(0, 1).real(), st.b.c1.mode(0, 1).real() * std::exp(-dt)) < 1e-14);

  const MHDState r = random_state(g, 3, 5, 1.0, false);
  const MHDState rn = step_ifrk4(r, dt, diff);
  double worst = 0.0;
  for (int k1 = -5; k1 <= 5; ++k1)
    for (int k2 = -5; k2 <= 5; ++k2) {
      const Complex c = r.b.c1.mode(k1, k2);
      if (std::abs(c) == 0.0) continue;
      worst = std::max(worst, std::abs(rn.b.c1.mode(k1, k2) - c * std::exp(-(k1 * k1 + k2 * k2) * dt)) / std::abs(c));
    }
  CHECK(worst < 1e-13);
  CHECK(max_diff(rn.u, r.u) < 1e-15);
}

TEST_CASE("linear coupling matches the closed form") {
  const GridSpec g = GridSpec::make(16);
  const Complex a0(0.3, -0.2), c0(-0.1, 0.4);
  // k = (0, 1): k_perp / |k| = (-1, 0)
  MHDState st = MHDState::zero(g);
  st.u.c1.mode(0, 1) = -a0;
  st.u.c1.mode(0, -1) = -std::conj(a0);
  st.b.c1.mode(0, 1) = -c0;
  st.b.c1.mode(0, -1) = -std::conj(c0);
  const DynamicsOptions lin{false, true, Formulation::Perturbation};
  const double dt = 1e-3;
  for (int i = 0; i < 1000; ++i) st = step_ifrk4(st, dt, lin);
  const auto [a, c] = oracle::linearized_mode_solution(0, 1, a0, c0, 1.0);
  CHECK(std::abs(-st.u.c1.mode(0, 1) - a) / std::abs(a) < 1e-8);
  CHECK(std::abs(-st.b.c1.mode(0, 1) - c) / std::abs(c) < 1e-8);
}

TEST_CASE("run: t_end = 0 calls the sink once") {
  const GridSpec g = GridSpec::make(16);
  RunOptions ro;
  ro.stepper.t_end = 0.0;
  int calls = 0;
  const MHDState st = random_state(g, 1, 4, 0.01, true);
  const MHDState out = run(st, ro, [&](const RunEvent& ev) {
    ++calls;
    CHECK(ev.record.has_value());
  });
  CHECK(calls == 1);
  CHECK(max_diff(out.u, st.u) == 0.0);
}

TEST_CASE("run: sample times land exactly") {
  const GridSpec g = GridSpec::make(16);
  RunOptions ro;
  ro.stepper.t_end = 1.0;
  ro.sample_every = 0.01;
  std::vector<double> times;
  const MHDState out = run(MHDState::zero(g), ro, [&](const RunEvent& ev) {
    if (ev.record) times.push_back(ev.record->t);
  });
  CHECK(max_abs(out.u) == 0.0);
  CHECK(out.t == 1.0);
  REQUIRE(times.size() == 101);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(times[i] == doctest::Approx(0.01 * i).epsilon(1e-12));

  ro.sample_every = 0.3;
  ro.snapshot_every = 0.25;
  std::vector<double> snaps, samples;
  run(MHDState::zero(g), ro, [&](const RunEvent& ev) {
    if (ev.snapshot) snaps.push_back(ev.state.t);
    if (ev.record) samples.push_back(ev.state.t);
  });
  CHECK(snaps == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  REQUIRE(samples.size() == 5);
  CHECK(samples[1] == doctest::Approx(0.3));
  CHECK(samples.back() == 1.0);
}

TEST_CASE("run is deterministic") {
  const GridSpec g = GridSpec::make(64);
  InitialDataSpec spec;
  const MHDState st0 = make_initial_data(spec, g);
  RunOptions ro;
  ro.stepper.t_end = 1.0;
  auto collect = [&] {
    std::vector<DiagnosticsRecord> recs;
    run(st0, ro, [&](const RunEvent& ev) {
      if (ev.record) recs.push_back(*ev.record);
    });
    return recs;
  };
  const auto a = collect(), b = collect();
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(DiagnosticsRecord)) == 0);
}

TEST_CASE("class, divergence and means persist for 1000 steps") {
  const GridSpec g = GridSpec::make(32);
  InitialDataSpec spec;
  spec.epsilon = 0.1;
  MHDState st = make_initial_data(spec, g);
  for (int i = 0; i < 1000; ++i) st = step_ifrk4(st, 0.01);
  CHECK(symmetry_defect(st) < 1e-10);
  CHECK(divergence_defect(st.u) < 1e-10);
  CHECK(divergence_defect(st.b) < 1e-10);
  for (const SpectralScalar* c : {&st.u.c1, &st.u.c2, &st.b.c1, &st.b.c2}) CHECK(std::abs(mean(*c)) < 1e-12);
}

TEST_CASE("step failures carry the last good time") {
  const GridSpec g = GridSpec::make(16);
  MHDState st = random_state(g, 2, 4, 1e200, true);
  RunOptions ro;
  ro.stepper = {0.4, 1e-2, 1e-300, 1.0};
  try {
    run(st, ro, {});
    FAIL("expected a StepError");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::NonFiniteState);
    CHECK(e.last_good_t() == 0.0);
  }
  ro.stepper.dt_min = 1e-8;
  try {
    run(st, ro, {});
    FAIL("expected a StepError");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::StepTooSmall);
  }
}
