#include <doctest.h>

#include <cmath>

#include "mhd2/diagnostics.hpp"
#include "mhd2/error.hpp"
#include "mhd2/spectral.hpp"
#include "util.hpp"

using namespace mhd2;
using namespace testutil;

TEST_CASE("energy params") {
  CHECK_THROWS_AS(EnergyParams{1}.validate(), Error);
  CHECK_NOTHROW(EnergyParams{2}.validate());
  CHECK_NOTHROW(EnergyParams{7}.validate());
  CHECK_THROWS_AS(EnergyParams{8}.validate(), Error);
}

TEST_CASE("instantaneous: zero state") {
  const auto r = instantaneous(MHDState::zero(GridSpec::make(16), 1.5), {2});
  CHECK(r.t == 1.5);
  for (double v : r.norm_u) CHECK(v == 0.0);
  for (double v : r.norm_b) CHECK(v == 0.0);
  CHECK(r.l2_energy == 0.0);
  CHECK(r.grad_b_l2_sq == 0.0);
}

TEST_CASE("instantaneous: single mode hand computation") {
  const GridSpec g = GridSpec::make(16);
  const double eps = 0.01;
  MHDState st = MHDState::zero(g);
  st.b = spec_vec(g, zero_fn, [&](double x, double) { return eps * std::cos(x); });
  const auto r = instantaneous(st, {2});
  const double h5 = r.norm_b[DiagnosticsRecord::kH2sp1];
  CHECK(rel(h5 * h5, 12 * kPi * kPi * eps * eps) < 1e-13);
  CHECK(rel(r.l2_energy, 0.5 * 2 * kPi * kPi * eps * eps) < 1e-13);
  CHECK(rel(r.grad_b_l2_sq, 2 * kPi * kPi * eps * eps) < 1e-13);
}

TEST_CASE("instantaneous: multiplier domination and ordering") {
  const GridSpec g = GridSpec::make(32);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MHDState st = random_state(g, seed, 8, 0.1, true);
    const auto r = instantaneous(st, {2});
    CHECK(r.norm_d2u_H2s <= r.norm_u[DiagnosticsRecord::kH2sp1]);
    CHECK(r.norm_d2u_H2sm2 <= r.norm_u[DiagnosticsRecord::kH2sm1]);
    for (int j = 1; j < 4; ++j) CHECK(r.norm_u[j - 1] <= r.norm_u[j]);
    for (int j = 1; j < 5; ++j) CHECK(r.norm_b[j - 1] <= r.norm_b[j]);
    CHECK(r.symmetry_defect < 1e-14);
  }
}

namespace {

DiagnosticsRecord fake(double t, double value) {
  DiagnosticsRecord r;
  r.t = t;
  r.norm_u.fill(value);
  r.norm_b.fill(value);
  r.norm_d2u_H2s = r.norm_d2u_H2sm2 = value;
  return r;
}

}  // namespace

TEST_CASE("ledger: first record and constant series") {
  const EnergyLedger a = ledger_update({}, fake(0.0, 1.0));
  CHECK(a.int0 == 0.0);
  CHECK(a.int1 == 0.0);
  CHECK(a.sup0 == 2.0);
  CHECK(a.sup1 == 2.0);
  CHECK(a.e0() == 2.0);
  const EnergyLedger b = ledger_update(a, fake(1.0, 1.0));
  CHECK(b.int0 == doctest::Approx(2.0));
  // (1+t)^2 weights 1 and 4, trapezoid
  CHECK(b.int1 == doctest::Approx(2.0 * (1.0 + 4.0) / 2.0));
  CHECK(b.sup1 == doctest::Approx(8.0));
  CHECK_THROWS_AS(ledger_update(b, fake(0.5, 1.0)), Error);
}

TEST_CASE("ledger: initial values are instantaneous norms") {
  const GridSpec g = GridSpec::make(32);
  const MHDState st = random_state(g, 9, 8, 0.1, true);
  const auto r = instantaneous(st, {2});
  const EnergyLedger led = ledger_update({}, r);
  const double u5 = sobolev_norm(st.u, 5), b5 = sobolev_norm(st.b, 5);
  const double u3 = sobolev_norm(st.u, 3), b3 = sobolev_norm(st.b, 3);
  CHECK(led.e0() == doctest::Approx(u5 * u5 + b5 * b5).epsilon(1e-14));
  CHECK(led.e1() == doctest::Approx(u3 * u3 + b3 * b3).epsilon(1e-14));
}

TEST_CASE("ledger: decaying mode against the closed-form integral") {
  // b = e^{-t} cos(x1), u = 0: ||b||^2_{H^6} = 7 * 2 pi^2 e^{-2t}
  const GridSpec g = GridSpec::make(16);
  auto integral_for = [&](double h) {
    EnergyLedger led;
    const int steps = static_cast<int>(std::lround(1.0 / h));
    for (int i = 0; i <= steps; ++i) {
      const double t = i * h;
      MHDState st = MHDState::zero(g, t);
      st.b = spec_vec(g, zero_fn, [&](double x, double) { return std::exp(-t) * std::cos(x); });
      led = ledger_update(led, instantaneous(st, {2}));
    }
    return led;
  };
  const double exact = 7 * 2 * kPi * kPi * (1 - std::exp(-2.0)) / 2.0;
  const EnergyLedger fine = integral_for(1e-2);
  CHECK(rel(fine.int0, exact) < 1e-4);
  const double e1 = std::abs(integral_for(0.1).int0 - exact);
  const double e2 = std::abs(integral_for(0.05).int0 - exact);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
  // sups are independent of the sampling density (max sits at t = 0)
  CHECK(integral_for(0.1).sup0 == fine.sup0);
}

TEST_CASE("poincare_check examples") {
  const GridSpec g = GridSpec::make(16);
  const SpectralVector u = spec_vec(g, [](double, double y) { return std::cos(y); }, zero_fn);
  const PoincareResult r = poincare_check(u, 0);
  CHECK(r.lhs == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r.rhs == doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(r.ratio == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r.within_bound);

  CHECK(poincare_check(zero_vector(g), 1).ratio == 0.0);

  const SpectralVector odd = spec_vec(g, [](double, double y) { return std::sin(y); }, zero_fn);
  CHECK_THROWS_AS(poincare_check(odd, 0), Error);
  const SpectralVector grad = spec_vec(g, [](double x, double) { return std::sin(x); }, zero_fn);
  CHECK_THROWS_AS(poincare_check(grad, 0), Error);
}

TEST_CASE("poincare ratio stays below sqrt 2 on random class fields") {
  const GridSpec g = GridSpec::make(32);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SpectralVector u = leray_project(symmetrize_velocity(random_vec(g, seed, 1 + seed % 10, 0.3 * (seed % 5))));
    u.c1.mode(0, 0) = u.c2.mode(0, 0) = 0.0;
    for (int k = 0; k <= 2; ++k) {
      const PoincareResult r = poincare_check(u, k);
      CHECK(r.ratio <= kPoincareBound);
      CHECK(r.ratio < std::sqrt(2.0));
    }
  }
}

TEST_CASE("decay_fit examples") {
  std::vector<std::pair<double, double>> inv, cst, sq;
  for (int t = 1; t <= 100; ++t) {
    inv.emplace_back(t, 1.0 / (1 + t));
    cst.emplace_back(t, 3.0);
    sq.emplace_back(t, 5.0 / ((1 + t) * (1.0 + t)));
  }
  CHECK(decay_fit(inv) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(decay_fit(cst)) < 1e-12);
  CHECK(decay_fit(sq) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK_THROWS_AS(decay_fit(std::span(inv).first(5)), Error);
  CHECK_THROWS_AS(decay_fit(inv, 95.0), Error);
  sq[50].second = 0.0;
  CHECK_THROWS_AS(decay_fit(sq), Error);
}
