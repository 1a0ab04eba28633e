#include <doctest.h>

#include <cmath>

#include "mhd2/error.hpp"
#include "mhd2/spectral.hpp"
#include "mhd2/symmetry.hpp"
#include "util.hpp"

using namespace mhd2;
using namespace testutil;

namespace {

MHDState state_of(const GridSpec& g, SpectralVector u, SpectralVector b) {
  MHDState st = MHDState::zero(g);
  st.u = std::move(u);
  st.b = std::move(b);
  return st;
}

double state_diff(const MHDState& a, const MHDState& b) {
  return std::max(max_diff(a.u, b.u), max_diff(a.b, b.b));
}

}  // namespace

TEST_CASE("reflect_state examples") {
  const GridSpec g = GridSpec::make(16);
  const auto cos_y = [](double, double y) { return std::cos(y); };
  const auto sin_y = [](double, double y) { return std::sin(y); };

  const MHDState even = state_of(g, spec_vec(g, cos_y, zero_fn), zero_vector(g));
  CHECK(state_diff(reflect_state(even), even) < 1e-15);

  const MHDState odd2 = state_of(g, spec_vec(g, zero_fn, sin_y), zero_vector(g));
  CHECK(state_diff(reflect_state(odd2), odd2) < 1e-15);

  const MHDState flip = state_of(g, spec_vec(g, sin_y, zero_fn), zero_vector(g));
  const MHDState want = state_of(g, spec_vec(g, [](double, double y) { return -std::sin(y); }, zero_fn),
                                 zero_vector(g));
  CHECK(state_diff(reflect_state(flip), want) < 1e-15);
}

TEST_CASE("reflection matches the physical index map") {
  const GridSpec g = GridSpec::make(16);
  const SpectralScalar f = random_band_limited(g, 3, 0, 7, 0.0);
  const ScalarField fp = inverse_transform(f);
  const ScalarField rp = inverse_transform(reflect_x2(f, -1));
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(rp.at(i, j) + fp.at(i, (g.n - j) % g.n)));
  CHECK(worst < 1e-14);
}

TEST_CASE("reflection is an involution and an isometry") {
  const GridSpec g = GridSpec::make(32);
  const MHDState st = random_state(g, 7, 10, 1.0, false);
  const MHDState rr = reflect_state(reflect_state(st));
  CHECK(state_diff(rr, st) == 0.0);
  const MHDState r = reflect_state(st);
  for (int m = 0; m <= 2; ++m) {
    CHECK(rel(sobolev_norm(r.u, m), sobolev_norm(st.u, m)) < 1e-12);
    CHECK(rel(sobolev_norm(r.b, m), sobolev_norm(st.b, m)) < 1e-12);
  }
}

TEST_CASE("symmetrize examples and projector properties") {
  const GridSpec g = GridSpec::make(32);
  const MHDState flip = state_of(g, spec_vec(g, [](double, double y) { return std::sin(y); }, zero_fn),
                                 zero_vector(g));
  CHECK(max_abs(symmetrize(flip).u) < 1e-15);

  const MHDState st = random_state(g, 8, 10, 1.0, false);
  const MHDState s1 = symmetrize(st);
  CHECK(symmetry_defect(s1) < 1e-14);
  CHECK(state_diff(symmetrize(s1), s1) == 0.0);
  for (int m = 0; m <= 2; ++m) {
    CHECK(sobolev_norm(s1.u, m) <= sobolev_norm(st.u, m) * (1 + 1e-14));
    CHECK(sobolev_norm(s1.b, m) <= sobolev_norm(st.b, m) * (1 + 1e-14));
  }
  // commutes with Leray
  const SpectralVector v = random_vec(g, 9, 10);
  CHECK(max_diff(symmetrize_velocity(leray_project(v)), leray_project(symmetrize_velocity(v))) < 1e-12);
  CHECK(max_diff(symmetrize_magnetic(leray_project(v)), leray_project(symmetrize_magnetic(v))) < 1e-12);
  // divergence and mean preserved
  CHECK(divergence_defect(s1.u) < 1e-14);
  CHECK(std::abs(mean(s1.b.c2)) < 1e-15);
}

TEST_CASE("symmetry_defect examples") {
  const GridSpec g = GridSpec::make(16);
  const auto cos_y = [](double, double y) { return std::cos(y); };
  CHECK(symmetry_defect(state_of(g, spec_vec(g, cos_y, zero_fn), spec_vec(g, zero_fn, cos_y))) < 1e-15);
  const MHDState flip = state_of(g, spec_vec(g, [](double, double y) { return std::sin(y); }, zero_fn),
                                 zero_vector(g));
  CHECK(symmetry_defect(flip) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(symmetry_defect(MHDState::zero(g)) == 0.0);
}

TEST_CASE("class members have odd vorticity with vanishing x2 averages") {
  const GridSpec g = GridSpec::make(32);
  const MHDState st = random_state(g, 12, 10, 1.0, true);
  const ScalarField w = vorticity(st.u);
  const double wmax = max_abs(w);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < g.n; ++j) sum += w.at(i, j);
    worst = std::max(worst, std::abs(sum));
  }
  CHECK(worst < 1e-10 * wmax);
}

TEST_CASE("make_initial_data") {
  const GridSpec g = GridSpec::make(64);
  InitialDataSpec spec;
  spec.epsilon = 1e-2;
  spec.s = 2;
  spec.seed = 1;
  const MHDState st = make_initial_data(spec, g);
  const double nu = sobolev_norm(st.u, 5);
  const double ngb = gradient_sobolev_norm(st.b, 4);
  CHECK(std::abs(nu + ngb - 1e-2) < 1e-12);
  CHECK(rel(nu, 5e-3) < 1e-12);
  CHECK(symmetry_defect(st) < 1e-14);
  CHECK(divergence_defect(st.u) < 1e-12);
  CHECK(divergence_defect(st.b) < 1e-12);
  CHECK(all_pass(validate_state(st)));

  const MHDState again = make_initial_data(spec, g);
  CHECK(state_diff(again, st) == 0.0);

  spec.seed = 2;
  CHECK(state_diff(make_initial_data(spec, g), st) > 0.0);

  spec.epsilon = 0.0;
  const MHDState z = make_initial_data(spec, g);
  CHECK(max_abs(z.u) == 0.0);
  CHECK(max_abs(z.b) == 0.0);
}

TEST_CASE("initial data is a property of the continuum, not the grid") {
  InitialDataSpec spec;
  spec.seed = 4;
  const MHDState a = make_initial_data(spec, GridSpec::make(32));
  const MHDState b = make_initial_data(spec, GridSpec::make(64));
  for (int k1 = -4; k1 <= 4; ++k1)
    for (int k2 = -4; k2 <= 4; ++k2) {
      CHECK(std::abs(a.u.c1.mode(k1, k2) - b.u.c1.mode(k1, k2)) < 1e-17);
      CHECK(std::abs(a.b.c2.mode(k1, k2) - b.b.c2.mode(k1, k2)) < 1e-17);
    }
}

TEST_CASE("make_initial_data rejects bad specs") {
  const GridSpec g = GridSpec::make(16);
  InitialDataSpec spec;
  spec.s = 1;
  CHECK_THROWS_AS(make_initial_data(spec, g), Error);
  spec = {};
  spec.max_wavenumber = 9;
  CHECK_THROWS_AS(make_initial_data(spec, g), Error);
  spec = {};
  spec.epsilon = -1.0;
  CHECK_THROWS_AS(make_initial_data(spec, g), Error);
}

TEST_CASE("validate_state") {
  const GridSpec g = GridSpec::make(16);
  const auto zero = validate_state(MHDState::zero(g));
  CHECK(all_pass(zero));
  for (const auto& c : zero) CHECK(c.measured == 0.0);

  MHDState st = MHDState::zero(g);
  st.b.c2.mode(0, 0) = 1.0 / kTorusArea;
  const auto rep = validate_state(st);
  CHECK_FALSE(all_pass(rep));
  bool found = false;
  for (const auto& c : rep) {
    if (c.name == "mean_b2") {
      found = true;
      CHECK_FALSE(c.pass);
      CHECK(c.measured == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK(found);
}

TEST_CASE("counter generator is stable") {
  const double a = counter_uniform(1, 0, 3, -2);
  CHECK(a == counter_uniform(1, 0, 3, -2));
  CHECK(a != counter_uniform(1, 0, -3, 2));
  CHECK(a >= 0.0);
  CHECK(a < 1.0);
}

TEST_CASE("symmetry table") {
  CHECK(SymmetryClass::u_parity(0) == 1);
  CHECK(SymmetryClass::u_parity(1) == -1);
  CHECK(SymmetryClass::b_parity(0) == -1);
  CHECK(SymmetryClass::b_parity(1) == 1);
}
