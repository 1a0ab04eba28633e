#pragma once

#include <cmath>
#include <functional>

#include "mhd2/field.hpp"
#include "mhd2/spectral.hpp"
#include "mhd2/symmetry.hpp"

namespace testutil {

using namespace mhd2;

inline ScalarField sample(const GridSpec& g, const std::function<double(double, double)>& f) {
  ScalarField out(g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) out.at(i, j) = f(g.coord(i), g.coord(j));
  }
  return out;
}

inline SpectralScalar spec(const GridSpec& g, const std::function<double(double, double)>& f) {
  return forward_transform(sample(g, f));
}

inline SpectralVector spec_vec(const GridSpec& g, const std::function<double(double, double)>& f1,
                               const std::function<double(double, double)>& f2) {
  return {spec(g, f1), spec(g, f2)};
}

inline double zero_fn(double, double) { return 0.0; }

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t x = 0; x < a.samples.size(); ++x) m = std::max(m, std::abs(a.samples[x] - b.samples[x]));
  return m;
}

inline double max_diff(const SpectralScalar& a, const SpectralScalar& b) { return max_abs(a - b); }
inline double max_diff(const SpectralVector& a, const SpectralVector& b) { return max_abs(a - b); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Random real field with a spectrum ~ |k|^-decay up to kmax, all components.
inline SpectralVector random_vec(const GridSpec& g, std::uint64_t seed, int kmax, double decay = 1.0) {
  return {random_band_limited(g, seed, 100, kmax, decay), random_band_limited(g, seed, 101, kmax, decay)};
}

inline MHDState random_state(const GridSpec& g, std::uint64_t seed, int kmax, double amp, bool in_class) {
  MHDState st = MHDState::zero(g);
  st.u = amp * leray_project(random_vec(g, seed, kmax));
  st.b = amp * leray_project(SpectralVector{random_band_limited(g, seed, 102, kmax, 1.0),
                                            random_band_limited(g, seed, 103, kmax, 1.0)});
  if (in_class) st = symmetrize(st);
  remove_means(st);
  return st;
}

}  // namespace testutil
