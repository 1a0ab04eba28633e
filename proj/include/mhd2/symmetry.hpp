#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mhd2/field.hpp"

namespace mhd2 {

/// Perturbation state: velocity u and magnetic perturbation b, with the
/// total field B = b + e2.
struct MHDState {
  double t = 0.0;
  SpectralVector u;
  SpectralVector b;

  const GridSpec& grid() const { return u.grid(); }
  static MHDState zero(const GridSpec& grid, double t = 0.0) { return {t, zero_vector(grid), zero_vector(grid)}; }
};

/// Parity under x2 -> -x2 required of each component: u1, b2 even; u2, b1 odd.
struct SymmetryClass {
  struct Entry {
    const char* name;
    int parity;  // +1 even, -1 odd
  };
  static constexpr std::array<Entry, 4> table{{{"u1", +1}, {"u2", -1}, {"b1", -1}, {"b2", +1}}};
  static constexpr int u_parity(int component) { return table[component].parity; }
  static constexpr int b_parity(int component) { return table[2 + component].parity; }
};

struct InitialDataSpec {
  double epsilon = 1e-2;
  int s = 2;
  std::uint64_t seed = 1;
  double spectrum_decay = 4.0;
  int max_wavenumber = 4;
  /// Total flux of B2; enters only through the normalized equilibrium e2.
  double alpha = kTorusArea;
};

/// g(x1, x2) = parity * f(x1, -x2), done as the exact index map q -> (n - q) mod n on k2.
SpectralScalar reflect_x2(const SpectralScalar& f, int parity);

MHDState reflect_state(const MHDState& st);
MHDState symmetrize(const MHDState& st);

/// Projection of a single vector field onto the velocity (or magnetic) parities.
SpectralVector symmetrize_velocity(const SpectralVector& u);
SpectralVector symmetrize_magnetic(const SpectralVector& b);

/// max over the four components of ||(st - reflect(st))/2||_inf / max_abs(st), in physical space.
double symmetry_defect(const MHDState& st);
/// Same measure for a velocity field alone (u1 even, u2 odd).
double velocity_symmetry_defect(const SpectralVector& u);
/// Coefficient-space version of symmetry_defect; cheap, used to decide class membership.
double spectral_symmetry_defect(const MHDState& st);

/// Sets the k = 0 mode of every component to zero.
void remove_means(MHDState& st);

/// Random symmetric, divergence-free, zero-mean initial data with
/// ||u0||_{H^{2s+1}} = ||grad b0||_{H^{2s}} = epsilon / 2.
MHDState make_initial_data(const InitialDataSpec& spec, const GridSpec& grid);

/// Coefficients |k|^-decay exp(i theta_k) for 0 < max(|k1|,|k2|) <= kmax, Hermitian,
/// with phases from the counter-based generator keyed by (seed, stream, k).
SpectralScalar random_band_limited(const GridSpec& grid, std::uint64_t seed, std::uint64_t stream, int kmax,
                                   double decay);

/// Uniform double in [0, 1) from the counter (seed, stream, k1, k2); platform independent.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, int k1, int k2);

struct InvariantCheck {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

using ValidationReport = std::vector<InvariantCheck>;

ValidationReport validate_state(const MHDState& st);
bool all_pass(const ValidationReport& report);

}  // namespace mhd2
