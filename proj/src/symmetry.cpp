#include "mhd2/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "mhd2/error.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2 {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SpectralScalar symmetrize_component(const SpectralScalar& f, int parity) {
  SpectralScalar r = reflect_x2(f, parity);
  const int n = f.grid.n;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const std::size_t x = f.grid.flat(p, q);
      r.coeffs[x] = 0.5 * (f.coeffs[x] + r.coeffs[x]);
    }
  }
  return r;
}

double physical_max(const SpectralScalar& f) {
  double m = 0.0;
  for (const auto& c : synthesize(f)) m = std::max(m, std::abs(c.real()));
  return m;
}

double anti_part_max(const SpectralScalar& f, int parity) {
  SpectralScalar anti = f;
  anti -= reflect_x2(f, parity);
  anti *= 0.5;
  return physical_max(anti);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, int k1, int k2) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0xD1B54A32D192ED03ull));
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k1)) << 32) | static_cast<std::uint32_t>(k2);
  h = splitmix64(h ^ key);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SpectralScalar reflect_x2(const SpectralScalar& f, int parity) {
  const GridSpec& g = f.grid;
  SpectralScalar out(g);
  for (int p = 0; p < g.n; ++p) {
    for (int q = 0; q < g.n; ++q) {
      const int mirrored = (g.n - q) % g.n;
      out.coeffs[g.flat(p, q)] = double(parity) * f.coeffs[g.flat(p, mirrored)];
    }
  }
  return out;
}

MHDState reflect_state(const MHDState& st) {
  MHDState r;
  r.t = st.t;
  r.u = {reflect_x2(st.u.c1, SymmetryClass::u_parity(0)), reflect_x2(st.u.c2, SymmetryClass::u_parity(1))};
  r.b = {reflect_x2(st.b.c1, SymmetryClass::b_parity(0)), reflect_x2(st.b.c2, SymmetryClass::b_parity(1))};
  return r;
}

SpectralVector symmetrize_velocity(const SpectralVector& u) {
  return {symmetrize_component(u.c1, SymmetryClass::u_parity(0)),
          symmetrize_component(u.c2, SymmetryClass::u_parity(1))};
}

SpectralVector symmetrize_magnetic(const SpectralVector& b) {
  return {symmetrize_component(b.c1, SymmetryClass::b_parity(0)),
          symmetrize_component(b.c2, SymmetryClass::b_parity(1))};
}

MHDState symmetrize(const MHDState& st) { return {st.t, symmetrize_velocity(st.u), symmetrize_magnetic(st.b)}; }

double symmetry_defect(const MHDState& st) {
  const SpectralScalar* comps[4] = {&st.u.c1, &st.u.c2, &st.b.c1, &st.b.c2};
  double scale = 0.0;
  double defect = 0.0;
  for (int c = 0; c < 4; ++c) {
    scale = std::max(scale, physical_max(*comps[c]));
    defect = std::max(defect, anti_part_max(*comps[c], SymmetryClass::table[c].parity));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

double velocity_symmetry_defect(const SpectralVector& u) {
  const double scale = std::max(physical_max(u.c1), physical_max(u.c2));
  const double defect = std::max(anti_part_max(u.c1, SymmetryClass::u_parity(0)),
                                 anti_part_max(u.c2, SymmetryClass::u_parity(1)));
  return scale > 0.0 ? defect / scale : 0.0;
}

double spectral_symmetry_defect(const MHDState& st) {
  const SpectralScalar* comps[4] = {&st.u.c1, &st.u.c2, &st.b.c1, &st.b.c2};
  double scale = 0.0;
  double defect = 0.0;
  for (int c = 0; c < 4; ++c) {
    const SpectralScalar& f = *comps[c];
    const int parity = SymmetryClass::table[c].parity;
    const GridSpec& g = f.grid;
    for (int p = 0; p < g.n; ++p) {
      for (int q = 0; q < g.n; ++q) {
        const Complex a = f.coeffs[g.flat(p, q)];
        const Complex r = double(parity) * f.coeffs[g.flat(p, (g.n - q) % g.n)];
        scale = std::max(scale, std::abs(a));
        defect = std::max(defect, 0.5 * std::abs(a - r));
      }
    }
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

void remove_means(MHDState& st) {
  st.u.c1.coeffs[0] = st.u.c2.coeffs[0] = Complex{};
  st.b.c1.coeffs[0] = st.b.c2.coeffs[0] = Complex{};
}

SpectralScalar random_band_limited(const GridSpec& grid, std::uint64_t seed, std::uint64_t stream, int kmax,
                                   double decay) {
  if (kmax < 0 || kmax >= grid.n / 2) {
    throw Error(ErrorCode::InvalidValue, "max_wavenumber must lie in [0, n/2)");
  }
  SpectralScalar f(grid);
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      // one representative of each +-k pair
      if (k1 == 0 && k2 <= 0) continue;
      const double theta = 2.0 * kPi * counter_uniform(seed, stream, k1, k2);
      const double magnitude = std::pow(std::hypot(double(k1), double(k2)), -decay);
      const Complex c = std::polar(magnitude, theta);
      f.mode(k1, k2) = c;
      f.mode(-k1, -k2) = std::conj(c);
    }
  }
  return f;
}

MHDState make_initial_data(const InitialDataSpec& spec, const GridSpec& grid) {
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
    throw Error(ErrorCode::InvalidValue, "epsilon must be finite and >= 0");
  }
  if (spec.s < 2) throw Error(ErrorCode::InvalidValue, "s must be >= 2");
  if (!(spec.spectrum_decay > 0.0)) throw Error(ErrorCode::InvalidValue, "spectrum_decay must be > 0");
  if (spec.max_wavenumber < 1 || spec.max_wavenumber > grid.dealias_cutoff()) {
    throw Error(ErrorCode::InvalidValue, "max_wavenumber must lie in [1, dealias cutoff " +
                                             std::to_string(grid.dealias_cutoff()) + "]");
  }
  if (spec.alpha == 0.0) throw Error(ErrorCode::InvalidValue, "alpha must be nonzero");

  MHDState st = MHDState::zero(grid);
  if (spec.epsilon == 0.0) return st;

  const int high = 2 * spec.s + 1;
  for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
    auto draw = [&](std::uint64_t component) {
      return random_band_limited(grid, spec.seed, 4 * attempt + component, spec.max_wavenumber,
                                 spec.spectrum_decay);
    };
    st.u = leray_project(symmetrize_velocity({draw(0), draw(1)}));
    st.b = leray_project(symmetrize_magnetic({draw(2), draw(3)}));
    remove_means(st);
    const double nu = sobolev_norm(st.u, high);
    const double nb = gradient_sobolev_norm(st.b, high - 1);
    if (nu > 0.0 && nb > 0.0) {
      st.u = (0.5 * spec.epsilon / nu) * st.u;
      st.b = (0.5 * spec.epsilon / nb) * st.b;
      return st;
    }
  }
  throw Error(ErrorCode::DegenerateSpectrum, "random initial data vanished after projection in 10 draws");
}

ValidationReport validate_state(const MHDState& st) {
  ValidationReport report;
  auto add = [&](std::string name, double measured, double threshold) {
    report.push_back({std::move(name), measured, threshold, measured < threshold || measured == 0.0});
  };
  const bool finite = all_finite(st.u) && all_finite(st.b);
  report.push_back({"finite", finite ? 0.0 : 1.0, 0.5, finite});
  if (!finite) return report;
  add("div_defect_u", divergence_defect(st.u), 1e-10);
  add("div_defect_b", divergence_defect(st.b), 1e-10);
  add("mean_u1", std::abs(mean(st.u.c1)), 1e-12);
  add("mean_u2", std::abs(mean(st.u.c2)), 1e-12);
  add("mean_b1", std::abs(mean(st.b.c1)), 1e-12);
  add("mean_b2", std::abs(mean(st.b.c2)), 1e-12);
  add("symmetry_defect", symmetry_defect(st), 1e-10);
  return report;
}

bool all_pass(const ValidationReport& report) {
  return std::all_of(report.begin(), report.end(), [](const InvariantCheck& c) { return c.pass; });
}

}  // namespace mhd2
