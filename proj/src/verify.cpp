#include "mhd2/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "mhd2/diagnostics.hpp"
#include "mhd2/dynamics.hpp"
#include "mhd2/integrator.hpp"
#include "mhd2/oracle.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2::verify {

bool Report::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

void print(std::ostream& os, const Report& rep) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %-24s %-24s %s\n", ("[" + rep.suite + "]").c_str(), "measured", "threshold",
                "result");
  os << buf;
  for (const Row& r : rep.rows) {
    char thr[32] = "-";
    if (!std::isnan(r.threshold)) std::snprintf(thr, sizeof thr, "%.17g", r.threshold);
    std::snprintf(buf, sizeof buf, "%-28s %-24.17g %-24s %s", r.name.c_str(), r.measured, thr,
                  r.pass ? "PASS" : "FAIL");
    os << buf;
    if (!r.note.empty()) os << "  " << r.note;
    os << "\n";
  }
  os << (rep.passed() ? "all checks passed\n" : "some checks FAILED\n");
}

namespace {

Row at_most(std::string name, double measured, double threshold, std::string note = {}) {
  return {std::move(name), measured, threshold, std::isfinite(measured) && measured <= threshold, std::move(note)};
}

constexpr double kInfo = std::numeric_limits<double>::quiet_NaN();

double l2(const SpectralVector& v) { return std::sqrt(inner_product(v, v)); }

double state_distance(const MHDState& a, const MHDState& b) {
  const double du = l2(a.u - b.u);
  const double db = l2(a.b - b.b);
  return std::sqrt(du * du + db * db);
}

double state_size(const MHDState& a) {
  const double nu = l2(a.u), nb = l2(a.b);
  return std::sqrt(nu * nu + nb * nb);
}

SpectralVector random_vector(const GridSpec& grid, std::uint64_t seed, int kmax, double decay) {
  SpectralVector v{random_band_limited(grid, seed, 0, kmax, decay), random_band_limited(grid, seed, 1, kmax, decay)};
  v.c1.mode(0, 0) = 0.0;
  v.c2.mode(0, 0) = 0.0;
  return v;
}

}  // namespace

SpectralVector random_class_velocity(const GridSpec& grid, std::uint64_t seed, int kmax, double decay) {
  SpectralVector u = leray_project(symmetrize_velocity(random_vector(grid, seed, kmax, decay)));
  u.c1.mode(0, 0) = 0.0;
  u.c2.mode(0, 0) = 0.0;
  return u;
}

SpectralVector random_solenoidal(const GridSpec& grid, std::uint64_t seed, int kmax, double decay) {
  return leray_project(random_vector(grid, seed, kmax, decay));
}

Report poincare(const PoincareOptions& o) {
  const GridSpec g = GridSpec::make(o.n);
  const int cutoff = g.dealias_cutoff();
  std::vector<double> max_ratio(o.k + 1, 0.0);
  double cz = 0.0, link = 0.0;
  for (int i = 0; i < o.samples; ++i) {
    const int kmax = 1 + i % cutoff;
    const double decay = 0.5 * (i % 7);
    const SpectralVector u = random_class_velocity(g, o.seed * 1000003ULL + i, kmax, decay);
    const SpectralScalar w = vorticity_spectral(u);
    const SpectralScalar d2w = partial_derivative(w, {0, 1});
    for (int k = 0; k <= o.k; ++k) {
      const PoincareResult r = poincare_check(u, k);
      max_ratio[k] = std::max(max_ratio[k], r.ratio);
      const double wk = sobolev_norm(w, k);
      cz = std::max(cz, std::abs(r.lhs - wk) / wk);
      link = std::max(link, wk / sobolev_norm(d2w, k));
    }
  }
  Report rep{"poincare", {}};
  for (int k = 0; k <= o.k; ++k) {
    rep.rows.push_back(at_most("max_ratio_k" + std::to_string(k), max_ratio[k], kPoincareBound,
                               "|grad u|_Hk / |d2 u|_H(k+1)"));
  }
  rep.rows.push_back(at_most("cz_link_rel", cz, 1e-10, "|grad u|_Hk vs |curl u|_Hk"));
  rep.rows.push_back(at_most("vorticity_poincare", link, 1.0 + 1e-12, "|w|_Hk / |d2 w|_Hk"));
  return rep;
}

Report skew(const SkewOptions& o) {
  const GridSpec g = GridSpec::make(o.n);
  const int cutoff = g.dealias_cutoff();
  double worst = 0.0;
  for (int i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = o.seed * 1000003ULL + i;
    const int kmax = 1 + (i * 7) % cutoff;
    const SpectralVector u = random_solenoidal(g, seed, kmax, 0.5 * (i % 5));
    SpectralScalar f = random_band_limited(g, seed, 7, 1 + (i * 3) % cutoff, 0.5 * (i % 3));
    worst = std::max(worst, transport_skew_defect(u, f));
  }
  Report rep{"skew", {}};
  rep.rows.push_back(at_most("max_skew_defect", worst, 1e-10, std::to_string(o.samples) + " pairs"));
  return rep;
}

Report linear(const LinearOptions& o) {
  const GridSpec g = GridSpec::make(o.n);
  struct ModeInit {
    int k1, k2;
    Complex a0, c0;
  };
  std::vector<ModeInit> modes;
  const double amp = 1e-3;
  for (int k1 = 0; k1 <= o.kmax; ++k1) {
    for (int k2 = -o.kmax; k2 <= o.kmax; ++k2) {
      if (k1 * k1 + k2 * k2 > o.kmax * o.kmax || (k1 == 0 && k2 <= 0)) continue;
      auto u = [&](int stream) { return 2.0 * counter_uniform(o.seed, stream, k1, k2) - 1.0; };
      modes.push_back({k1, k2, amp * Complex(u(0), u(1)), amp * Complex(u(2), u(3))});
    }
  }

  auto put = [&](SpectralVector& v, int k1, int k2, Complex amp_k) {
    const double kn = std::hypot(double(k1), double(k2));
    const double p1 = -k2 / kn, p2 = k1 / kn;
    v.c1.mode(k1, k2) = amp_k * p1;
    v.c2.mode(k1, k2) = amp_k * p2;
    v.c1.mode(-k1, -k2) = std::conj(amp_k) * p1;
    v.c2.mode(-k1, -k2) = std::conj(amp_k) * p2;
  };
  auto get = [&](const SpectralVector& v, int k1, int k2) {
    const double kn = std::hypot(double(k1), double(k2));
    return v.c1.mode(k1, k2) * (-k2 / kn) + v.c2.mode(k1, k2) * (k1 / kn);
  };

  MHDState st0 = MHDState::zero(g);
  for (const auto& m : modes) {
    put(st0.u, m.k1, m.k2, m.a0);
    put(st0.b, m.k1, m.k2, m.c0);
  }

  auto advance = [&](const DynamicsOptions& dyn, double dt) {
    RunOptions ro;
    ro.stepper = {0.4, dt, 1e-12, o.t_end};
    ro.sample_every = o.t_end;
    ro.dynamics = dyn;
    return run(st0, ro, {});
  };

  const MHDState lin = advance({false, true, Formulation::Perturbation}, o.dt);
  double worst = 0.0, worst_defective = 0.0;
  for (const auto& m : modes) {
    const auto [a, c] = oracle::linearized_mode_solution(m.k1, m.k2, m.a0, m.c0, o.t_end);
    const double ref = std::hypot(std::abs(a), std::abs(c));
    const double err =
        std::hypot(std::abs(get(lin.u, m.k1, m.k2) - a), std::abs(get(lin.b, m.k1, m.k2) - c)) / ref;
    worst = std::max(worst, err);
    const int kk = m.k1 * m.k1 + m.k2 * m.k2;
    if (kk * kk == 4 * m.k2 * m.k2) worst_defective = std::max(worst_defective, err);
  }

  const MHDState diff = advance({false, false, Formulation::Perturbation}, o.dt_diffusion);
  double worst_diff = 0.0, worst_frozen = 0.0;
  for (const auto& m : modes) {
    const double kk = m.k1 * m.k1 + m.k2 * m.k2;
    const Complex c = m.c0 * std::exp(-kk * o.t_end);
    worst_diff = std::max(worst_diff, std::abs(get(diff.b, m.k1, m.k2) - c) / std::abs(c));
    worst_frozen = std::max(worst_frozen, std::abs(get(diff.u, m.k1, m.k2) - m.a0) / std::abs(m.a0));
  }

  Report rep{"linear", {}};
  rep.rows.push_back(at_most("mode_max_rel", worst, 1e-8, std::to_string(modes.size()) + " modes, |k| <= " +
                                                              std::to_string(o.kmax)));
  rep.rows.push_back(at_most("defective_mode_max_rel", worst_defective, 1e-8, "k with |k|^4 = 4 k2^2"));
  rep.rows.push_back(at_most("diffusion_max_rel", worst_diff, 1e-13, "b_k vs exp(-|k|^2 t)"));
  rep.rows.push_back(at_most("frozen_velocity_rel", worst_frozen, 1e-13, "u constant without coupling"));
  return rep;
}

OrderStudy order_study(const OrderOptions& o) {
  const GridSpec g = GridSpec::make(o.n);
  InitialDataSpec spec;
  spec.epsilon = o.epsilon;
  spec.seed = o.seed;
  const MHDState st0 = make_initial_data(spec, g);
  auto integrate = [&](double dt) {
    const long steps = std::lround(o.t_end / dt);
    MHDState st = st0;
    for (long i = 0; i < steps; ++i) st = step_ifrk4(st, dt);
    return st;
  };
  OrderStudy out;
  const double finest = o.dt0 / std::pow(2.0, o.refinements);
  const MHDState ref = integrate(finest / 16.0);
  const double scale = state_size(ref);
  for (int r = 0; r <= o.refinements; ++r) {
    const double dt = o.dt0 / std::pow(2.0, r);
    out.dt.push_back(dt);
    out.error.push_back(state_distance(integrate(dt), ref) / scale);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(out.dt.size());
  for (std::size_t i = 0; i < out.dt.size(); ++i) {
    const double x = std::log(out.dt[i]), y = std::log(out.error[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    if (i > 0) out.local_slope.push_back(std::log(out.error[i - 1] / out.error[i]) / std::log(2.0));
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

Report order(const OrderOptions& o) {
  const OrderStudy s = order_study(o);
  Report rep{"order", {}};
  for (std::size_t i = 0; i < s.dt.size(); ++i) {
    char note[64];
    std::snprintf(note, sizeof note, "dt = %g", s.dt[i]);
    rep.rows.push_back({"rel_error_" + std::to_string(i), s.error[i], kInfo, true, note});
  }
  for (std::size_t i = 0; i < s.local_slope.size(); ++i) {
    rep.rows.push_back({"local_slope_" + std::to_string(i), s.local_slope[i], kInfo, true, "informational"});
  }
  rep.rows.push_back({"slope", s.slope, 4.0, std::abs(s.slope - 4.0) <= 0.2, "least squares, must lie in 4 +- 0.2"});
  return rep;
}

Report oracle(const OracleOptions& o) {
  const GridSpec g = GridSpec::make(o.n);
  ScalarField f(g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) f.at(i, j) = 2.0 * counter_uniform(o.seed, 11, i, j) - 1.0;
  }
  const SpectralScalar fast = forward_transform(f);
  const SpectralScalar slow = oracle::dft_coefficients(f);
  Report rep{"oracle", {}};
  rep.rows.push_back(at_most("forward_max_abs", max_abs(fast - slow), 1e-12, "n = " + std::to_string(g.n)));
  ScalarField back = inverse_transform(slow);
  double inv = 0.0;
  for (std::size_t x = 0; x < back.samples.size(); ++x) inv = std::max(inv, std::abs(back.samples[x] - f.samples[x]));
  rep.rows.push_back(at_most("inverse_max_abs", inv, 1e-12));

  double deriv = 0.0;
  for (int a1 = 0; a1 <= 3; ++a1) {
    for (int a2 = 0; a1 + a2 <= 3; ++a2) {
      if (a1 + a2 == 0) continue;
      const ScalarField d_fast = inverse_transform(partial_derivative(fast, {a1, a2}));
      const ScalarField d_slow = oracle::dft_derivative(f, {a1, a2});
      for (std::size_t x = 0; x < d_fast.samples.size(); ++x) {
        deriv = std::max(deriv, std::abs(d_fast.samples[x] - d_slow.samples[x]));
      }
    }
  }
  rep.rows.push_back(at_most("derivative_max_abs", deriv, 1e-12, "all alpha with |alpha| <= 3"));

  // Nyquist lines carry no well-defined odd derivative, so the norms are compared on
  // a field without them
  SpectralScalar smooth = fast;
  for (int q = 0; q < g.n; ++q) {
    smooth.mode(-g.n / 2, g.wavenumber(q)) = 0.0;
    smooth.mode(g.wavenumber(q), -g.n / 2) = 0.0;
  }
  const ScalarField fs = inverse_transform(smooth);
  double sob = 0.0;
  for (int m = 0; m <= 4; ++m) {
    const double fast_n = sobolev_norm(smooth, m);
    const double slow_n = std::sqrt(oracle::sobolev_norm_sq_bruteforce(fs, m));
    sob = std::max(sob, std::abs(fast_n - slow_n) / slow_n);
  }
  rep.rows.push_back(at_most("sobolev_norm_rel", sob, 1e-10, "m = 0..4"));
  return rep;
}

}  // namespace mhd2::verify
