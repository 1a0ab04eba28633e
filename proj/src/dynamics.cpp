#include "mhd2/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mhd2/error.hpp"
#include "mhd2/fft.hpp"
#include "mhd2/kernels.hpp"
#include "mhd2/spectral.hpp"

namespace mhd2 {

namespace k = kernels::parallel;

namespace {

// Physical samples of derivative d^alpha of a (already dealiased) field.
void synthesize_into(const SpectralScalar& f, MultiIndex alpha, ComplexBuffer& out) {
  const int n = f.grid.n;
  if (alpha.order() == 0) {
    out = f.coeffs;
  } else {
    out.resize(f.coeffs.size());
    kernels::serial::derivative(f.coeffs, out, n, alpha.a1, alpha.a2);
  }
  kernels::serial::scale_phase(out, n, 1.0);
  fft::backward(out, n);
}

SpectralScalar analyze(ComplexBuffer&& samples, const GridSpec& grid) {
  SpectralScalar f(grid);
  f.coeffs = std::move(samples);
  fft::forward(f.coeffs, grid.n);
  kernels::serial::scale_phase(f.coeffs, grid.n, 1.0 / (double(grid.n) * grid.n));
  kernels::serial::dealias(f.coeffs, grid);
  return f;
}

void zero_mean_mode(SpectralVector& v) { v.c1.coeffs[0] = v.c2.coeffs[0] = Complex{}; }

void require_finite(const Tendency& t) {
  if (!all_finite(t.du) || !all_finite(t.db_soft) || !all_finite(t.db_stiff)) {
    throw Error(ErrorCode::NonFiniteTendency, "tendency has non-finite coefficients");
  }
}

SpectralVector laplacian(const SpectralVector& b) {
  SpectralVector out = partial_derivative(b, {2, 0});
  out = out + partial_derivative(b, {0, 2});
  return out;
}

}  // namespace

QuadraticTerms quadratic_terms(const SpectralVector& u, const SpectralVector& b) {
  const GridSpec& g = u.grid();
  const SpectralVector ud = dealias(u);
  const SpectralVector bd = dealias(b);

  // 12 input fields: u_i, b_i, d_d u_i, d_d b_i.
  struct Job {
    const SpectralScalar* field;
    MultiIndex alpha;
  };
  std::array<Job, 12> jobs;
  std::array<ComplexBuffer, 12> buf;
  for (int i = 0; i < 2; ++i) {
    jobs[i] = {&ud[i], {0, 0}};
    jobs[2 + i] = {&bd[i], {0, 0}};
    for (int d = 0; d < 2; ++d) {
      const MultiIndex alpha = d == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1};
      jobs[4 + 2 * i + d] = {&ud[i], alpha};
      jobs[8 + 2 * i + d] = {&bd[i], alpha};
    }
  }
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < 12; ++j) synthesize_into(*jobs[j].field, jobs[j].alpha, buf[j]);

  std::array<ComplexBuffer, 4> out;
  for (auto& o : out) o.resize(g.size());
  kernels::ProductInputs in;
  for (int i = 0; i < 2; ++i) {
    in.u[i] = buf[i];
    in.b[i] = buf[2 + i];
    for (int d = 0; d < 2; ++d) {
      in.grad_u[i][d] = buf[4 + 2 * i + d];
      in.grad_b[i][d] = buf[8 + 2 * i + d];
    }
  }
  const kernels::ProductOutputs po{{out[0], out[1]}, {out[2], out[3]}};
  k::products(in, po, g.n);

  std::array<SpectralScalar, 4> spec;
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < 4; ++j) spec[j] = analyze(std::move(out[j]), g);
  return {{std::move(spec[0]), std::move(spec[1])}, {std::move(spec[2]), std::move(spec[3])}};
}

Tendency rhs_perturbation(const MHDState& st, const DynamicsOptions& opts) {
  const GridSpec& g = st.grid();
  Tendency t{zero_vector(g), laplacian(st.b), zero_vector(g)};
  if (opts.nonlinear) {
    QuadraticTerms q = quadratic_terms(st.u, st.b);
    t.du = std::move(q.nu);
    t.db_soft = std::move(q.nb);
  }
  if (opts.coupling) {
    t.du = t.du + partial_derivative(st.b, {0, 1});
    t.db_soft = t.db_soft + partial_derivative(st.u, {0, 1});
  }
  t.du = leray_project(std::move(t.du));
  t.db_soft = leray_project(std::move(t.db_soft));
  zero_mean_mode(t.du);
  zero_mean_mode(t.db_soft);
  zero_mean_mode(t.db_stiff);
  require_finite(t);
  return t;
}

Tendency rhs_total(const SpectralVector& u, const SpectralVector& total_b) {
  QuadraticTerms q = quadratic_terms(u, total_b);
  Tendency t{leray_project(std::move(q.nu)), laplacian(total_b), leray_project(std::move(q.nb))};
  zero_mean_mode(t.du);
  zero_mean_mode(t.db_soft);
  zero_mean_mode(t.db_stiff);
  require_finite(t);
  return t;
}

Tendency evaluate_rhs(const MHDState& st, const DynamicsOptions& opts) {
  if (opts.formulation == Formulation::Perturbation) return rhs_perturbation(st, opts);
  if (!opts.nonlinear || !opts.coupling) {
    throw Error(ErrorCode::InvalidValue, "linear test hooks require the perturbation formulation");
  }
  SpectralVector total = st.b;
  total.c2.coeffs[0] += 1.0;
  return rhs_total(st.u, total);
}

SpectralScalar pressure_spectral(const MHDState& st) {
  const GridSpec& g = st.grid();
  QuadraticTerms q = quadratic_terms(st.u, st.b);
  // F = u.grad u - b.grad b - d2 b = -(nu + d2 b)
  SpectralVector force = -1.0 * (q.nu + partial_derivative(st.b, {0, 1}));
  SpectralScalar p = divergence(force);
  for (int pi = 0; pi < g.n; ++pi) {
    const double k1 = g.wavenumber(pi);
    for (int qi = 0; qi < g.n; ++qi) {
      const double k2 = g.wavenumber(qi);
      const double kk = k1 * k1 + k2 * k2;
      auto& c = p.coeffs[g.flat(pi, qi)];
      c = kk > 0.0 ? c / kk : Complex{};
    }
  }
  return p;
}

ScalarField compute_pressure(const MHDState& st) { return inverse_transform(pressure_spectral(st)); }

double transport_skew_defect(const SpectralVector& u, const SpectralScalar& f) {
  const GridSpec& g = f.grid;
  const SpectralVector ud = dealias(u);
  const SpectralScalar fd = dealias(f);
  const ComplexBuffer u1 = synthesize(ud.c1);
  const ComplexBuffer u2 = synthesize(ud.c2);
  const ComplexBuffer f1 = synthesize(partial_derivative(fd, {1, 0}));
  const ComplexBuffer f2 = synthesize(partial_derivative(fd, {0, 1}));
  ComplexBuffer prod(g.size());
  for (std::size_t x = 0; x < prod.size(); ++x) {
    prod[x] = Complex(u1[x].real() * f1[x].real() + u2[x].real() * f2[x].real(), 0.0);
  }
  const SpectralScalar transport = analyze(std::move(prod), g);
  const double integral = inner_product(fd, transport);
  const double hf = sobolev_norm(fd, 1);
  const double scale = sobolev_norm(ud, 0) * hf * hf;
  return std::abs(integral) / (scale + 1e-300);
}

EnergySample energy_sample(const MHDState& st, const DynamicsOptions& opts) {
  EnergySample s;
  s.t = st.t;
  const double nu = sobolev_norm(st.u, 0);
  const double nb = sobolev_norm(st.b, 0);
  s.energy = 0.5 * (nu * nu + nb * nb);
  const SpectralVector b1 = partial_derivative(st.b, {1, 0});
  const SpectralVector b2 = partial_derivative(st.b, {0, 1});
  s.dissipation = inner_product(b1, b1) + inner_product(b2, b2);
  const Tendency t = evaluate_rhs(st, opts);
  const SpectralVector bt = t.db_stiff + t.db_soft;
  s.dissipation_rate =
      2.0 * (inner_product(b1, partial_derivative(bt, {1, 0})) + inner_product(b2, partial_derivative(bt, {0, 1})));
  return s;
}

double energy_balance_residual(std::span<const EnergySample> history, Quadrature rule) {
  if (history.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "energy balance needs at least 2 samples");
  }
  // R_j = E_j - E_0 + int_0^{t_j} D; the residual over [t_i, t_j] is R_j - R_i.
  double integral = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  for (std::size_t j = 1; j < history.size(); ++j) {
    const EnergySample& a = history[j - 1];
    const EnergySample& b = history[j];
    const double h = b.t - a.t;
    if (h < 0.0) throw Error(ErrorCode::NonMonotoneTime, "energy history is not ordered in time");
    integral += 0.5 * h * (a.dissipation + b.dissipation);
    if (rule == Quadrature::CorrectedTrapezoid) {
      integral += h * h / 12.0 * (a.dissipation_rate - b.dissipation_rate);
    }
    const double r = b.energy - history.front().energy + integral;
    r_min = std::min(r_min, r);
    r_max = std::max(r_max, r);
  }
  const double spread = r_max - r_min;
  const double e0 = history.front().energy;
  return e0 > 0.0 ? spread / e0 : spread;
}

double energy_balance_residual(std::span<const MHDState> history, Quadrature rule) {
  std::vector<EnergySample> samples;
  samples.reserve(history.size());
  for (const auto& st : history) samples.push_back(energy_sample(st));
  return energy_balance_residual(samples, rule);
}

}  // namespace mhd2
