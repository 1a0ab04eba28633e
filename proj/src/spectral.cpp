#include "mhd2/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd2/error.hpp"
#include "mhd2/fft.hpp"
#include "mhd2/kernels.hpp"

namespace mhd2 {

namespace k = kernels::parallel;

SpectralScalar forward_transform(const ScalarField& f) {
  const int n = f.grid.n;
  SpectralScalar g(f.grid);
  std::transform(f.samples.begin(), f.samples.end(), g.coeffs.begin(),
                 [](double x) { return Complex(x, 0.0); });
  fft::forward(g.coeffs, n);
  k::scale_phase(g.coeffs, n, 1.0 / (double(n) * n));
  return g;
}

SpectralVector forward_transform(const PhysicalVector& v) {
  return {forward_transform(v.c1), forward_transform(v.c2)};
}

ComplexBuffer synthesize(const SpectralScalar& g) {
  ComplexBuffer buf = g.coeffs;
  k::scale_phase(buf, g.grid.n, 1.0);
  fft::backward(buf, g.grid.n);
  return buf;
}

ScalarField inverse_transform(const SpectralScalar& g) {
  ComplexBuffer buf = synthesize(g);
  double mass = 0.0;
  for (const auto& c : g.coeffs) mass += std::abs(c);
  double residue = 0.0;
  for (const auto& c : buf) residue = std::max(residue, std::abs(c.imag()));
  if (residue > 1e-10 * mass) {
    throw Error(ErrorCode::HermitianViolation,
                "imaginary residue " + std::to_string(residue) + " exceeds 1e-10 of coefficient mass " +
                    std::to_string(mass));
  }
  ScalarField f(g.grid);
  std::transform(buf.begin(), buf.end(), f.samples.begin(), [](const Complex& c) { return c.real(); });
  return f;
}

PhysicalVector inverse_transform(const SpectralVector& v) {
  return {inverse_transform(v.c1), inverse_transform(v.c2)};
}

SpectralScalar partial_derivative(const SpectralScalar& g, MultiIndex alpha) {
  if (alpha.a1 < 0 || alpha.a2 < 0) {
    throw Error(ErrorCode::InvalidValue, "multi-index entries must be non-negative");
  }
  SpectralScalar out(g.grid);
  k::derivative(g.coeffs, out.coeffs, g.grid.n, alpha.a1, alpha.a2);
  return out;
}

SpectralVector partial_derivative(const SpectralVector& v, MultiIndex alpha) {
  return {partial_derivative(v.c1, alpha), partial_derivative(v.c2, alpha)};
}

SpectralScalar dealias(SpectralScalar g) {
  k::dealias(g.coeffs, g.grid);
  return g;
}

SpectralVector dealias(SpectralVector v) {
  return {dealias(std::move(v.c1)), dealias(std::move(v.c2))};
}

std::vector<double> sobolev_multiplier(const GridSpec& grid, int m) {
  if (m < 0 || m > kMaxSobolevOrder) {
    throw Error(ErrorCode::InvalidValue,
                "Sobolev order must lie in [0, " + std::to_string(kMaxSobolevOrder) + "], got " + std::to_string(m));
  }
  std::vector<double> mu(grid.size());
  for (int p = 0; p < grid.n; ++p) {
    const double s1 = double(grid.wavenumber(p)) * grid.wavenumber(p);
    for (int q = 0; q < grid.n; ++q) {
      const double s2 = double(grid.wavenumber(q)) * grid.wavenumber(q);
      // sum over a1 + a2 <= m of s1^a1 s2^a2
      double total = 0.0;
      double p1 = 1.0;
      for (int a1 = 0; a1 <= m; ++a1) {
        double p2 = 1.0;
        for (int a2 = 0; a1 + a2 <= m; ++a2) {
          total += p1 * p2;
          p2 *= s2;
        }
        p1 *= s1;
      }
      mu[grid.flat(p, q)] = total;
    }
  }
  return mu;
}

double sobolev_norm(const SpectralScalar& f, int m) {
  const auto mu = sobolev_multiplier(f.grid, m);
  return std::sqrt(kTorusArea * k::weighted_sum_sq(f.coeffs, mu, f.grid.n));
}

double sobolev_norm(const SpectralVector& v, int m) {
  const auto mu = sobolev_multiplier(v.grid(), m);
  const int n = v.grid().n;
  return std::sqrt(kTorusArea * (k::weighted_sum_sq(v.c1.coeffs, mu, n) + k::weighted_sum_sq(v.c2.coeffs, mu, n)));
}

double sobolev_norm(const ScalarField& f, int m) { return sobolev_norm(forward_transform(f), m); }

double gradient_sobolev_norm(const SpectralVector& v, int m) {
  const double d1 = sobolev_norm(partial_derivative(v, {1, 0}), m);
  const double d2 = sobolev_norm(partial_derivative(v, {0, 1}), m);
  return std::sqrt(d1 * d1 + d2 * d2);
}

double inner_product(const SpectralScalar& a, const SpectralScalar& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc += (std::conj(a.coeffs[i]) * b.coeffs[i]).real();
  return kTorusArea * acc;
}

double inner_product(const SpectralVector& a, const SpectralVector& b) {
  return inner_product(a.c1, b.c1) + inner_product(a.c2, b.c2);
}

SpectralVector leray_project(SpectralVector v) {
  k::leray(v.c1.coeffs, v.c2.coeffs, v.grid().n);
  return v;
}

SpectralScalar divergence(const SpectralVector& v) {
  return partial_derivative(v.c1, {1, 0}) + partial_derivative(v.c2, {0, 1});
}

double divergence_defect(const SpectralVector& v) {
  const GridSpec& g = v.grid();
  const SpectralScalar div = divergence(v);
  double num = 0.0;
  double scale = 0.0;
  for (int p = 0; p < g.n; ++p) {
    const double k1 = g.wavenumber(p);
    for (int q = 0; q < g.n; ++q) {
      const double k2 = g.wavenumber(q);
      const std::size_t x = g.flat(p, q);
      num = std::max(num, std::abs(div.coeffs[x]));
      scale = std::max(scale, std::hypot(k1, k2) * std::hypot(std::abs(v.c1.coeffs[x]), std::abs(v.c2.coeffs[x])));
    }
  }
  return scale > 0.0 ? num / scale : 0.0;
}

SpectralScalar vorticity_spectral(const SpectralVector& u) {
  return partial_derivative(u.c2, {1, 0}) - partial_derivative(u.c1, {0, 1});
}

ScalarField vorticity(const SpectralVector& u) { return inverse_transform(vorticity_spectral(u)); }

ScalarField vorticity(const PhysicalVector& u) { return vorticity(forward_transform(u)); }

double mean(const SpectralScalar& f) { return kTorusArea * f.coeffs[0].real(); }

double mean(const ScalarField& f) {
  double acc = 0.0;
  for (double x : f.samples) acc += x;
  return kTorusArea * acc / double(f.samples.size());
}

}  // namespace mhd2
