#include "mhd2/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mhd2::kernels {

namespace {

inline int wavenumber(int p, int n) { return p < n / 2 ? p : p - n; }

inline double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// The row bodies are shared so that serial and parallel differ only in how
// rows are scheduled.

inline void scale_phase_row(Complex* row, int p, int n, double scale) {
  for (int q = 0; q < n; ++q) row[q] *= ((p + q) & 1) ? -scale : scale;
}

inline void derivative_row(const Complex* in, Complex* out, int p, int n, int a1, int a2) {
  const int k1 = wavenumber(p, n);
  if ((a1 & 1) && k1 == -n / 2) {
    std::fill(out, out + n, Complex{});
    return;
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex unit = kIPow[(a1 + a2) & 3];
  const double f1 = int_pow(k1, a1);
  for (int q = 0; q < n; ++q) {
    const int k2 = wavenumber(q, n);
    if ((a2 & 1) && k2 == -n / 2) {
      out[q] = Complex{};
      continue;
    }
    out[q] = (f1 * int_pow(k2, a2)) * unit * in[q];
  }
}

inline void leray_row(Complex* c1, Complex* c2, int p, int n) {
  const int k1 = wavenumber(p, n);
  if (k1 == -n / 2) return;
  for (int q = 0; q < n; ++q) {
    const int k2 = wavenumber(q, n);
    if (k2 == -n / 2 || (k1 == 0 && k2 == 0)) continue;
    const double kk = double(k1) * k1 + double(k2) * k2;
    const Complex dot = (double(k1) * c1[q] + double(k2) * c2[q]) / kk;
    c1[q] -= double(k1) * dot;
    c2[q] -= double(k2) * dot;
  }
}

inline void dealias_row(Complex* row, int p, const GridSpec& g) {
  const int k1 = g.wavenumber(p);
  for (int q = 0; q < g.n; ++q) {
    if (!g.keeps(k1, g.wavenumber(q))) row[q] = Complex{};
  }
}

inline double weighted_row(const Complex* a, const double* w, int n) {
  double acc = 0.0;
  for (int q = 0; q < n; ++q) acc += w[q] * std::norm(a[q]);
  return acc;
}

inline void products_row(const ProductInputs& in, const ProductOutputs& out, std::size_t begin,
                         std::size_t end) {
  for (std::size_t x = begin; x < end; ++x) {
    const double u1 = in.u[0][x].real(), u2 = in.u[1][x].real();
    const double b1 = in.b[0][x].real(), b2 = in.b[1][x].real();
    for (int i = 0; i < 2; ++i) {
      const double ugu = u1 * in.grad_u[i][0][x].real() + u2 * in.grad_u[i][1][x].real();
      const double bgb = b1 * in.grad_b[i][0][x].real() + b2 * in.grad_b[i][1][x].real();
      const double ugb = u1 * in.grad_b[i][0][x].real() + u2 * in.grad_b[i][1][x].real();
      const double bgu = b1 * in.grad_u[i][0][x].real() + b2 * in.grad_u[i][1][x].real();
      out.nu[i][x] = Complex(bgb - ugu, 0.0);
      out.nb[i][x] = Complex(bgu - ugb, 0.0);
    }
  }
}

inline double speed_row(const Complex* u1, const Complex* u2, const Complex* b1, const Complex* b2,
                        int n) {
  double m = 0.0;
  for (int q = 0; q < n; ++q) {
    const double su = std::hypot(u1[q].real(), u2[q].real());
    const double sb = std::hypot(b1[q].real(), b2[q].real() + 1.0);
    m = std::max(m, su + sb);
  }
  return m;
}

double sum_rows(const std::vector<double>& partial) {
  double acc = 0.0;
  for (double v : partial) acc += v;
  return acc;
}

}  // namespace

namespace serial {

void scale_phase(std::span<Complex> a, int n, double scale) {
  for (int p = 0; p < n; ++p) scale_phase_row(a.data() + std::size_t(p) * n, p, n, scale);
}

void derivative(std::span<const Complex> in, std::span<Complex> out, int n, int a1, int a2) {
  for (int p = 0; p < n; ++p) {
    derivative_row(in.data() + std::size_t(p) * n, out.data() + std::size_t(p) * n, p, n, a1, a2);
  }
}

void leray(std::span<Complex> c1, std::span<Complex> c2, int n) {
  for (int p = 0; p < n; ++p) {
    leray_row(c1.data() + std::size_t(p) * n, c2.data() + std::size_t(p) * n, p, n);
  }
}

void dealias(std::span<Complex> a, const GridSpec& grid) {
  for (int p = 0; p < grid.n; ++p) dealias_row(a.data() + std::size_t(p) * grid.n, p, grid);
}

double weighted_sum_sq(std::span<const Complex> a, std::span<const double> weight, int n) {
  std::vector<double> partial(n);
  for (int p = 0; p < n; ++p) {
    partial[p] = weighted_row(a.data() + std::size_t(p) * n, weight.data() + std::size_t(p) * n, n);
  }
  return sum_rows(partial);
}

void scale_by(std::span<Complex> a, std::span<const double> factor) {
  for (std::size_t x = 0; x < a.size(); ++x) a[x] *= factor[x];
}

void axpy(std::span<Complex> y, double alpha, std::span<const Complex> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void products(const ProductInputs& in, const ProductOutputs& out, int n) {
  for (int p = 0; p < n; ++p) products_row(in, out, std::size_t(p) * n, std::size_t(p + 1) * n);
}

double max_speed(std::span<const Complex> u1, std::span<const Complex> u2,
                 std::span<const Complex> b1, std::span<const Complex> b2, int n) {
  double m = 0.0;
  for (int p = 0; p < n; ++p) {
    const std::size_t o = std::size_t(p) * n;
    m = std::max(m, speed_row(u1.data() + o, u2.data() + o, b1.data() + o, b2.data() + o, n));
  }
  return m;
}

}  // namespace serial

namespace parallel {

void scale_phase(std::span<Complex> a, int n, double scale) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) scale_phase_row(a.data() + std::size_t(p) * n, p, n, scale);
}

void derivative(std::span<const Complex> in, std::span<Complex> out, int n, int a1, int a2) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) {
    derivative_row(in.data() + std::size_t(p) * n, out.data() + std::size_t(p) * n, p, n, a1, a2);
  }
}

void leray(std::span<Complex> c1, std::span<Complex> c2, int n) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) {
    leray_row(c1.data() + std::size_t(p) * n, c2.data() + std::size_t(p) * n, p, n);
  }
}

void dealias(std::span<Complex> a, const GridSpec& grid) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < grid.n; ++p) dealias_row(a.data() + std::size_t(p) * grid.n, p, grid);
}

double weighted_sum_sq(std::span<const Complex> a, std::span<const double> weight, int n) {
  std::vector<double> partial(n);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) {
    partial[p] = weighted_row(a.data() + std::size_t(p) * n, weight.data() + std::size_t(p) * n, n);
  }
  return sum_rows(partial);
}

void scale_by(std::span<Complex> a, std::span<const double> factor) {
  const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t x = 0; x < size; ++x) a[x] *= factor[x];
}

void axpy(std::span<Complex> y, double alpha, std::span<const Complex> x) {
  const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) y[i] += alpha * x[i];
}

void products(const ProductInputs& in, const ProductOutputs& out, int n) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) products_row(in, out, std::size_t(p) * n, std::size_t(p + 1) * n);
}

double max_speed(std::span<const Complex> u1, std::span<const Complex> u2,
                 std::span<const Complex> b1, std::span<const Complex> b2, int n) {
  std::vector<double> partial(n);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n; ++p) {
    const std::size_t o = std::size_t(p) * n;
    partial[p] = speed_row(u1.data() + o, u2.data() + o, b1.data() + o, b2.data() + o, n);
  }
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace parallel

void set_thread_count(int threads) {
  omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace mhd2::kernels
