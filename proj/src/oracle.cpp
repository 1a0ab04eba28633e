#include "mhd2/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mhd2/error.hpp"

namespace mhd2::oracle {

namespace {

using C = std::complex<double>;

int wavenumber(int p, int n) { return p < n / 2 ? p : p - n; }

void require_small(int n, int limit) {
  if (n > limit) {
    throw Error(ErrorCode::GridTooLarge, "oracle limited to n <= " + std::to_string(limit) + ", got " +
                                             std::to_string(n));
  }
}

C derivative_symbol(int k1, int k2, int n, MultiIndex alpha) {
  if ((alpha.a1 % 2 == 1 && k1 == -n / 2) || (alpha.a2 % 2 == 1 && k2 == -n / 2)) return 0.0;
  return std::pow(C(0.0, double(k1)), alpha.a1) * std::pow(C(0.0, double(k2)), alpha.a2);
}

}  // namespace

namespace {

SpectralScalar direct_coefficients(const ScalarField& f) {
  const GridSpec& g = f.grid;
  SpectralScalar out(g);
  for (int p = 0; p < g.n; ++p) {
    for (int q = 0; q < g.n; ++q) {
      const int k1 = wavenumber(p, g.n), k2 = wavenumber(q, g.n);
      C acc = 0.0;
      for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
          const double phase = -(k1 * g.coord(i) + k2 * g.coord(j));
          acc += f.at(i, j) * C(std::cos(phase), std::sin(phase));
        }
      }
      out.coeffs[g.flat(p, q)] = acc / double(g.n * g.n);
    }
  }
  return out;
}

}  // namespace

SpectralScalar dft_coefficients(const ScalarField& f) {
  require_small(f.grid.n, 32);
  return direct_coefficients(f);
}

ScalarField dft_derivative(const ScalarField& f, MultiIndex alpha) {
  const GridSpec& g = f.grid;
  require_small(g.n, 32);
  const SpectralScalar coeffs = dft_coefficients(f);
  ScalarField out(g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      C acc = 0.0;
      for (int p = 0; p < g.n; ++p) {
        for (int q = 0; q < g.n; ++q) {
          const int k1 = wavenumber(p, g.n), k2 = wavenumber(q, g.n);
          const double phase = k1 * g.coord(i) + k2 * g.coord(j);
          acc += derivative_symbol(k1, k2, g.n, alpha) * coeffs.coeffs[g.flat(p, q)] *
                 C(std::cos(phase), std::sin(phase));
        }
      }
      out.at(i, j) = acc.real();
    }
  }
  return out;
}

double sobolev_norm_sq_bruteforce(const ScalarField& f, int m) {
  const double cell = f.grid.spacing() * f.grid.spacing();
  double total = 0.0;
  for (int order = 0; order <= m; ++order) {
    for (int a1 = 0; a1 <= order; ++a1) {
      const ScalarField d = dft_derivative(f, {a1, order - a1});
      double acc = 0.0;
      for (double x : d.samples) acc += x * x;
      total += acc * cell;
    }
  }
  return total;
}

std::pair<C, C> linearized_mode_solution(int k1, int k2, C a0, C c0, double t) {
  if (k1 == 0 && k2 == 0) throw Error(ErrorCode::ZeroWavevector, "linearized mode needs k != 0");
  const double kk = double(k1) * k1 + double(k2) * k2;
  // M = [[0, i k2], [i k2, -|k|^2]]
  const C m00 = 0.0, m01 = C(0.0, k2), m10 = C(0.0, k2), m11 = -kk;
  const double disc = kk * kk - 4.0 * double(k2) * k2;  // an integer, so exactly zero in the defective case
  if (disc == 0.0) {
    const C lambda = -0.5 * kk;
    const C e = std::exp(lambda * t);
    // exp(Mt) = e^{lambda t} (I + t (M - lambda I))
    const C a = e * ((1.0 + t * (m00 - lambda)) * a0 + t * m01 * c0);
    const C c = e * (t * m10 * a0 + (1.0 + t * (m11 - lambda)) * c0);
    return {a, c};
  }
  const C root = std::sqrt(C(disc, 0.0));
  const C lp = 0.5 * (-kk + root);
  const C lm = 0.5 * (-kk - root);
  const C ep = std::exp(lp * t), em = std::exp(lm * t);
  // exp(Mt) = (e^{lp t} (M - lm I) - e^{lm t} (M - lp I)) / (lp - lm)
  const C inv = 1.0 / (lp - lm);
  const C e00 = (ep * (m00 - lm) - em * (m00 - lp)) * inv;
  const C e01 = (ep - em) * m01 * inv;
  const C e10 = (ep - em) * m10 * inv;
  const C e11 = (ep * (m11 - lm) - em * (m11 - lp)) * inv;
  return {e00 * a0 + e01 * c0, e10 * a0 + e11 * c0};
}

namespace {

// Periodic grid function stored row-major; index (i, j) = (x1, x2).
struct Grid2 {
  int n;
  double h;
  std::size_t at(int i, int j) const { return std::size_t((i + n) % n) * n + std::size_t((j + n) % n); }
};

using Field = std::vector<double>;

Field d1(const Grid2& g, const Field& f) {
  Field out(f.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) out[g.at(i, j)] = (f[g.at(i + 1, j)] - f[g.at(i - 1, j)]) / (2.0 * g.h);
  return out;
}

Field d2(const Grid2& g, const Field& f) {
  Field out(f.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) out[g.at(i, j)] = (f[g.at(i, j + 1)] - f[g.at(i, j - 1)]) / (2.0 * g.h);
  return out;
}

Field lap5(const Grid2& g, const Field& f) {
  Field out(f.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      out[g.at(i, j)] = (f[g.at(i + 1, j)] + f[g.at(i - 1, j)] + f[g.at(i, j + 1)] + f[g.at(i, j - 1)] -
                         4.0 * f[g.at(i, j)]) / (g.h * g.h);
  return out;
}

// The Laplacian d1 d1 + d2 d2 built from the centred first differences, so that
// the corrected velocity tendency is discretely divergence-free.
Field lap_wide(const Grid2& g, const Field& f) {
  Field a = d1(g, d1(g, f));
  const Field b = d2(g, d2(g, f));
  for (std::size_t x = 0; x < a.size(); ++x) a[x] += b[x];
  return a;
}

double dot(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves lap_wide p = rhs (rhs in the range) by conjugate gradients on -lap_wide.
Field poisson(const Grid2& g, const Field& rhs, double tol) {
  Field p(rhs.size(), 0.0);
  Field r(rhs.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -rhs[i];
  Field d = r;
  double rr = dot(r, r);
  const double stop = tol * tol * std::max(rr, 1e-300);
  for (int it = 0; it < 20 * g.n * g.n && rr > stop; ++it) {
    Field ad = lap_wide(g, d);
    for (auto& x : ad) x = -x;
    const double alpha = rr / dot(d, ad);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] += alpha * d[i];
      r[i] -= alpha * ad[i];
    }
    const double rr_new = dot(r, r);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + (rr_new / rr) * d[i];
    rr = rr_new;
  }
  return p;
}

struct FdState {
  Field u[2];
  Field b[2];
};

FdState fd_rhs(const Grid2& g, const FdState& s, const FdOptions& opts) {
  FdState out;
  Field gu[2][2], gb[2][2];
  for (int c = 0; c < 2; ++c) {
    gu[c][0] = d1(g, s.u[c]);
    gu[c][1] = d2(g, s.u[c]);
    gb[c][0] = d1(g, s.b[c]);
    gb[c][1] = d2(g, s.b[c]);
  }
  const std::size_t size = s.u[0].size();
  for (int c = 0; c < 2; ++c) {
    out.u[c].assign(size, 0.0);
    out.b[c] = lap5(g, s.b[c]);
    for (std::size_t x = 0; x < size; ++x) {
      if (opts.nonlinear) {
        out.u[c][x] += -(s.u[0][x] * gu[c][0][x] + s.u[1][x] * gu[c][1][x]) +
                       (s.b[0][x] * gb[c][0][x] + s.b[1][x] * gb[c][1][x]);
        out.b[c][x] += -(s.u[0][x] * gb[c][0][x] + s.u[1][x] * gb[c][1][x]) +
                       (s.b[0][x] * gu[c][0][x] + s.b[1][x] * gu[c][1][x]);
      }
      if (opts.coupling) {
        out.u[c][x] += gb[c][1][x];
        out.b[c][x] += gu[c][1][x];
      }
    }
  }
  // pressure: lap p = div F, then F <- F - grad p
  Field div = d1(g, out.u[0]);
  const Field div2 = d2(g, out.u[1]);
  for (std::size_t x = 0; x < size; ++x) div[x] += div2[x];
  const Field p = poisson(g, div, opts.poisson_tol);
  const Field px = d1(g, p), py = d2(g, p);
  for (std::size_t x = 0; x < size; ++x) {
    out.u[0][x] -= px[x];
    out.u[1][x] -= py[x];
  }
  return out;
}

FdState axpy(const FdState& y, double a, const FdState& x) {
  FdState out = y;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < out.u[c].size(); ++i) {
      out.u[c][i] += a * x.u[c][i];
      out.b[c][i] += a * x.b[c][i];
    }
  }
  return out;
}

// Coefficients -> samples by direct summation over the band-limited support.
Field sample(const SpectralScalar& f) {
  const GridSpec& g = f.grid;
  Field out(g.size(), 0.0);
  for (int p = 0; p < g.n; ++p) {
    for (int q = 0; q < g.n; ++q) {
      const C c = f.coeffs[g.flat(p, q)];
      if (c == C(0.0)) continue;
      const int k1 = wavenumber(p, g.n), k2 = wavenumber(q, g.n);
      for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
          const double phase = k1 * g.coord(i) + k2 * g.coord(j);
          out[g.flat(i, j)] += (c * C(std::cos(phase), std::sin(phase))).real();
        }
      }
    }
  }
  return out;
}

SpectralScalar coefficients(const GridSpec& g, const Field& f) {
  ScalarField sf(g);
  std::copy(f.begin(), f.end(), sf.samples.begin());
  return direct_coefficients(sf);
}

}  // namespace

MHDState fd_run(const MHDState& st0, double t_end, int n_fd, double dt, const FdOptions& opts) {
  require_small(n_fd, 64);
  if (st0.grid().n != n_fd) {
    throw Error(ErrorCode::GridMismatch, "fd_run expects the initial state on the n_fd grid");
  }
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidValue, "fd_run needs dt > 0");
  const Grid2 g{n_fd, 2.0 * kPi / n_fd};
  FdState s{{sample(st0.u.c1), sample(st0.u.c2)}, {sample(st0.b.c1), sample(st0.b.c2)}};
  double t = st0.t;
  const double t_final = st0.t + t_end;
  while (t < t_final - 1e-14) {
    const double h = std::min(dt, t_final - t);
    const FdState k1 = fd_rhs(g, s, opts);
    const FdState k2 = fd_rhs(g, axpy(s, 0.5 * h, k1), opts);
    const FdState k3 = fd_rhs(g, axpy(s, 0.5 * h, k2), opts);
    const FdState k4 = fd_rhs(g, axpy(s, h, k3), opts);
    s = axpy(s, h / 6.0, k1);
    s = axpy(s, h / 3.0, k2);
    s = axpy(s, h / 3.0, k3);
    s = axpy(s, h / 6.0, k4);
    t += h;
    for (int c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < s.u[c].size(); ++i) {
        if (!std::isfinite(s.u[c][i]) || !std::isfinite(s.b[c][i])) {
          throw Error(ErrorCode::NonFiniteState, "finite-difference run blew up at t = " + std::to_string(t));
        }
      }
    }
  }
  const GridSpec& grid = st0.grid();
  MHDState out;
  out.t = t_final;
  out.u = {coefficients(grid, s.u[0]), coefficients(grid, s.u[1])};
  out.b = {coefficients(grid, s.b[0]), coefficients(grid, s.b[1])};
  return out;
}

}  // namespace mhd2::oracle
