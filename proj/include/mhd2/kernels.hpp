#pragma once

// Pointwise kernels over an n x n grid of samples or Fourier modes.
//
// Every kernel exists twice: kernels::serial is the plain reference loop,
// kernels::parallel distributes rows over OpenMP threads. Reductions go
// through per-row partials summed in row order, so both versions return
// bitwise-identical results for any thread count.

#include <span>

#include "mhd2/field.hpp"
#include "mhd2/grid.hpp"

namespace mhd2::kernels {

/// Inputs of the quadratic terms, all physical samples stored in the real
/// part of complex buffers (the layout the c2c transforms produce).
/// grad_u[i][d] = d_d u_i, likewise grad_b.
struct ProductInputs {
  std::span<const Complex> u[2];
  std::span<const Complex> b[2];
  std::span<const Complex> grad_u[2][2];
  std::span<const Complex> grad_b[2][2];
};

/// nu_i = -(u.grad) u_i + (b.grad) b_i,  nb_i = -(u.grad) b_i + (b.grad) u_i.
struct ProductOutputs {
  std::span<Complex> nu[2];
  std::span<Complex> nb[2];
};

namespace serial {

// a *= scale * (-1)^(p+q): shifts between the DFT origin and x = (-pi, -pi).
void scale_phase(std::span<Complex> a, int n, double scale);
// out = (i k1)^a1 (i k2)^a2 in; the Nyquist line is zeroed in a direction of odd order.
void derivative(std::span<const Complex> in, std::span<Complex> out, int n, int a1, int a2);
// v -> v - k (k.v) / |k|^2 for k != 0 off the Nyquist lines.
void leray(std::span<Complex> c1, std::span<Complex> c2, int n);
void dealias(std::span<Complex> a, const GridSpec& grid);
// sum_k weight_k |a_k|^2
double weighted_sum_sq(std::span<const Complex> a, std::span<const double> weight, int n);
// a_k *= factor_k
void scale_by(std::span<Complex> a, std::span<const double> factor);
// y += alpha x
void axpy(std::span<Complex> y, double alpha, std::span<const Complex> x);
void products(const ProductInputs& in, const ProductOutputs& out, int n);
// max over samples of |u| + |b + e2|
double max_speed(std::span<const Complex> u1, std::span<const Complex> u2,
                 std::span<const Complex> b1, std::span<const Complex> b2, int n);

}  // namespace serial

// Same contracts as serial, rows distributed over OpenMP threads.
namespace parallel {

void scale_phase(std::span<Complex> a, int n, double scale);
void derivative(std::span<const Complex> in, std::span<Complex> out, int n, int a1, int a2);
void leray(std::span<Complex> c1, std::span<Complex> c2, int n);
void dealias(std::span<Complex> a, const GridSpec& grid);
double weighted_sum_sq(std::span<const Complex> a, std::span<const double> weight, int n);
void scale_by(std::span<Complex> a, std::span<const double> factor);
void axpy(std::span<Complex> y, double alpha, std::span<const Complex> x);
void products(const ProductInputs& in, const ProductOutputs& out, int n);
double max_speed(std::span<const Complex> u1, std::span<const Complex> u2,
                 std::span<const Complex> b1, std::span<const Complex> b2, int n);

}  // namespace parallel

/// Threads used by kernels::parallel (OpenMP); 0 restores the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace mhd2::kernels
