#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include "mhd2/grid.hpp"

namespace mhd2 {

using Complex = std::complex<double>;

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage so every buffer matches the
/// alignment the FFT plans were created with.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t count) {
    return static_cast<T*>(detail::aligned_alloc_bytes(count * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Physical samples, row-major in (i, j) = (x1-index, x2-index).
struct ScalarField {
  GridSpec grid;
  RealBuffer samples;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g) : grid(g), samples(g.size(), 0.0) {}

  double& at(int i, int j) { return samples[grid.flat(i, j)]; }
  double at(int i, int j) const { return samples[grid.flat(i, j)]; }
};

/// Fourier coefficients f_k with f(x) = sum_k f_k exp(i k.x).
struct SpectralScalar {
  GridSpec grid;
  ComplexBuffer coeffs;

  SpectralScalar() = default;
  explicit SpectralScalar(const GridSpec& g) : grid(g), coeffs(g.size(), Complex{}) {}

  /// Access by signed wavenumber; k1, k2 in [-n/2, n/2).
  Complex& mode(int k1, int k2) { return coeffs[grid.flat(grid.index_of(k1), grid.index_of(k2))]; }
  const Complex& mode(int k1, int k2) const {
    return coeffs[grid.flat(grid.index_of(k1), grid.index_of(k2))];
  }

  SpectralScalar& operator+=(const SpectralScalar& o);
  SpectralScalar& operator-=(const SpectralScalar& o);
  SpectralScalar& operator*=(double a);
};

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator*(double a, SpectralScalar b);

/// Two components sharing one grid and one representation.
template <class F>
struct VectorField {
  F c1;
  F c2;

  F& operator[](int i) { return i == 0 ? c1 : c2; }
  const F& operator[](int i) const { return i == 0 ? c1 : c2; }
  const GridSpec& grid() const { return c1.grid; }
};

using SpectralVector = VectorField<SpectralScalar>;
using PhysicalVector = VectorField<ScalarField>;

inline SpectralVector zero_vector(const GridSpec& g) { return {SpectralScalar(g), SpectralScalar(g)}; }

SpectralVector operator+(SpectralVector a, const SpectralVector& b);
SpectralVector operator-(SpectralVector a, const SpectralVector& b);
SpectralVector operator*(double a, SpectralVector v);

/// Largest coefficient modulus.
double max_abs(const SpectralScalar& f);
double max_abs(const SpectralVector& v);
double max_abs(const ScalarField& f);
bool all_finite(const SpectralScalar& f);
bool all_finite(const SpectralVector& v);

}  // namespace mhd2
