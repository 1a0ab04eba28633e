#pragma once

#include <span>

#include "mhd2/field.hpp"

// Thin wrapper over FFTW: unnormalized in-place 2D transforms of an n x n
// complex buffer allocated with AlignedAllocator. Plans are created once per
// n and reused; execution is thread-safe.
namespace mhd2::fft {

/// a_pq <- sum_ij a_ij exp(-2 pi i (p i + q j) / n)
void forward(std::span<Complex> data, int n);
/// a_ij <- sum_pq a_pq exp(+2 pi i (p i + q j) / n)
void backward(std::span<Complex> data, int n);

}  // namespace mhd2::fft
