#pragma once

#include <cstddef>
#include <numbers>

namespace mhd2 {

inline constexpr double kPi = std::numbers::pi;
/// Measure of the torus [-pi, pi]^2.
inline constexpr double kTorusArea = 4.0 * kPi * kPi;

/// Collocation grid on [-pi, pi]^2. Samples sit at x_i = -pi + 2 pi i / n in each
/// direction; Fourier coefficients are stored in FFT order, index p <-> k = p
/// for p < n/2 and k = p - n otherwise, so the stored range is {-n/2, ..., n/2-1}.
struct GridSpec {
  int n = 64;
  // Dealias fraction as a rational; 2/3 is the usual rule for quadratic terms.
  int dealias_num = 2;
  int dealias_den = 3;

  /// Validating constructor: n even and >= 8, fraction in (0, 1].
  static GridSpec make(int n, int dealias_num = 2, int dealias_den = 3);

  std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
  std::size_t flat(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }

  int wavenumber(int index) const { return index < n / 2 ? index : index - n; }
  int index_of(int k) const { return k >= 0 ? k : k + n; }
  bool is_nyquist(int k) const { return k == -n / 2; }
  bool contains(int k) const { return k >= -n / 2 && k < n / 2; }

  double spacing() const { return 2.0 * kPi / n; }
  double coord(int i) const { return -kPi + spacing() * i; }

  /// True when mode (k1, k2) survives the dealias cutoff
  /// max(|k1|, |k2|) <= fraction * n / 2.
  bool keeps(int k1, int k2) const;
  /// Largest |k| kept by the dealias cutoff.
  int dealias_cutoff() const;

  bool operator==(const GridSpec&) const = default;
};

}  // namespace mhd2
