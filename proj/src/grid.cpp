#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mhd2/error.hpp"
#include "mhd2/field.hpp"
#include "mhd2/grid.hpp"

namespace mhd2 {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::HermitianViolation: return "HermitianViolation";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NonFiniteTendency: return "NonFiniteTendency";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::StepTooSmall: return "StepTooSmall";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::NotInClass: return "NotInClass";
    case ErrorCode::ZeroWavevector: return "ZeroWavevector";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::CorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

GridSpec GridSpec::make(int n, int dealias_num, int dealias_den) {
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidValue, "grid size n must be an even integer >= 8, got " + std::to_string(n));
  }
  if (dealias_den <= 0 || dealias_num <= 0 || dealias_num > dealias_den) {
    throw Error(ErrorCode::InvalidValue, "dealias fraction must lie in (0, 1]");
  }
  return GridSpec{n, dealias_num, dealias_den};
}

bool GridSpec::keeps(int k1, int k2) const {
  // |k| <= (num/den) * n/2  <=>  2 den |k| <= num n
  const long limit = long(dealias_num) * n;
  return 2L * dealias_den * std::abs(k1) <= limit && 2L * dealias_den * std::abs(k2) <= limit;
}

int GridSpec::dealias_cutoff() const {
  return static_cast<int>((long(dealias_num) * n) / (2L * dealias_den));
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

}  // namespace

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
SpectralScalar operator*(double a, SpectralScalar b) { return b *= a; }

SpectralVector operator+(SpectralVector a, const SpectralVector& b) {
  a.c1 += b.c1;
  a.c2 += b.c2;
  return a;
}

SpectralVector operator-(SpectralVector a, const SpectralVector& b) {
  a.c1 -= b.c1;
  a.c2 -= b.c2;
  return a;
}

SpectralVector operator*(double a, SpectralVector v) {
  v.c1 *= a;
  v.c2 *= a;
  return v;
}

double max_abs(const SpectralScalar& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
  return m;
}

double max_abs(const SpectralVector& v) { return std::max(max_abs(v.c1), max_abs(v.c2)); }

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.samples) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const SpectralScalar& f) {
  return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

bool all_finite(const SpectralVector& v) { return all_finite(v.c1) && all_finite(v.c2); }

}  // namespace mhd2
