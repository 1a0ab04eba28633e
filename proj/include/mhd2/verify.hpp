#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhd2/symmetry.hpp"

namespace mhd2::verify {

struct Row {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;  // informational rows carry a NaN threshold
};

struct Report {
  std::string suite;
  std::vector<Row> rows;
  bool passed() const;
};

void print(std::ostream& os, const Report& rep);

/// Random velocity in the symmetry class: divergence-free, zero mean, u1 even and
/// u2 odd in x2. Spectrum |k|^-decay up to kmax.
SpectralVector random_class_velocity(const GridSpec& grid, std::uint64_t seed, int kmax, double decay);
/// Random divergence-free zero-mean velocity with no symmetry.
SpectralVector random_solenoidal(const GridSpec& grid, std::uint64_t seed, int kmax, double decay);

struct PoincareOptions {
  int samples = 100;
  int k = 2;  // orders 0..k are checked
  int n = 32;
  std::uint64_t seed = 1;
};
Report poincare(const PoincareOptions& o = {});

struct SkewOptions {
  int samples = 100;
  int n = 32;
  std::uint64_t seed = 1;
};
Report skew(const SkewOptions& o = {});

struct LinearOptions {
  int n = 16;
  int kmax = 4;  // all modes with |k| <= kmax
  double dt = 1e-3;
  double dt_diffusion = 0.1;
  double t_end = 1.0;
  std::uint64_t seed = 1;
};
Report linear(const LinearOptions& o = {});

struct OrderOptions {
  int n = 32;
  double epsilon = 1.0;
  double t_end = 0.1;
  double dt0 = 0.025;
  int refinements = 4;
  std::uint64_t seed = 3;
};
struct OrderStudy {
  std::vector<double> dt;
  std::vector<double> error;
  std::vector<double> local_slope;
  double slope = 0.0;  // least squares over all points
};
OrderStudy order_study(const OrderOptions& o = {});
Report order(const OrderOptions& o = {});

struct OracleOptions {
  int n = 16;
  std::uint64_t seed = 1;
};
Report oracle(const OracleOptions& o = {});

}  // namespace mhd2::verify
