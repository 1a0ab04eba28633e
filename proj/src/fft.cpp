#include "mhd2/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "mhd2/error.hpp"

namespace mhd2 {

namespace detail {

void* aligned_alloc_bytes(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_free(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace fft {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// The FFTW planner is not thread-safe; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n * n));
  PlanPair plans;
  plans.forward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE);
  plans.backward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(scratch);
  if (plans.forward == nullptr || plans.backward == nullptr) {
    throw Error(ErrorCode::InvalidValue, "FFTW could not plan an n=" + std::to_string(n) + " transform");
  }
  return cache.emplace(n, plans).first->second;
}

void check_size(std::span<Complex> data, int n) {
  if (data.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorCode::InvalidValue, "transform buffer does not hold n*n values");
  }
}

}  // namespace

void forward(std::span<Complex> data, int n) {
  check_size(data, n);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(n).forward, p, p);
}

void backward(std::span<Complex> data, int n) {
  check_size(data, n);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(n).backward, p, p);
}

}  // namespace fft
}  // namespace mhd2
