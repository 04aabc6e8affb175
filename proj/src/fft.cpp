#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace zakharov::detail {
namespace {

// fftw planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    std::lock_guard lock(planner_mutex());
    for (auto& [size, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(int m) {
    auto it = plans_.find(m);
    if (it != plans_.end()) return it->second;
    std::lock_guard lock(planner_mutex());
    auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(m));
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_dft_1d(m, scratch, scratch, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_1d(m, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    if (!p.forward || !p.backward) throw std::runtime_error("fftw planning failed");
    return plans_.emplace(m, p).first->second;
  }

 private:
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  thread_local PlanCache c;
  return c;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void dft_forward(std::span<std::complex<double>> data) {
  if (data.empty()) return;
  const auto& p = cache().get(static_cast<int>(data.size()));
  fftw_execute_dft(p.forward, as_fftw(data), as_fftw(data));
}

void dft_backward(std::span<std::complex<double>> data) {
  if (data.empty()) return;
  const auto& p = cache().get(static_cast<int>(data.size()));
  fftw_execute_dft(p.backward, as_fftw(data), as_fftw(data));
}

}  // namespace zakharov::detail
