#include "kreisslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace kreisslab::fft {
namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
// Plans are cached per (size, sign) and never destroyed.
class PlanCache {
 public:
  fftw_plan get(std::size_t m, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(m, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(m);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, int sign) {
  if (data.size() <= 1) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(data.size(), sign), ptr, ptr);
}

}  // namespace

void to_samples(std::span<cplx> data) { run(data, FFTW_BACKWARD); }

void to_coefficients(std::span<cplx> data) {
  run(data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace kreisslab::fft
