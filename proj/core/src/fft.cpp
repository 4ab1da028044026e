#include "isacsim/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace isacsim::fft {
namespace {

// FFTW planning is not thread-safe and FFTW_MEASURE would make plan choice
// timing-dependent, breaking run-to-run reproducibility. Plans are created
// once per (size, direction) under a lock with FFTW_ESTIMATE and executed
// via fftw_execute_dft, which is safe on distinct buffers.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Dummy aligned buffers just for planning.
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
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

void execute(std::complex<double>* data, std::size_t n, int sign) {
  if (n == 0) return;
  fftw_plan plan = cache().get(n, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace

void forward_inplace(std::complex<double>* data, std::size_t n) {
  execute(data, n, FFTW_FORWARD);
}

void inverse_inplace(std::complex<double>* data, std::size_t n) {
  execute(data, n, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out = in;
  forward_inplace(out.data(), out.size());
  return out;
}

std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out = in;
  inverse_inplace(out.data(), out.size());
  return out;
}

}  // namespace isacsim::fft
