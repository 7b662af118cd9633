#include "fhartree/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace fhartree {

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierTransform::FourierTransform(int N, int n) : plans_(std::make_unique<Plans>()) {
  std::vector<int> dims(static_cast<std::size_t>(N), n);
  std::size_t total = 1;
  for (int d = 0; d < N; ++d) total *= static_cast<std::size_t>(n);
  // Planning with scratch buffers; FFTW_UNALIGNED lets the plans run on any array.
  auto* a = fftw_alloc_complex(total);
  auto* b = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(N, dims.data(), a, b, FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(N, dims.data(), a, b, FFTW_BACKWARD, flags);
  fftw_free(a);
  fftw_free(b);
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

const FourierTransform& FourierTransform::for_grid(const GridSpec& grid) {
  static std::map<std::pair<int, int>, std::unique_ptr<FourierTransform>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{grid.N, grid.n}];
  if (!slot) slot.reset(new FourierTransform(grid.N, grid.n));
  return *slot;
}

void FourierTransform::forward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(plans_->forward,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void FourierTransform::backward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(plans_->backward,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace fhartree
