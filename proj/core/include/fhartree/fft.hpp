#pragma once

#include <complex>
#include <memory>

#include "fhartree/grid.hpp"

namespace fhartree {

/// Unnormalized N-dimensional complex DFT on an n^N grid, backed by FFTW.
///
/// Plans are created once per (N, n) under a global lock and shared; execution
/// is re-entrant, so distinct threads may transform distinct arrays
/// concurrently. Plans use FFTW_ESTIMATE, which keeps results bitwise
/// reproducible from run to run.
class FourierTransform {
 public:
  static const FourierTransform& for_grid(const GridSpec& grid);

  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

 private:
  FourierTransform(int N, int n);
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace fhartree
