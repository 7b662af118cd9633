#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fhartree/field.hpp"
#include "fhartree/log.hpp"

namespace testing_support {

// Collects warnings for the lifetime of the object instead of printing them.
class WarningCapture {
 public:
  WarningCapture() {
    previous_ = fhartree::set_warning_sink([this](const std::string& m) { messages.push_back(m); });
  }
  ~WarningCapture() { fhartree::set_warning_sink(previous_); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

 private:
  fhartree::WarningSink previous_;
};

inline fhartree::SpectralField gaussian(const fhartree::GridSpec& grid, double width = 1.0, double cx = 0.0,
                                        double cy = 0.0) {
  return fhartree::SpectralField::sample(grid, [&](const auto& x) {
    const double dx = x[0] - cx;
    const double dy = x[1] - cy;
    const double dz = grid.N == 3 ? x[2] : 0.0;
    return std::exp(-(dx * dx + dy * dy + dz * dz) / (width * width));
  });
}

inline double max_abs_diff(const fhartree::SpectralField& a, const fhartree::SpectralField& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

}  // namespace testing_support
