#pragma once

#include <random>
#include <string>
#include <vector>

#include "fhartree/config.hpp"
#include "fhartree/field.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/multipliers.hpp"

namespace fhartree {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Complex Gaussian noise low-passed by exp(-|ξ|²/bandwidth²) and localized by
/// exp(-|x|²/envelope²), with the envelope centred at a random offset within
/// ±shift per axis.
SpectralField random_smooth_field(const GridSpec& grid, std::mt19937_64& rng, double bandwidth = 2.0,
                                  double envelope = 3.0, double shift = 1.0);

/// Every identity check of the suite at the configured grid.
VerifyReport run_identity_suite(const RunConfig& cfg, const GroundState& gs, const MultiplierSet& mult);

}  // namespace fhartree
