#pragma once

#include <optional>
#include <utility>

#include "fhartree/errors.hpp"
#include "fhartree/field.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/multipliers.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

struct SolverOptions {
  int max_iter = 500;
  double tol = 1e-12;
  /// Default seed is exp(-|x|²/seed_width²).
  double seed_width = 1.0;
};

struct PohozaevResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Direct and closed-form evaluations of the threshold pair.
struct ThresholdReport {
  double me_direct = 0.0;
  double grad_direct = 0.0;
  double me_closed = 0.0;
  double grad_closed = 0.0;
  double me_discrepancy = 0.0;    ///< |direct - closed| / closed
  double grad_discrepancy = 0.0;
  double ratio = 0.0;             ///< grad_direct / me_direct
  double ratio_expected = 0.0;    ///< 2γ/(γ - 2s)
};

struct GroundState {
  PhysParams params;
  SpectralField q;
  double l2 = 0.0;       ///< ‖Q‖₂
  double hs = 0.0;       ///< ‖Q‖_{Ḣ^s}
  double hartree = 0.0;  ///< V(Q)
  double energy = 0.0;   ///< E[Q]
  PohozaevResiduals pohozaev;
  double euler_lagrange = 0.0;  ///< ‖(-Δ)^s Q + Q - (W*Q²)Q‖₂ / ‖Q‖₂
  double cgn_a = 0.0;
  double cgn_b = 0.0;
  ThresholdReport threshold_report;
  Thresholds thresholds;  ///< direct evaluations, used for classification
  double tail_ratio = 0.0;  ///< max |Q| on the box boundary / Q(0)
  double last_change = 0.0;
  double last_factor = 0.0;  ///< renormalization factor at the final iterate
  int iterations = 0;
  bool converged = false;
};

/// Thrown when max_iter is reached; carries the last iterate with its report.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, GroundState partial)
      : Error(what), partial_(std::move(partial)) {}
  const GroundState& partial() const { return partial_; }

 private:
  GroundState partial_;
};

/// Spectral renormalization for (-Δ)^s Q + Q = (W*Q²)Q. Throws NonConvergence or
/// CollapseToZero; warns when the profile has not decayed to 1e-8 at the box edge.
GroundState solve_ground_state(const PhysParams& p, const MultiplierSet& mult,
                               const std::optional<SpectralField>& seed = std::nullopt,
                               const SolverOptions& opts = {});

/// Fills every validation quantity of gs from gs.q.
void evaluate_ground_state(GroundState& gs, const MultiplierSet& mult);

/// Both Pohozaev left-hand sides divided by ‖q‖²_{Ḣ^s}.
PohozaevResiduals pohozaev_residuals(const SpectralField& q, const PhysParams& p, const MultiplierSet& mult);

/// Sharp Gagliardo–Nirenberg constant from the norm formula (first) and the mass formula (second).
std::pair<double, double> cgn_both_ways(const GroundState& gs, const PhysParams& p);

ThresholdReport thresholds(const GroundState& gs, const PhysParams& p, const MultiplierSet& mult);

SetMembership classify_membership(const InvariantPair& pair, const GroundState& gs,
                                  double boundary_tol = kBoundaryTol);

/// Evolves Q over [0, T] with step dt; returns max_t ‖u(t) - e^{it}Q‖₂/‖Q‖₂,
/// sampled at every step.
double soliton_orbit_check(const GroundState& gs, const MultiplierSet& mult, double T, double dt);

}  // namespace fhartree
