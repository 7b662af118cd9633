#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fhartree/field.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/multipliers.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;
  double dt_min = 1e-7;
  double blowup_grad_factor = 10.0;
  double tail_fraction_max = 0.1;
  /// Cap the nonlinear phase per step (see adapt_dt).
  bool adaptive = true;
  double adapt_phase = 0.1;
  /// Drop the Hartree term (free evolution control runs).
  bool linear_only = false;

  void validate() const;
};

enum class Verdict { GlobalDispersing, BlowUp, Soliton, Inconclusive };

std::string to_string(Verdict v);

struct RunRecord {
  std::vector<double> times;
  std::vector<double> dt_series;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> hs_series;   ///< ‖u‖²_{Ḣ^s}
  std::vector<double> hsc_series;  ///< ‖u‖_{Ḣ^{s_c}}
  std::vector<double> v_series;
  std::vector<double> lpc_series;  ///< ‖u‖_{L^{p_c}}
  std::vector<double> me_ratio_series;
  std::vector<double> grad_ratio_series;
  std::vector<Membership> membership_series;
  std::vector<double> tail_series;
  std::vector<double> soliton_deviation;  ///< ‖u e^{-it} - Q‖₂/‖Q‖₂
  std::vector<double> strichartz_series;  ///< running (Σ dt ‖u‖_{q_c}^{q_c})^{1/q_c}

  double strichartz_accum = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double t_star = 0.0;  ///< blow-up time, when verdict is BlowUp
  std::string caveat;
  bool completed = false;
  bool tail_refused = false;
  long steps = 0;

  double mass_drift() const;
  /// max |E(t) - E(0)| / max(|E(0)|, ‖u0‖²_{Ḣ^s}).
  double energy_drift() const;

  /// One row per sample; column order is fixed by csv_header().
  static std::string csv_header();
  void write_csv(std::ostream& os) const;
};

/// Called at each recorded sample with the current time and state.
using SampleObserver = std::function<void(double, const SpectralField&)>;

/// One Strang step: half linear, exact nonlinear phase, half linear. Negative
/// dt runs the step backwards exactly.
SpectralField strang_step(const SpectralField& u, const MultiplierSet& mult, double dt);

/// Linear-only variant used for control runs.
SpectralField linear_step(const SpectralField& u, const MultiplierSet& mult, double dt);

/// min(dt, adapt_phase / (|u|∞² Ŵ(0))), floored at dt_min; returns dt unchanged when
/// adaptation is off.
double adapt_dt(const SpectralField& u, const StepperConfig& cfg, const MultiplierSet& mult);

/// Fraction of ∫|û|² carried by modes with max_i |ξ_i| > (2/3) ξ_max.
double spectral_tail_fraction(const SpectralField& u);

/// Default horizon L / (4 · 2s ξ_max^{2s-1}) before dispersed waves wrap around.
double wraparound_time(const GridSpec& grid, const PhysParams& p);

RunRecord evolve(const SpectralField& u0, const PhysParams& p, const MultiplierSet& mult,
                 const StepperConfig& cfg, const GroundState& gs, const SampleObserver& observer = {});

struct InvarianceAudit {
  bool flipped = false;
  long flip_index = -1;
  Membership initial = Membership::Neither;
  bool all_same = true;
  double delta0 = 0.0;  ///< 1 - max grad_ratio, for K1 runs
  bool ok = true;
  std::string message;
};

InvarianceAudit invariance_audit(const RunRecord& rec);

}  // namespace fhartree
