#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhartree/config.hpp"
#include "fhartree/evolution.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/multipliers.hpp"

namespace fhartree {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitValidation = 1,
  kExitNonConvergence = 2,
  kExitVerificationFailure = 3,
};

/// Loads io.ground_state when set (refusing parameter or grid mismatches),
/// otherwise solves from the configured seed.
GroundState obtain_ground_state(const RunConfig& cfg, const MultiplierSet& mult);

/// initial.snapshot when set, otherwise initial.amplitude · Q.
SpectralField initial_data(const RunConfig& cfg, const GroundState& gs);

/// Fate predicted by the dichotomy for a membership verdict.
std::string predicted_fate(Membership m, const PhysParams& p);

/// Whether an outcome agrees with a prediction; false for rows with no prediction.
bool outcome_agrees(Membership m, Verdict v);

struct SweepRow {
  double c = 0.0;
  SetMembership membership;
  std::string prediction;
  Verdict outcome = Verdict::Inconclusive;
  double t_star = 0.0;
  bool has_prediction = false;
  bool agrees = false;
};

/// Classify and evolve c·Q for each amplitude; runs in parallel, rows ordered by c.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const GroundState& gs, const MultiplierSet& mult);

int cmd_ground_state(const RunConfig& cfg, std::ostream& out);
int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Dispatches by subcommand name and maps exceptions to exit codes, printing
/// the message to err.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fhartree
