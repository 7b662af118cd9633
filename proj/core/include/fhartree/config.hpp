#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fhartree/evolution.hpp"
#include "fhartree/grid.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

struct IoConfig {
  std::filesystem::path out_dir = "out";
  /// Write a field snapshot every this many samples (0 = never).
  int snapshot_every = 0;
  /// Seed for randomized property checks.
  unsigned long long seed = 20240611ULL;
  /// Optional ground-state snapshot to load instead of solving.
  std::filesystem::path ground_state;
  /// Optional snapshot to warm-start the ground-state solver.
  std::filesystem::path solver_seed;
};

struct InitialConfig {
  /// u0 = amplitude · Q unless a snapshot is given.
  double amplitude = 1.0;
  std::filesystem::path snapshot;
};

struct SweepSpec {
  double c_lo = 0.8;
  double c_hi = 1.2;
  int count = 9;
  /// Explicit list; overrides the uniform range when non-empty.
  std::vector<double> amplitudes;
  /// Parallel workers (0 = hardware concurrency).
  int workers = 0;

  std::vector<double> resolve() const;
};

struct DiagnosticsConfig {
  int quad_nodes = 200;
  /// Virial radius; 0 selects L/4.
  double virial_R = 0.0;
  /// Evaluate the virial right-hand side at every sample of evolve runs.
  bool virial = false;
  int random_fields = 100;
};

struct RunConfig {
  PhysParams physics;
  GridSpec grid;
  bool dealias = false;
  SolverOptions solver;
  StepperConfig stepper;
  InitialConfig initial;
  SweepSpec sweep;
  DiagnosticsConfig diagnostics;
  IoConfig io;

  void validate() const;
};

using Overrides = std::map<std::string, std::string>;

/// The canonical profile: N=2, s=0.7, γ=1.6, n=128, L=32, dt=1e-3.
RunConfig canonical_config();

/// Builds a configuration from the named profile, then an optional INI file,
/// then dotted "section.key" overrides, and validates the result.
/// Unknown sections or keys raise ValidationError.
RunConfig load_config(const std::string& profile, const std::filesystem::path& file, const Overrides& overrides);

/// Flat "section.key" → value listing of every field, in INI-compatible form.
std::map<std::string, std::string> config_entries(const RunConfig& cfg);

/// Writes the resolved configuration as an INI file.
void write_config(const std::filesystem::path& path, const RunConfig& cfg);

}  // namespace fhartree
