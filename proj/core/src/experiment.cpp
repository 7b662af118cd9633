#include "fhartree/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "fhartree/diagnostics.hpp"
#include "fhartree/errors.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/log.hpp"
#include "fhartree/snapshot.hpp"
#include "fhartree/verify.hpp"
#include "reports.hpp"

namespace fhartree {

namespace fs = std::filesystem;
using reports::json;

namespace {

fs::path prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.io.out_dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + cfg.io.out_dir.string() + ": " + ec.message());
  return cfg.io.out_dir;
}

void require_same_setup(const Snapshot& snap, const RunConfig& cfg, const std::string& what) {
  const auto& p = snap.params;
  if (p.N != cfg.physics.N || p.s != cfg.physics.s || p.gamma != cfg.physics.gamma) {
    std::ostringstream msg;
    msg << what << " was computed for (N, s, gamma) = (" << p.N << ", " << p.s << ", " << p.gamma
        << ") but the configuration asks for (" << cfg.physics.N << ", " << cfg.physics.s << ", "
        << cfg.physics.gamma << ")";
    throw ValidationError(msg.str());
  }
  if (!(snap.field.grid() == cfg.grid)) {
    std::ostringstream msg;
    msg << what << " lives on grid (n=" << snap.field.grid().n << ", L=" << snap.field.grid().L
        << ") but the configuration asks for (n=" << cfg.grid.n << ", L=" << cfg.grid.L << ")";
    throw ValidationError(msg.str());
  }
}

SetMembership membership_of(const SpectralField& u, const RunConfig& cfg, const MultiplierSet& mult,
                            const GroundState& gs) {
  return classify_membership(invariant_pair(u, cfg.physics, mult), gs);
}

}  // namespace

GroundState obtain_ground_state(const RunConfig& cfg, const MultiplierSet& mult) {
  if (!cfg.io.ground_state.empty()) {
    auto snap = read_snapshot(cfg.io.ground_state);
    require_same_setup(snap, cfg, "ground-state snapshot " + cfg.io.ground_state.string());
    GroundState gs;
    gs.params = cfg.physics;
    gs.q = std::move(snap.field);
    gs.converged = true;
    evaluate_ground_state(gs, mult);
    return gs;
  }
  std::optional<SpectralField> seed;
  if (!cfg.io.solver_seed.empty()) {
    auto snap = read_snapshot(cfg.io.solver_seed);
    require_same_setup(snap, cfg, "solver seed " + cfg.io.solver_seed.string());
    seed = std::move(snap.field);
  }
  return solve_ground_state(cfg.physics, mult, seed, cfg.solver);
}

SpectralField initial_data(const RunConfig& cfg, const GroundState& gs) {
  if (!cfg.initial.snapshot.empty()) {
    auto snap = read_snapshot(cfg.initial.snapshot);
    require_same_setup(snap, cfg, "initial-data snapshot " + cfg.initial.snapshot.string());
    return std::move(snap.field);
  }
  return gs.q * Complex(cfg.initial.amplitude, 0.0);
}

std::string predicted_fate(Membership m, const PhysParams& p) {
  switch (m) {
    case Membership::K1:
      return p.scattering_hypothesis() ? "global + scattering"
                                       : "global (scattering needs s >= N/(2N-1); no scattering prediction)";
    case Membership::K2: return "finite-time blow-up";
    case Membership::Boundary: return "boundary (soliton orbit): global, not scattering; no dichotomy prediction";
    case Membership::Neither: return "outside theorem hypotheses - no prediction";
  }
  return "no prediction";
}

bool outcome_agrees(Membership m, Verdict v) {
  if (m == Membership::K1) return v == Verdict::GlobalDispersing;
  if (m == Membership::K2) return v == Verdict::BlowUp;
  return false;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const GroundState& gs, const MultiplierSet& mult) {
  const auto amplitudes = cfg.sweep.resolve();
  if (amplitudes.empty()) throw ValidationError("sweep amplitude range is empty");
  std::vector<SweepRow> rows(amplitudes.size());

  auto work = [&](std::size_t i) {
    SweepRow row;
    row.c = amplitudes[i];
    const auto u0 = gs.q * Complex(row.c, 0.0);
    row.membership = membership_of(u0, cfg, mult, gs);
    row.prediction = predicted_fate(row.membership.verdict, cfg.physics);
    row.has_prediction = row.membership.verdict == Membership::K1 || row.membership.verdict == Membership::K2;
    const auto rec = evolve(u0, cfg.physics, mult, cfg.stepper, gs);
    row.outcome = rec.verdict;
    row.t_star = rec.t_star;
    row.agrees = row.has_prediction && outcome_agrees(row.membership.verdict, rec.verdict);
    rows[i] = row;
  };

  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t workers = cfg.sweep.workers > 0 ? static_cast<std::size_t>(cfg.sweep.workers) : hw;
  // Each row owns its state; rows are written by index, so the order is fixed.
  for (std::size_t start = 0; start < amplitudes.size(); start += workers) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < std::min(amplitudes.size(), start + workers); ++i) {
      batch.push_back(std::async(std::launch::async, work, i));
    }
    for (auto& f : batch) f.get();
  }
  return rows;
}

int cmd_ground_state(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_output(cfg);
  const MultiplierSet mult(cfg.physics, cfg.grid, cfg.dealias);
  GroundState gs;
  int code = kExitSuccess;
  try {
    gs = obtain_ground_state(cfg, mult);
  } catch (const NonConvergence& e) {
    gs = e.partial();
    code = kExitNonConvergence;
    out << e.what() << '\n';
  }
  write_snapshot(dir / "ground_state.bin", gs.q, cfg.physics);
  reports::write_json(dir / "ground_state.json",
                      reports::artifact("ground-state", cfg, json{{"ground_state", reports::ground_state_json(gs)}}));
  out << std::setprecision(10) << "ground state: converged=" << (gs.converged ? "yes" : "no")
      << " iterations=" << gs.iterations << " |Q|_2=" << gs.l2 << " |Q|_Hs=" << gs.hs << " V=" << gs.hartree
      << " E=" << gs.energy << '\n'
      << std::setprecision(3) << "  euler_lagrange=" << gs.euler_lagrange << " r1=" << gs.pohozaev.r1
      << " r2=" << gs.pohozaev.r2 << '\n'
      << std::setprecision(10) << "  cgn=" << gs.cgn_a << " (mass form " << gs.cgn_b << ")"
      << " me_Q=" << gs.thresholds.me_Q << " grad_Q=" << gs.thresholds.grad_Q << '\n'
      << "  wrote " << (dir / "ground_state.bin").string() << " and ground_state.json\n";
  return code;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_output(cfg);
  const MultiplierSet mult(cfg.physics, cfg.grid, cfg.dealias);
  const auto gs = obtain_ground_state(cfg, mult);
  const auto u0 = initial_data(cfg, gs);
  const auto pair = invariant_pair(u0, cfg.physics, mult);
  const auto member = classify_membership(pair, gs);
  const auto fate = predicted_fate(member.verdict, cfg.physics);
  reports::write_json(dir / "classify.json",
                      reports::artifact("classify", cfg,
                                        json{{"me", pair.me},
                                             {"grad", pair.grad},
                                             {"me_ratio", member.me_ratio},
                                             {"grad_ratio", member.grad_ratio},
                                             {"membership", to_string(member.verdict)},
                                             {"prediction", fate}}));
  out << std::setprecision(8) << "me_ratio=" << member.me_ratio << " grad_ratio=" << member.grad_ratio
      << " membership=" << to_string(member.verdict) << " prediction: " << fate << '\n';
  return kExitSuccess;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_output(cfg);
  const MultiplierSet mult(cfg.physics, cfg.grid, cfg.dealias);
  const auto gs = obtain_ground_state(cfg, mult);
  const auto u0 = initial_data(cfg, gs);
  const auto member = membership_of(u0, cfg, mult, gs);

  const double horizon = wraparound_time(cfg.grid, cfg.physics);
  if (cfg.stepper.t_end > horizon) {
    std::ostringstream msg;
    msg << "t_end = " << cfg.stepper.t_end << " exceeds the wrap-around time " << horizon
        << " of this box; late-time dispersion may recur through the periodic boundary";
    warn(msg.str());
  }

  const double R = cfg.diagnostics.virial_R > 0.0 ? cfg.diagnostics.virial_R : 0.25 * cfg.grid.L;
  const CutoffPhi phi(cfg.grid, R);
  const auto quad = QuadratureRule::make(cfg.physics.s, cfg.diagnostics.quad_nodes);
  std::vector<VirialRhs> virial;
  std::vector<double> virial_times;
  std::vector<double> localized;
  std::vector<double> weighted;
  std::vector<ComparabilityReport> comparability;
  int sample = 0;
  const auto observer = [&](double t, const SpectralField& u) {
    comparability.push_back(comparability_check(u, cfg.physics, mult));
    if (cfg.diagnostics.virial) {
      virial.push_back(virial_rhs(u, phi, cfg.physics, mult, quad));
      virial_times.push_back(t);
      localized.push_back(localized_virial(u, phi));
      weighted.push_back(weighted_virial(u, cfg.physics));
    }
    if (cfg.io.snapshot_every > 0 && sample % cfg.io.snapshot_every == 0) {
      std::ostringstream name;
      name << "snapshot_" << std::setw(5) << std::setfill('0') << sample << ".bin";
      write_snapshot(dir / name.str(), u, cfg.physics);
    }
    ++sample;
  };
  const auto rec = evolve(u0, cfg.physics, mult, cfg.stepper, gs, observer);

  {
    std::ofstream csv(dir / "run.csv");
    if (!csv) throw ValidationError("cannot write run.csv");
    rec.write_csv(csv);
  }

  const auto audit = invariance_audit(rec);
  const auto proxies = scattering_proxies(rec);
  json body{{"run", reports::run_json(rec)},
            {"invariance_audit", reports::audit_json(audit)},
            {"scattering_proxies", reports::proxies_json(proxies)},
            {"wraparound_time", horizon}};
  const auto fate = predicted_fate(member.verdict, cfg.physics);
  const bool has_prediction = member.verdict == Membership::K1 || member.verdict == Membership::K2;
  body["prediction"] = {{"membership", to_string(member.verdict)},
                        {"me_ratio", member.me_ratio},
                        {"grad_ratio", member.grad_ratio},
                        {"predicted", fate},
                        {"outcome", to_string(rec.verdict)},
                        {"agrees", has_prediction ? json(outcome_agrees(member.verdict, rec.verdict)) : json(nullptr)}};
  if (member.verdict == Membership::K1) {
    double min_lower = 0.0, min_upper = 0.0, min_gap = 0.0;
    for (std::size_t i = 0; i < comparability.size(); ++i) {
      const auto& c = comparability[i];
      min_lower = i ? std::min(min_lower, c.lower_margin) : c.lower_margin;
      min_upper = i ? std::min(min_upper, c.upper_margin) : c.upper_margin;
      min_gap = i ? std::min(min_gap, c.coercivity_gap / c.hs_sq) : c.coercivity_gap / c.hs_sq;
    }
    body["comparability"] = {{"min_lower_margin", min_lower},
                             {"min_upper_margin", min_upper},
                             {"min_relative_coercivity_gap", min_gap},
                             {"holds", min_lower >= 0.0 && min_upper >= 0.0 && min_gap > 0.0}};
  }
  if (cfg.diagnostics.virial) {
    json series = json::array();
    for (std::size_t i = 0; i < virial.size(); ++i) {
      series.push_back({{"t", virial_times[i]},
                        {"localized_virial", localized[i]},
                        {"main", virial[i].main},
                        {"I", virial[i].I},
                        {"A_R", virial[i].A_R},
                        {"weighted_virial", weighted[i]}});
    }
    const auto va = virial_lower_bound_audit(rec, gs, virial);
    body["virial"] = {{"R", R},
                      {"series", series},
                      {"positive", va.positive},
                      {"min_total", va.min_total},
                      {"empirical_c_delta", va.empirical_c_delta}};
    if (weighted.size() >= 3) {
      const auto fit = quadratic_fit(virial_times, weighted);
      body["virial"]["weighted_quadratic_coefficient"] = fit[0];
    }
  }
  reports::write_json(dir / "run.json", reports::artifact("evolve", cfg, body));

  out << std::setprecision(6) << "verdict=" << to_string(rec.verdict);
  if (rec.verdict == Verdict::BlowUp) out << " t*=" << rec.t_star;
  out << " t_final=" << rec.times.back() << " steps=" << rec.steps << " mass_drift=" << rec.mass_drift()
      << " energy_drift=" << rec.energy_drift() << '\n';
  if (!rec.caveat.empty()) out << "  caveat: " << rec.caveat << '\n';
  out << "  predicted: " << fate << " | outcome: " << to_string(rec.verdict);
  if (has_prediction) out << " | " << (outcome_agrees(member.verdict, rec.verdict) ? "agree" : "DISAGREE");
  out << '\n';
  return kExitSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweep.resolve().empty()) throw ValidationError("sweep amplitude range is empty");
  const auto dir = prepare_output(cfg);
  const MultiplierSet mult(cfg.physics, cfg.grid, cfg.dealias);
  const auto gs = obtain_ground_state(cfg, mult);
  const auto rows = run_sweep(cfg, gs, mult);

  std::ofstream csv(dir / "sweep.csv");
  if (!csv) throw ValidationError("cannot write sweep.csv");
  csv << "c,me_ratio,grad_ratio,membership,prediction,outcome,t_star,agreement\n" << std::setprecision(17);
  bool all_agree = true;
  json table = json::array();
  for (const auto& r : rows) {
    const bool checked = r.has_prediction && std::abs(r.c - 1.0) >= 0.05 - 1e-12;
    const std::string agreement = !r.has_prediction ? "n/a" : (r.agrees ? "yes" : "no");
    if (checked && !r.agrees) all_agree = false;
    csv << std::setprecision(12) << r.c << std::setprecision(17) << ',' << r.membership.me_ratio << ',' << r.membership.grad_ratio << ','
        << to_string(r.membership.verdict) << ",\"" << r.prediction << "\"," << to_string(r.outcome) << ',';
    if (r.outcome == Verdict::BlowUp) csv << r.t_star;
    csv << ',' << agreement << '\n';
    table.push_back({{"c", r.c},
                     {"me_ratio", r.membership.me_ratio},
                     {"grad_ratio", r.membership.grad_ratio},
                     {"membership", to_string(r.membership.verdict)},
                     {"prediction", r.prediction},
                     {"outcome", to_string(r.outcome)},
                     {"agreement", agreement}});
    out << std::setprecision(4) << "c=" << r.c << " " << to_string(r.membership.verdict) << " -> "
        << to_string(r.outcome) << " (" << agreement << ")\n";
  }
  reports::write_json(dir / "sweep.json",
                      reports::artifact("sweep", cfg, json{{"rows", table}, {"all_agree", all_agree}}));
  return all_agree ? kExitSuccess : kExitVerificationFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_output(cfg);
  const MultiplierSet mult(cfg.physics, cfg.grid, cfg.dealias);
  const auto gs = obtain_ground_state(cfg, mult);
  const auto report = run_identity_suite(cfg, gs, mult);
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(32) << c.name << std::right
        << std::scientific << std::setprecision(3) << " value=" << c.value << " tol=" << c.tolerance;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << std::defaultfloat << '\n';
  }
  reports::write_json(dir / "verify.json", reports::artifact("verify", cfg, reports::verify_json(report)));
  return report.all_pass() ? kExitSuccess : kExitVerificationFailure;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (name == "ground-state") return cmd_ground_state(cfg, out);
    if (name == "classify") return cmd_classify(cfg, out);
    if (name == "evolve") return cmd_evolve(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    err << "error: unknown command " << name << '\n';
    return kExitValidation;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const CollapseToZero& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace fhartree
