#include "fhartree/verify.hpp"

#include <cmath>
#include <sstream>

#include "fhartree/diagnostics.hpp"
#include "fhartree/evolution.hpp"
#include "fhartree/functionals.hpp"

namespace fhartree {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

SpectralField random_smooth_field(const GridSpec& grid, std::mt19937_64& rng, double bandwidth, double envelope,
                                  double shift) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> offset(-shift, shift);
  std::array<double, 3> centre{0.0, 0.0, 0.0};
  for (int d = 0; d < grid.N; ++d) centre[static_cast<std::size_t>(d)] = offset(rng);

  SpectralField noise(grid);
  for (auto& v : noise.values()) v = Complex(normal(rng), normal(rng));
  auto filter = grid.xi_squared();
  for (auto& f : filter) f = std::exp(-f / (bandwidth * bandwidth));
  auto smooth = apply_multiplier(noise, std::span<const double>(filter));

  const double inv_e2 = 1.0 / (envelope * envelope);
  for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid.N; ++d) {
      const double dx = x[static_cast<std::size_t>(d)] - centre[static_cast<std::size_t>(d)];
      r2 += dx * dx;
    }
    smooth[i] *= std::exp(-r2 * inv_e2);
  });
  const double norm = l2_norm(smooth);
  if (norm > 0.0) smooth *= Complex(1.0 / norm, 0.0);
  return smooth;
}

namespace {

void add(VerifyReport& r, std::string name, double value, double tol, std::string detail = {}) {
  r.checks.push_back(CheckResult{std::move(name), value, tol, std::isfinite(value) && value < tol, std::move(detail)});
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

VerifyReport run_identity_suite(const RunConfig& cfg, const GroundState& gs, const MultiplierSet& mult) {
  const auto& p = cfg.physics;
  const auto& grid = mult.grid();
  VerifyReport report;
  std::mt19937_64 rng(cfg.io.seed);

  add(report, "euler_lagrange_residual", gs.euler_lagrange, 1e-8);
  add(report, "pohozaev_r1", std::abs(gs.pohozaev.r1), 1e-5);
  add(report, "pohozaev_r2", std::abs(gs.pohozaev.r2), 1e-5);
  const double H = gs.hs * gs.hs;
  const double M = gs.l2 * gs.l2;
  add(report, "hartree_vs_gradient_form", rel(4.0 * p.s / p.gamma * H, gs.hartree), 1e-5);
  add(report, "hartree_vs_mass_form", rel(4.0 * p.s / (4.0 * p.s - p.gamma) * M, gs.hartree), 1e-5);
  add(report, "cgn_forms_agree", std::abs(gs.cgn_a - gs.cgn_b) / gs.cgn_a, 1e-4);
  add(report, "gn_ratio_at_ground_state", std::abs(gn_ratio(gs.q, gs.cgn_a, p, mult) - 1.0), 1e-5);

  double worst_gn = 0.0;
  for (int k = 0; k < cfg.diagnostics.random_fields; ++k) {
    const auto v = random_smooth_field(grid, rng);
    worst_gn = std::max(worst_gn, gn_ratio(v, gs.cgn_a, p, mult));
  }
  add(report, "gn_inequality_random_fields", worst_gn - 1.0, 1e-4,
      "max ratio over " + std::to_string(cfg.diagnostics.random_fields) + " fields");

  const auto& t = gs.threshold_report;
  add(report, "me_threshold_closed_form", t.me_discrepancy, 1e-5);
  add(report, "grad_threshold_closed_form", t.grad_discrepancy, 1e-5);
  add(report, "threshold_ratio", rel(t.ratio, t.ratio_expected), 1e-5);

  const auto quad = QuadratureRule::make(p.s, cfg.diagnostics.quad_nodes);
  const auto gaussian = SpectralField::sample(grid, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
  add(report, "balakrishnan_gaussian", balakrishnan_check(gaussian, p, quad).rel_err, 1e-4);
  double worst_bala = 0.0;
  for (int k = 0; k < 10; ++k) {
    worst_bala = std::max(worst_bala, balakrishnan_check(random_smooth_field(grid, rng), p, quad).rel_err);
  }
  add(report, "balakrishnan_random_fields", worst_bala, 1e-4);

  StepperConfig stepper = cfg.stepper;
  stepper.adaptive = false;
  stepper.t_end = 1.0;
  const auto run = evolve(gs.q * Complex(0.95, 0.0), p, mult, stepper, gs);
  add(report, "mass_conservation", run.mass_drift(), 1e-10);
  add(report, "energy_conservation", run.energy_drift(), 1e-6);
  const auto audit = invariance_audit(run);
  add(report, "k1_flow_invariance", audit.ok ? 0.0 : 1.0, 0.5, audit.message);

  const auto inner = gs.q * Complex(0.9, 0.0);
  const auto comp = comparability_check(inner, p, mult);
  add(report, "comparability_lower_margin", -comp.lower_margin, 0.0);
  add(report, "comparability_upper_margin", -comp.upper_margin, 0.0);
  add(report, "coercivity_gap", -comp.coercivity_gap, 0.0);

  const double R = cfg.diagnostics.virial_R > 0.0 ? cfg.diagnostics.virial_R : 0.25 * grid.L;
  const CutoffPhi phi(grid, R);
  const double h = 1e-4;
  const auto probe = gs.q * Complex(0.95, 0.0);
  const double fd =
      (localized_virial(strang_step(probe, mult, h), phi) - localized_virial(strang_step(probe, mult, -h), phi)) /
      (2.0 * h);
  const auto rhs = virial_rhs(probe, phi, p, mult, quad);
  const double allowed = std::max(1e-3 * std::abs(rhs.total()), rhs.A_R);
  std::ostringstream vd;
  vd << "d/dt M_R = " << fd << ", main + I = " << rhs.total() << ", A_R = " << rhs.A_R;
  add(report, "virial_derivative", std::abs(fd - rhs.total()) / allowed, 1.0, vd.str());
  add(report, "virial_sign_k1", -rhs.total(), 0.0);

  double worst_weighted = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto v = random_smooth_field(grid, rng);
    worst_weighted = std::min(worst_weighted, weighted_virial(v, p));
  }
  add(report, "weighted_virial_nonnegative", -worst_weighted, 1e-10);
  return report;
}

}  // namespace fhartree
