#include "fhartree/ground_state.hpp"

#include <cmath>
#include <sstream>

#include "fhartree/evolution.hpp"
#include "fhartree/log.hpp"

namespace fhartree {

namespace {

SpectralField default_seed(const GridSpec& grid, double width) {
  const double inv_w2 = 1.0 / (width * width);
  return SpectralField::sample(grid, [&](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) * inv_w2);
  });
}

// Largest |q| on the box faces relative to the peak.
double boundary_ratio(const SpectralField& q) {
  const auto& grid = q.grid();
  double edge = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto idx = grid.unravel(i);
    bool on_face = false;
    for (int d = 0; d < grid.N; ++d) on_face = on_face || idx[static_cast<std::size_t>(d)] == 0;
    if (on_face) edge = std::max(edge, std::abs(q[i]));
  }
  const double peak = q.max_modulus();
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

PohozaevResiduals pohozaev_residuals(const SpectralField& q, const PhysParams& p, const MultiplierSet& mult) {
  const double hs = sobolev_norm(q, p.s);
  const double H = hs * hs;
  const double M = mass(q);
  const double V = hartree_energy(q, mult);
  const double N = p.N;
  PohozaevResiduals r;
  r.r1 = (H + M - V) / H;
  r.r2 = (0.5 * (N - 2.0 * p.s) * H + 0.5 * N * M - 0.25 * (2.0 * N - p.gamma) * V) / H;
  return r;
}

std::pair<double, double> cgn_both_ways(const GroundState& gs, const PhysParams& p) {
  const double s = p.s;
  const double g = p.gamma;
  const double a = (4.0 * s / g) / (std::pow(gs.l2, (4.0 * s - g) / s) * std::pow(gs.hs, (g - 2.0 * s) / s));
  const double b = std::pow((4.0 * s - g) / g, g / (2.0 * s)) * 4.0 * s / ((4.0 * s - g) * gs.l2 * gs.l2);
  return {a, b};
}

ThresholdReport thresholds(const GroundState& gs, const PhysParams& p, const MultiplierSet& mult) {
  const double s = p.s;
  const double g = p.gamma;
  const auto pair = invariant_pair(gs.q, p, mult);
  ThresholdReport r;
  r.me_direct = pair.me;
  r.grad_direct = pair.grad;
  const double mass_power = std::pow(gs.l2, 2.0 * s / p.s_c());
  r.me_closed = (g - 2.0 * s) / (2.0 * (4.0 * s - g)) * mass_power;
  r.grad_closed = g / (4.0 * s - g) * mass_power;
  r.me_discrepancy = std::abs(r.me_direct - r.me_closed) / std::abs(r.me_closed);
  r.grad_discrepancy = std::abs(r.grad_direct - r.grad_closed) / std::abs(r.grad_closed);
  r.ratio = r.grad_direct / r.me_direct;
  r.ratio_expected = 2.0 * g / (g - 2.0 * s);
  return r;
}

void evaluate_ground_state(GroundState& gs, const MultiplierSet& mult) {
  const auto& p = gs.params;
  const auto& q = gs.q;
  gs.l2 = std::sqrt(mass(q));
  gs.hs = sobolev_norm(q, p.s);
  gs.hartree = hartree_energy(q, mult);
  gs.energy = 0.5 * gs.hs * gs.hs - 0.25 * gs.hartree;
  gs.pohozaev = pohozaev_residuals(q, p, mult);

  auto residual = apply_multiplier(q, mult.frac_lap_s());
  const auto pot = hartree_potential(q, mult);
  for (std::size_t i = 0; i < q.size(); ++i) residual[i] += q[i] - pot[i] * q[i];
  gs.euler_lagrange = l2_norm(residual) / gs.l2;

  std::tie(gs.cgn_a, gs.cgn_b) = cgn_both_ways(gs, p);
  gs.threshold_report = thresholds(gs, p, mult);
  gs.thresholds = Thresholds{gs.threshold_report.me_direct, gs.threshold_report.grad_direct};
  gs.tail_ratio = boundary_ratio(q);
}

GroundState solve_ground_state(const PhysParams& p, const MultiplierSet& mult,
                               const std::optional<SpectralField>& seed, const SolverOptions& opts) {
  p.validate();
  if (opts.max_iter < 1) throw ValidationError("solver max_iter must be positive");
  const auto& grid = mult.grid();
  SpectralField q = seed ? real_part(*seed) : default_seed(grid, opts.seed_width);
  if (!(q.grid() == grid)) throw ValidationError("ground-state seed lives on a different grid");
  if (l2_norm(q) < 1e-10) throw CollapseToZero("ground-state seed is zero");

  const auto symbol = mult.frac_lap_s();
  std::vector<double> inverse(symbol.size());
  for (std::size_t i = 0; i < symbol.size(); ++i) inverse[i] = 1.0 / (1.0 + symbol[i]);

  GroundState gs;
  gs.params = p;
  double change = 0.0;
  double factor = 0.0;
  int it = 0;
  bool converged = false;
  for (it = 1; it <= opts.max_iter; ++it) {
    const auto pot = hartree_potential(q, mult);
    SpectralField nonlinear = q;
    for (std::size_t i = 0; i < q.size(); ++i) nonlinear[i] *= pot[i].real();

    const auto linear_q = apply_multiplier(q, symbol);
    const double quad_linear = (inner_product(q, q) + inner_product(q, linear_q)).real();
    const double quad_nonlinear = inner_product(q, nonlinear).real();
    if (!(quad_nonlinear > 0.0)) throw CollapseToZero("ground-state iterate lost its nonlinear term");
    factor = std::pow(quad_linear / quad_nonlinear, 1.5);

    auto next = real_part(apply_multiplier(nonlinear, std::span<const double>(inverse)));
    next *= factor;
    const double norm_next = l2_norm(next);
    if (norm_next < 1e-10) throw CollapseToZero("ground-state iteration collapsed to zero");
    change = l2_norm(next - q) / norm_next;
    q = std::move(next);
    if (change < opts.tol) {
      converged = true;
      break;
    }
  }

  gs.q = std::move(q);
  gs.iterations = converged ? it : opts.max_iter;
  gs.last_change = change;
  gs.last_factor = factor;
  gs.converged = converged;
  evaluate_ground_state(gs, mult);

  if (gs.tail_ratio > 1e-8) {
    std::ostringstream msg;
    msg << "ground state has not decayed at the box edge: Q(L/2)/Q(0) = " << gs.tail_ratio
        << " (> 1e-8); consider a larger box";
    warn(msg.str());
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "ground-state iteration did not converge in " << opts.max_iter
        << " iterations (last relative change " << change << ", Pohozaev residuals " << gs.pohozaev.r1 << ", "
        << gs.pohozaev.r2 << ")";
    throw NonConvergence(msg.str(), std::move(gs));
  }
  return gs;
}

SetMembership classify_membership(const InvariantPair& pair, const GroundState& gs, double boundary_tol) {
  return classify_membership(pair, gs.thresholds, boundary_tol);
}

double soliton_orbit_check(const GroundState& gs, const MultiplierSet& mult, double T, double dt) {
  if (!(T > 0.0)) return 0.0;
  const long steps = std::lround(T / dt);
  const double step = T / static_cast<double>(steps);
  const double qnorm = gs.l2;
  SpectralField u = gs.q;
  double worst = 0.0;
  for (long k = 1; k <= steps; ++k) {
    u = strang_step(u, mult, step);
    const double t = step * static_cast<double>(k);
    const Complex phase = std::polar(1.0, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i] - phase * gs.q[i]);
    worst = std::max(worst, std::sqrt(acc * u.grid().cell_volume()) / qnorm);
  }
  return worst;
}

}  // namespace fhartree
