#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fhartree/diagnostics.hpp"
#include "fhartree/evolution.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fhartree;
using testing_support::gaussian;
using testing_support::WarningCapture;

namespace {

struct Canonical {
  PhysParams p = canonical_params();
  GridSpec g = make_grid(2, 128, 32.0);
  MultiplierSet mult{p, g};
  GroundState gs;
  QuadratureRule quad = QuadratureRule::make(p.s);
  Canonical() {
    WarningCapture quiet;
    gs = solve_ground_state(p, mult);
  }
};

const Canonical& canonical() {
  static const Canonical c;
  return c;
}

SpectralField plane_wave(const GridSpec& grid, int k0, int k1) {
  return SpectralField::sample(grid, [&](const auto& x) {
    return std::exp(Complex(0.0, grid.dxi() * (k0 * x[0] + k1 * x[1])));
  });
}

// Random smooth field multiplied by a C² bump, so it vanishes identically outside a disc.
SpectralField compact_random_field(const GridSpec& grid, std::mt19937_64& rng, double radius) {
  auto u = random_smooth_field(grid, rng);
  for_each_point(grid, [&](std::size_t i, const auto& x) {
    const double r2 = (x[0] * x[0] + x[1] * x[1]) / (radius * radius);
    u[i] *= r2 < 1.0 ? std::pow(1.0 - r2, 3) : 0.0;
  });
  return u;
}

struct VirialRun {
  RunRecord rec;
  std::vector<VirialRhs> series;
};

VirialRun run_with_virial(const Canonical& c, double amp, double t_end) {
  const CutoffPhi phi(c.g, 0.25 * c.g.L);
  StepperConfig cfg;
  cfg.t_end = t_end;
  cfg.record_every = 100;
  VirialRun out;
  out.rec = evolve(c.gs.q * amp, c.p, c.mult, cfg, c.gs, [&](double, const SpectralField& u) {
    out.series.push_back(virial_rhs(u, phi, c.p, c.mult, c.quad));
  });
  return out;
}

}  // namespace

TEST_CASE("m-quadrature rule") {
  const double s = 0.7;
  const auto rule = QuadratureRule::make(s, 95);
  CHECK(rule.nodes.size() == 100);
  CHECK(rule.weights.size() == 100);

  // ∫ m^s/(1+m)² dm = πs / sin(πs); m² f(m) → 1 at infinity.
  double sum = rule.upper_tail_weight;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double m = rule.nodes[i];
    sum += rule.weights[i] / ((1.0 + m) * (1.0 + m));
  }
  const double expected = std::numbers::pi * s / std::sin(std::numbers::pi * s);
  CHECK(oracle::relative(sum, expected) < 1e-8);
  CHECK(oracle::relative(sum, oracle::resolvent_moment(s, 1.0)) < 1e-8);

  CHECK(resolvent_normalization(0.5) == doctest::Approx(std::sqrt(1.0 / std::numbers::pi)));
}

TEST_CASE("resolvent field") {
  const auto p = canonical_params();
  const auto g = make_grid(2, 32, 8.0);
  const double cs = resolvent_normalization(p.s);

  const auto c = SpectralField::sample(g, [](const auto&) { return 3.0; });
  const auto cm = auxiliary_field(c, 2.0, p);
  for (std::size_t i = 0; i < cm.size(); ++i) CHECK(std::abs(cm[i] - Complex(cs * 3.0 / 2.0)) < 1e-13);

  const auto w = plane_wave(g, 2, -1);
  const double k2 = 5.0 * g.dxi() * g.dxi();
  const auto wm = auxiliary_field(w, 0.3, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(wm[i] - w[i] * (cs / (k2 + 0.3))));
  CHECK(worst < 1e-14);

  const auto u = gaussian(g, 1.0);
  const double m = 1e6;
  CHECK(std::abs(l2_norm(auxiliary_field(u, m, p)) * m / cs - l2_norm(u)) < 1e-3 * l2_norm(u));
}

TEST_CASE("Balakrishnan identity") {
  const auto& c = canonical();

  const auto zero = balakrishnan_check(SpectralField(c.g), c.p, c.quad);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.rel_err == 0.0);

  CHECK(balakrishnan_check(gaussian(c.g), c.p, c.quad).rel_err < 1e-4);

  // A single Fourier mode reduces the m-integral to a scalar one.
  auto w = plane_wave(c.g, 3, 1);
  w *= Complex(1.0 / l2_norm(w));
  const double k2 = 10.0 * c.g.dxi() * c.g.dxi();
  const double cs2 = std::sin(std::numbers::pi * c.p.s) / std::numbers::pi;
  const double scalar = cs2 * k2 * oracle::resolvent_moment(c.p.s, k2);
  const auto single = balakrishnan_check(w, c.p, c.quad);
  CHECK(oracle::relative(single.lhs, scalar) < 1e-8);
  CHECK(oracle::relative(scalar, c.p.s * std::pow(k2, c.p.s)) < 1e-8);
}

TEST_CASE("cutoff profile") {
  const auto g = make_grid(2, 64, 32.0);
  const CutoffPhi phi(g, 8.0);
  const auto inner = phi.profile(0.6);
  CHECK(inner[0] == doctest::Approx(0.36));
  CHECK(inner[1] == doctest::Approx(1.2));
  CHECK(inner[2] == doctest::Approx(2.0));
  const auto outer = phi.profile(2.5);
  for (double d : outer) CHECK(d == 0.0);

  for (double knot : {1.0, 2.0}) {
    const auto below = phi.profile(knot - 1e-12);
    const auto above = phi.profile(knot + 1e-12);
    for (int k = 0; k <= 4; ++k) {
      CAPTURE(knot);
      CAPTURE(k);
      CHECK(std::abs(below[static_cast<std::size_t>(k)] - above[static_cast<std::size_t>(k)]) < 1e-6);
    }
  }

  double mean = 0.0;
  double peak = 0.0;
  for (double v : phi.bilaplacian()) {
    mean += v;
    peak = std::max(peak, std::abs(v));
  }
  CHECK(std::abs(mean / static_cast<double>(g.size())) < 1e-14 * peak);
}

TEST_CASE("localized virial") {
  const auto& c = canonical();
  const CutoffPhi phi(c.g, 8.0);

  CHECK(localized_virial(gaussian(c.g, 1.3, 0.4, 0.1), phi) == doctest::Approx(0.0).epsilon(1e-14));
  const double scale = c.gs.hs * c.gs.hs + c.gs.l2 * c.gs.l2;
  CHECK(std::abs(localized_virial(c.gs.q, phi)) < 1e-12 * scale);

  // u = e^{ik·x} g with g supported where φ(x/R) = |x/R|²: integrand 2 Im(ū · 2x · ∇u).
  const int k0 = 3;
  const int k1 = -2;
  const double kx = k0 * c.g.dxi();
  const double ky = k1 * c.g.dxi();
  const double cx = 0.7;
  const double cy = -0.4;
  const auto u = SpectralField::sample(c.g, [&](const auto& x) {
    const double dx = x[0] - cx;
    const double dy = x[1] - cy;
    return std::exp(-(dx * dx + dy * dy)) * std::exp(Complex(0.0, kx * x[0] + ky * x[1]));
  });
  double direct = 0.0;
  for_each_point(c.g, [&](std::size_t i, const auto& x) {
    const double dx = x[0] - cx;
    const double dy = x[1] - cy;
    const Complex gx = Complex(-2.0 * dx, kx) * u[i];
    const Complex gy = Complex(-2.0 * dy, ky) * u[i];
    direct += 2.0 * std::imag(std::conj(u[i]) * (2.0 * x[0] * gx + 2.0 * x[1] * gy));
  });
  direct *= c.g.cell_volume();
  CHECK(oracle::relative(localized_virial(u, phi), direct) < 1e-8);
  CHECK(oracle::relative(direct, 4.0 * (kx * cx + ky * cy) * std::numbers::pi / 2.0) < 1e-8);
}

TEST_CASE("virial right-hand side") {
  const auto& c = canonical();
  const CutoffPhi phi(c.g, 0.25 * c.g.L);

  const auto zero = virial_rhs(SpectralField(c.g), phi, c.p, c.mult, c.quad);
  CHECK(zero.main == 0.0);
  CHECK(zero.I == 0.0);
  CHECK(zero.A_R == 0.0);

  // Concentrated data: the cutoff acts like |x|² and the unlocalized identity is recovered.
  const auto u = gaussian(c.g, 1.0) * 1.5;
  const auto rhs = virial_rhs(u, phi, c.p, c.mult, c.quad);
  const double h = sobolev_norm(u, c.p.s);
  const double expected = 2.0 * c.p.gamma * (4.0 * c.p.s / c.p.gamma * h * h - hartree_energy(u, c.mult));
  CHECK(oracle::relative(rhs.total(), expected) < 2e-2);

  // Time derivative of the localized virial along a short evolution.
  const auto v0 = c.gs.q * 0.9;
  const double tau = 1e-4;
  const double fd = (localized_virial(strang_step(v0, c.mult, tau), phi) -
                     localized_virial(strang_step(v0, c.mult, -tau), phi)) /
                    (2.0 * tau);
  const auto at0 = virial_rhs(v0, phi, c.p, c.mult, c.quad);
  CHECK(std::abs(fd - at0.total()) <= std::max(1e-3 * std::abs(at0.total()), at0.A_R));
}

TEST_CASE("virial lower bound along sub-threshold runs") {
  const auto& c = canonical();
  const auto near = run_with_virial(c, 0.9, 0.5);
  const auto audit = virial_lower_bound_audit(near.rec, c.gs, near.series);
  CHECK(audit.initial == Membership::K1);
  CHECK(audit.positive);
  CHECK(audit.empirical_c_delta > 0.0);

  const auto deep = run_with_virial(c, 0.7, 0.5);
  const auto deep_audit = virial_lower_bound_audit(deep.rec, c.gs, deep.series);
  CHECK(deep_audit.positive);
  CHECK(deep_audit.empirical_c_delta > audit.empirical_c_delta);

  const auto soliton = run_with_virial(c, 1.0, 0.3);
  for (const auto& v : soliton.series) CHECK(std::abs(v.total()) < 1e-3 * c.gs.hs * c.gs.hs);
}

TEST_CASE("weighted virial") {
  const auto& c = canonical();
  CHECK(weighted_virial(SpectralField(c.g), c.p) == 0.0);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) CHECK(weighted_virial(compact_random_field(c.g, rng, 6.0), c.p) >= 0.0);

  const auto fit = quadratic_fit({0.0, 1.0, 2.0, 3.0}, {1.0, 2.5, 2.0, -0.5});
  CHECK(fit[0] == doctest::Approx(-1.0));
  CHECK(fit[1] == doctest::Approx(2.5));
  CHECK(fit[2] == doctest::Approx(1.0));

  // Concavity of the weighted functional before the blow-up trigger.
  WarningCapture quiet;
  StepperConfig cfg;
  cfg.t_end = wraparound_time(c.g, c.p);
  std::vector<double> times;
  std::vector<double> values;
  const auto rec = evolve(c.gs.q * 1.05, c.p, c.mult, cfg, c.gs, [&](double t, const SpectralField& u) {
    times.push_back(t);
    values.push_back(weighted_virial(u, c.p));
  });
  REQUIRE(rec.verdict == Verdict::BlowUp);
  CHECK(quadratic_fit(times, values)[0] < 0.0);
}

TEST_CASE("scattering proxies") {
  const auto& c = canonical();
  StepperConfig cfg;
  cfg.t_end = 0.5;
  const auto soliton = evolve(c.gs.q, c.p, c.mult, cfg, c.gs);
  CHECK(std::abs(scattering_proxies(soliton).v_ratio - 1.0) < 1e-3);

  cfg.t_end = 2.0;
  cfg.linear_only = true;
  const auto free_run = evolve(gaussian(c.g, 1.0), c.p, c.mult, cfg, c.gs);
  const auto proxies = scattering_proxies(free_run);
  CHECK(proxies.v_ratio < 0.5);
  CHECK(proxies.lpc_ratio < 1.0);
  CHECK(proxies.strichartz_rate_final < proxies.strichartz_rate_first);
}
