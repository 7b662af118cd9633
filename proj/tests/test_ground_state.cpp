#include "doctest.h"

#include <cmath>

#include "fhartree/errors.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/multipliers.hpp"
#include "support.hpp"

using namespace fhartree;
using testing_support::WarningCapture;

namespace {

struct Solved {
  PhysParams p = canonical_params();
  GridSpec g;
  MultiplierSet mult;
  GroundState gs;
  std::vector<std::string> warnings;
  Solved(int n, double L) : g(make_grid(2, n, L)), mult(p, g) {
    WarningCapture captured;
    gs = solve_ground_state(p, mult);
    warnings = captured.messages;
  }
};

const Solved& canonical() {
  static const Solved s(128, 32.0);
  return s;
}

double relative_l2_distance(const SpectralField& a, const SpectralField& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("canonical ground state converges to a fixed point") {
  const auto& s = canonical();
  CHECK(s.gs.converged);
  CHECK(s.gs.iterations < 200);
  CHECK(s.gs.last_change < 1e-12);
  CHECK(s.gs.euler_lagrange < 1e-8);
  CHECK(std::abs(s.gs.pohozaev.r1) < 1e-5);
  CHECK(std::isfinite(s.gs.pohozaev.r2));
  CHECK(s.gs.q.max_imag() == 0.0);
  CHECK(s.gs.q[s.g.ravel({64, 64, 0})].real() == doctest::Approx(s.gs.q.max_modulus()));
  // The profile decays algebraically, so a 32-wide box still carries a visible edge value.
  CHECK(s.gs.tail_ratio > 1e-8);
  CHECK(s.warnings.size() == 1);
}

TEST_CASE("Pohozaev residuals discriminate") {
  const auto& s = canonical();
  const auto doubled = pohozaev_residuals(s.gs.q * 2.0, s.p, s.mult);
  CHECK(std::abs(doubled.r1) > 10.0 * std::abs(s.gs.pohozaev.r1));

  const auto bump = testing_support::gaussian(s.g, 1.3) * 0.8;
  const auto r = pohozaev_residuals(bump, s.p, s.mult);
  CHECK(std::isfinite(r.r1));
  CHECK(std::isfinite(r.r2));
}

TEST_CASE("sharp constant") {
  const auto& s = canonical();
  const auto [a, b] = cgn_both_ways(s.gs, s.p);
  CHECK(a > 0.0);
  CHECK(b > 0.0);
  CHECK(a == s.gs.cgn_a);
  CHECK(std::abs(a - b) / a < 1e-4);
}

TEST_CASE("threshold pair and its closed forms") {
  const auto& s = canonical();
  const auto& p = s.p;
  const auto& t = s.gs.threshold_report;
  CHECK(t.me_direct > 0.0);
  CHECK(t.grad_direct > 0.0);
  CHECK(t.ratio_expected == doctest::Approx(2.0 * p.gamma / (p.gamma - 2.0 * p.s)));
  CHECK(s.gs.thresholds.me_Q == t.me_direct);

  // Both discrepancies are determined exactly by the two Pohozaev residuals.
  const double r1 = s.gs.pohozaev.r1;
  const double r2 = s.gs.pohozaev.r2;
  const double N = p.N;
  const double D = 4.0 * p.s - p.gamma - (2.0 * N - p.gamma) * r1 + 4.0 * r2;
  const double e_over_m = p.gamma * (1.0 + r1) / (4.0 * D) - 0.25;
  const double me_expected = std::abs(e_over_m / ((p.gamma - 2.0 * p.s) / (2.0 * (4.0 * p.s - p.gamma))) - 1.0);
  const double grad_expected = std::abs((4.0 * p.s - p.gamma) / D - 1.0);
  CHECK(std::abs(t.me_discrepancy - me_expected) < 1e-9);
  CHECK(std::abs(t.grad_discrepancy - grad_expected) < 1e-9);
}

TEST_CASE("solver failure modes") {
  const auto& s = canonical();
  WarningCapture quiet;

  SolverOptions opts;
  opts.max_iter = 2;
  try {
    (void)solve_ground_state(s.p, s.mult, std::nullopt, opts);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK_FALSE(e.partial().converged);
    CHECK(e.partial().iterations == 2);
    CHECK(e.partial().q.size() == s.g.size());
  }

  CHECK_THROWS_AS(solve_ground_state(s.p, s.mult, SpectralField(s.g)), CollapseToZero);
  CHECK_THROWS_AS(solve_ground_state(s.p, s.mult, SpectralField(make_grid(2, 64, 32.0))), ValidationError);
}

TEST_CASE("warm start and seed independence") {
  const auto& s = canonical();
  WarningCapture quiet;

  const auto warm = solve_ground_state(s.p, s.mult, s.gs.q);
  CHECK(warm.iterations <= 3);

  SolverOptions opts;
  opts.seed_width = 2.5;
  const auto other = solve_ground_state(s.p, s.mult, std::nullopt, opts);
  CHECK(relative_l2_distance(other.q, s.gs.q) < 1e-9);
}

TEST_CASE("soliton orbit") {
  const Solved s(64, 32.0);
  CHECK(soliton_orbit_check(s.gs, s.mult, 0.0, 1e-3) == 0.0);
  const double coarse = soliton_orbit_check(s.gs, s.mult, 1.0, 2e-3);
  const double fine = soliton_orbit_check(s.gs, s.mult, 1.0, 1e-3);
  CHECK(fine < 1e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}
