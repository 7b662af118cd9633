#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fhartree/errors.hpp"
#include "fhartree/field.hpp"
#include "fhartree/grid.hpp"
#include "fhartree/multipliers.hpp"
#include "fhartree/params.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fhartree;
using testing_support::gaussian;
using testing_support::max_abs_diff;

namespace {

SpectralField plane_wave(const GridSpec& grid, int k0, int k1) {
  return SpectralField::sample(grid, [&](const auto& x) {
    return std::exp(Complex(0.0, grid.dxi() * (k0 * x[0] + k1 * x[1])));
  });
}

}  // namespace

TEST_CASE("grid spacing, wavenumbers and size") {
  const auto g = make_grid(2, 16, 2.0 * std::numbers::pi);
  CHECK(g.dxi() == doctest::Approx(1.0));
  const auto xi = g.wavenumbers_ascending();
  REQUIRE(xi.size() == 16);
  CHECK(xi.front() == doctest::Approx(-8.0));
  CHECK(xi.back() == doctest::Approx(7.0));

  CHECK(make_grid(2, 64, 32.0).h() == doctest::Approx(0.5));
  CHECK(make_grid(3, 32, 16.0).size() == 32768);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(1, 64, 1.0), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 48, 1.0), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 8, 1.0), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 64, -1.0), ValidationError);
}

TEST_CASE("transform round trip and Parseval weight") {
  const auto g = make_grid(2, 32, 10.0);
  const auto u = gaussian(g, 0.8, 0.4, -0.7) * Complex(0.3, 1.1);
  const auto uh = to_fourier(u);
  CHECK(max_abs_diff(to_physical(uh), u) < 1e-14);

  double spectral = 0.0;
  for (const auto& c : uh.values()) spectral += std::norm(c);
  const double norm_sq = l2_norm(u) * l2_norm(u);
  CHECK(spectral * parseval_weight(g) == doctest::Approx(norm_sq).epsilon(1e-13));
  CHECK(parseval_weight(g) == doctest::Approx(1.0 / 100.0));

  // The zero mode is the integral.
  const Complex integral = Complex(0.3, 1.1) * (std::numbers::pi * 0.64);
  CHECK(std::abs(uh[0] - integral) < 1e-10 * std::abs(integral));
}

TEST_CASE("fractional Laplacian: plane waves and constants") {
  const auto g = make_grid(2, 32, 8.0);
  const auto u = plane_wave(g, 3, -2);
  const double k2 = g.dxi() * g.dxi() * 13.0;
  for (double alpha : {0.3, 0.7, 1.0, 1.6}) {
    const auto out = fractional_laplacian(u, alpha);
    const double eig = std::pow(k2, alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(out[i] - eig * u[i]) / eig);
    CHECK(worst < 1e-12);
  }

  const auto c = SpectralField::sample(g, [](const auto&) { return 2.5; });
  CHECK(fractional_laplacian(c, 0.7).max_modulus() < 1e-13);
  CHECK_THROWS_AS(fractional_laplacian(c, 2.5), ValidationError);
}

TEST_CASE("fractional Laplacian of a Gaussian matches the radial quadrature") {
  const auto g = make_grid(2, 512, 128.0);
  const auto out = fractional_laplacian(gaussian(g), 0.7);
  const int c = g.n / 2;
  const int offsets[5][2] = {{0, 0}, {1, 0}, {2, 1}, {2, 2}, {3, 0}};
  for (const auto& o : offsets) {
    const double x = o[0] * g.h();
    const double y = o[1] * g.h();
    const double expected = oracle::gaussian_frac_lap_2d(0.7, std::hypot(x, y));
    const auto idx = g.ravel({c + o[0], c + o[1], 0});
    CAPTURE(x);
    CAPTURE(y);
    CHECK(oracle::relative(out[idx].real(), expected) < 1e-6);
    CHECK(std::abs(out[idx].imag()) < 1e-12);
  }
}

TEST_CASE("linear propagator") {
  const auto p = canonical_params();
  const auto g = make_grid(2, 32, 8.0);
  const MultiplierSet mult(p, g);
  const auto u = gaussian(g, 1.0, 0.5, 0.0) * Complex(1.0, 0.5);

  CHECK(max_abs_diff(linear_propagator(u, mult, 0.0), u) < 1e-15);

  const auto back = linear_propagator(linear_propagator(u, mult, 0.37), mult, -0.37);
  CHECK(max_abs_diff(back, u) / u.max_modulus() < 1e-13);

  const auto w = plane_wave(g, 2, 1);
  const double t = 0.8;
  const Complex phase = std::exp(Complex(0.0, -t * std::pow(5.0 * g.dxi() * g.dxi(), p.s)));
  const auto out = linear_propagator(w, mult, t);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(out[i] - phase * w[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("Hartree kernel") {
  const auto p = canonical_params();
  const auto g = make_grid(2, 32, 8.0);

  SUBCASE("constant density gives a constant potential") {
    const MultiplierSet mult(p, g);
    const auto one = SpectralField::sample(g, [](const auto&) { return 1.0; });
    const auto pot = hartree_potential(one, mult);
    for (std::size_t i = 0; i < pot.size(); ++i) {
      CHECK(pot[i].real() == doctest::Approx(mult.kernel_zero_mode()).epsilon(1e-12));
    }
  }

  SUBCASE("kernel concentrates at the zero mode for small exponents") {
    const auto table = build_hartree_kernel(g, 0.02);
    double total = 0.0;
    for (double w : table) total += w * w;
    CHECK(table[0] * table[0] / total > 0.99);
  }

  SUBCASE("exponent outside (0, N)") {
    CHECK_THROWS_AS(build_hartree_kernel(g, 2.0), ValidationError);
    CHECK_THROWS_AS(build_hartree_kernel(g, 0.0), ValidationError);
  }

  SUBCASE("real-space table carries the zero-mode weight") {
    const MultiplierSet mult(p, g);
    const auto real_table = hartree_kernel_real_space(g, p.gamma);
    double total = 0.0;
    for (double k : real_table) total += k * g.cell_volume();
    CHECK(total == doctest::Approx(mult.kernel_zero_mode()).epsilon(1e-12));
  }
}

TEST_CASE("Hartree potential matches a direct periodic sum") {
  const auto p = canonical_params();
  const auto g = make_grid(2, 32, 8.0);
  const MultiplierSet mult(p, g);
  const auto kernel = hartree_kernel_real_space(g, p.gamma);

  auto compare = [&](const SpectralField& u) {
    const auto pot = hartree_potential(u, mult);
    const auto ref = oracle::direct_convolution_2d(g.n, g.h(), kernel, oracle::density(u));
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(pot[i].real() - ref[i]));
      scale = std::max(scale, std::abs(ref[i]));
    }
    return worst / scale;
  };

  SUBCASE("compactly supported density") {
    const auto bump = SpectralField::sample(g, [](const auto& x) {
      const double r2 = (x[0] - 0.3) * (x[0] - 0.3) + x[1] * x[1];
      return r2 < 4.0 ? std::pow(1.0 - r2 / 4.0, 3) : 0.0;
    });
    CHECK(compare(bump) < 1e-10);
  }
  SUBCASE("Gaussian") { CHECK(compare(gaussian(g, 0.9)) < 1e-10); }
}

TEST_CASE("Hartree potential: zero field and radial symmetry") {
  const auto p = canonical_params();
  const auto g = make_grid(2, 64, 16.0);
  const MultiplierSet mult(p, g);
  CHECK(hartree_potential(SpectralField(g), mult).max_modulus() == 0.0);

  const auto pot = hartree_potential(gaussian(g, 1.5), mult);
  const double peak = pot.max_modulus();
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double v = pot[g.ravel({i, j, 0})].real();
      worst = std::max(worst, std::abs(v - pot[g.ravel({j, i, 0})].real()));
      worst = std::max(worst, std::abs(v - pot[g.ravel({(g.n - i) % g.n, j, 0})].real()));
    }
  }
  CHECK(worst < 1e-10 * peak);
}

TEST_CASE("homogeneous Sobolev norm") {
  const auto g = make_grid(2, 32, 8.0);
  CHECK(sobolev_norm(SpectralField(g), 0.7) == 0.0);

  auto w = plane_wave(g, 1, 2);
  w *= Complex(1.0 / l2_norm(w));
  const double k = std::sqrt(5.0) * g.dxi();
  CHECK(sobolev_norm(w, 0.7) == doctest::Approx(std::pow(k, 0.7)).epsilon(1e-12));
  CHECK(sobolev_norm(w, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("homogeneous Sobolev norm of a Gaussian matches the quadrature oracle") {
  const auto g = make_grid(2, 1024, 256.0);
  const auto u = gaussian(g);
  const double expected = std::sqrt(oracle::gaussian_hdot_sq_2d(0.7));
  CHECK(oracle::relative(sobolev_norm(u, 0.7), expected) < 1e-6);
}

TEST_CASE("Lebesgue norms") {
  const auto g = make_grid(2, 128, 32.0);
  CHECK(lp_norm(SpectralField(g), 3.0) == 0.0);

  const auto c = SpectralField::sample(g, [](const auto&) { return -1.5; });
  CHECK(lp_norm(c, 4.0) == doctest::Approx(1.5 * std::pow(32.0, 0.5)).epsilon(1e-13));
  CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(1.5));

  CHECK(std::abs(lp_norm(gaussian(g), 4.0) - std::pow(std::numbers::pi / 4.0, 0.25)) < 1e-8);
  CHECK_THROWS_AS(lp_norm(c, 0.5), ValidationError);
}
