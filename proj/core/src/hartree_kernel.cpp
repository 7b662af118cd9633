#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/multipliers.hpp"

namespace fhartree {

namespace {

// γ_low(a, z) / z^a, finite at z = 0 where it equals 1/a.
double lower_gamma_ratio(double a, double z) {
  if (z < 1.0) {
    double term = 1.0;
    double sum = 1.0 / a;
    for (int k = 1; k < 60; ++k) {
      term *= -z / k;
      const double add = term / (a + k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return boost::math::tgamma_lower(a, z) / std::pow(z, a);
}

double splitting_parameter(const GridSpec& grid) {
  return std::sqrt(std::numbers::pi * grid.n) / grid.L;
}

}  // namespace

std::vector<double> build_hartree_kernel(const GridSpec& grid, double gamma) {
  if (!(gamma > 0.0 && gamma < grid.N)) {
    std::ostringstream msg;
    msg << "Hartree exponent must satisfy 0 < gamma < N, got gamma=" << gamma << ", N=" << grid.N;
    throw ValidationError(msg.str());
  }
  const int N = grid.N;
  const double alpha = splitting_parameter(grid);
  const double a = 0.5 * (N - gamma);
  const double g_half = std::tgamma(0.5 * gamma);

  // Smooth long-range part, sampled and transformed on the grid.
  const double at_origin = std::pow(alpha, gamma) / std::tgamma(0.5 * gamma + 1.0);
  auto long_range = SpectralField::sample(grid, [&](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 == 0.0) return at_origin;
    return std::pow(r2, -0.5 * gamma) * boost::math::gamma_p(0.5 * gamma, alpha * alpha * r2);
  });
  const auto long_hat = to_fourier(long_range);

  // Singular short-range part, transformed analytically.
  const double prefactor = std::pow(std::numbers::pi, 0.5 * N) * std::pow(alpha, gamma - N) / g_half;
  const auto xi2 = grid.xi_squared();
  std::vector<double> out(xi2.size());
  for (std::size_t i = 0; i < xi2.size(); ++i) {
    const double z = xi2[i] / (4.0 * alpha * alpha);
    out[i] = prefactor * lower_gamma_ratio(a, z) + long_hat[i].real();
  }
  return out;
}

std::vector<double> hartree_kernel_real_space(const GridSpec& grid, double gamma) {
  const auto hat = build_hartree_kernel(grid, gamma);
  SpectralField f(grid, Space::fourier);
  for (std::size_t i = 0; i < hat.size(); ++i) f[i] = hat[i];
  const auto phys = to_physical(f);
  std::vector<double> out(phys.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = phys[i].real();
  return out;
}

}  // namespace fhartree
