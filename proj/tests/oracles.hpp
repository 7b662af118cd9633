#pragma once

// Reference computations used by the tests. Nothing here goes through the
// library's transforms or multiplier tables.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "fhartree/field.hpp"
#include "fhartree/grid.hpp"

namespace oracle {

inline double integrate(auto f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

/// (-Δ)^α e^{-|x|²} at radius r in two dimensions:
/// ½ ∫₀^∞ J₀(kr) k^{2α+1} e^{-k²/4} dk.
inline double gaussian_frac_lap_2d(double alpha, double r) {
  auto f = [&](double k) {
    return boost::math::cyl_bessel_j(0, k * r) * std::pow(k, 2.0 * alpha + 1.0) * std::exp(-0.25 * k * k);
  };
  return 0.5 * integrate(f, 0.0, 30.0);
}

/// ‖e^{-|x|²}‖²_{Ḣ^α} in two dimensions: (π/2) ∫₀^∞ k^{2α+1} e^{-k²/2} dk.
inline double gaussian_hdot_sq_2d(double alpha) {
  auto f = [&](double k) { return std::pow(k, 2.0 * alpha + 1.0) * std::exp(-0.5 * k * k); };
  return 0.5 * std::numbers::pi * integrate(f, 0.0, 40.0);
}

/// ∫₀^∞ m^s / (a + m)² dm, integrated in y = ln m where the integrand is smooth
/// and decays like e^{(s+1)y} and e^{(s-1)y} at the two ends.
inline double resolvent_moment(double s, double a) {
  auto f = [&](double y) {
    const double m = std::exp(y);
    return std::pow(m, s + 1.0) / ((a + m) * (a + m));
  };
  const double hi = std::log(a) + 40.0 / (1.0 - s);
  const double tail = std::exp((s - 1.0) * hi) / (1.0 - s);
  return integrate(f, std::log(a) - 40.0, hi) + tail;
}

/// Periodic convolution Σ_j K(x_i - x_j) ρ_j h² on a 2-D grid, by direct summation.
/// kernel is centered: offset (a, b) lives at index ((a + n/2) mod n, (b + n/2) mod n).
inline std::vector<double> direct_convolution_2d(int n, double h, const std::vector<double>& kernel,
                                                 const std::vector<double>& density) {
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  const double cell = h * h;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      double acc = 0.0;
      for (int j0 = 0; j0 < n; ++j0) {
        const int a = ((i0 - j0 + n / 2) % n + n) % n;
        for (int j1 = 0; j1 < n; ++j1) {
          const int b = ((i1 - j1 + n / 2) % n + n) % n;
          acc += kernel[static_cast<std::size_t>(a) * n + b] * density[static_cast<std::size_t>(j0) * n + j1];
        }
      }
      out[static_cast<std::size_t>(i0) * n + i1] = acc * cell;
    }
  }
  return out;
}

inline std::vector<double> density(const fhartree::SpectralField& u) {
  std::vector<double> rho(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rho[i] = std::norm(u[i]);
  return rho;
}

inline double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle

namespace oracle {

/// ‖u‖²_{Ḣ^α} from a direct (non-FFT) evaluation of û(ξ) = h² Σ_j u_j e^{-iξ·x_j}.
inline double direct_hdot_sq_2d(const fhartree::SpectralField& u, double alpha) {
  const auto& g = u.grid();
  const auto x = g.coordinates();
  const auto xi = g.wavenumbers();
  const int n = g.n;
  // Separable: first transform along the fast axis, then along the slow one.
  std::vector<std::complex<double>> partial(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) acc += u[static_cast<std::size_t>(i) * n + j] * std::polar(1.0, -xi[k] * x[j]);
      partial[static_cast<std::size_t>(i) * n + k] = acc * g.h();
    }
  }
  double total = 0.0;
  for (int k0 = 0; k0 < n; ++k0) {
    for (int k1 = 0; k1 < n; ++k1) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n; ++i) acc += partial[static_cast<std::size_t>(i) * n + k1] * std::polar(1.0, -xi[k0] * x[i]);
      acc *= g.h();
      const double xi2 = xi[k0] * xi[k0] + xi[k1] * xi[k1];
      if (xi2 > 0.0) total += std::pow(xi2, alpha) * std::norm(acc);
    }
  }
  return total / (g.L * g.L);
}

/// ∫∫ K(x - y) ρ(x) ρ(y) by direct double summation.
inline double direct_hartree_energy_2d(const fhartree::SpectralField& u, const std::vector<double>& kernel) {
  const auto& g = u.grid();
  const auto rho = density(u);
  const auto pot = direct_convolution_2d(g.n, g.h(), kernel, rho);
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) total += pot[i] * rho[i];
  return total * g.h() * g.h();
}

}  // namespace oracle
