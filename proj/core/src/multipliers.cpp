#include "fhartree/multipliers.hpp"

#include <cmath>
#include <limits>

#include "fhartree/errors.hpp"

namespace fhartree {

MultiplierSet::MultiplierSet(const PhysParams& params, const GridSpec& grid, bool dealias)
    : params_(params), grid_(grid), dealias_(dealias) {
  if (params.N != grid.N) throw ValidationError("MultiplierSet: parameter and grid dimensions differ");
  xi2_ = grid.xi_squared();
  frac_lap_s_.resize(xi2_.size());
  for (std::size_t i = 0; i < xi2_.size(); ++i) frac_lap_s_[i] = std::pow(xi2_[i], params.s);
  kernel_hat_ = build_hartree_kernel(grid, params.gamma);
  mask_.assign(xi2_.size(), 1.0);
  if (dealias) {
    const double cut = 2.0 / 3.0 * grid.xi_max();
    for_each_mode(grid, [&](std::size_t i, const std::array<double, 3>& k) {
      for (int d = 0; d < grid.N; ++d) {
        if (std::abs(k[static_cast<std::size_t>(d)]) > cut) mask_[i] = 0.0;
      }
    });
  }
}

std::vector<double> MultiplierSet::frac_lap(double alpha) const {
  std::vector<double> out(xi2_.size());
  for (std::size_t i = 0; i < xi2_.size(); ++i) out[i] = std::pow(xi2_[i], alpha);
  return out;
}

std::vector<Complex> MultiplierSet::grad_kernel_hat(int axis) const {
  const auto xi = grid_.xi_component(axis);
  const double nyquist = grid_.wavenumber(grid_.n / 2);
  std::vector<Complex> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    out[i] = xi[i] == nyquist ? Complex(0.0, 0.0) : Complex(0.0, xi[i] * kernel_hat_[i]);
  }
  return out;
}

SpectralField fractional_laplacian(const SpectralField& u, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw ValidationError("fractional_laplacian: order must lie in [0, 2]");
  }
  auto table = u.grid().xi_squared();
  for (auto& v : table) v = std::pow(v, alpha);
  return apply_multiplier(u, std::span<const double>(table));
}

SpectralField linear_propagator(const SpectralField& u, const MultiplierSet& mult, double t) {
  const auto sym = mult.frac_lap_s();
  std::vector<Complex> phase(sym.size());
  for (std::size_t i = 0; i < sym.size(); ++i) phase[i] = std::polar(1.0, -t * sym[i]);
  return apply_multiplier(u, std::span<const Complex>(phase));
}

SpectralField hartree_potential(const SpectralField& u, const MultiplierSet& mult) {
  SpectralField density(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) density[i] = std::norm(u[i]);
  const auto kernel = mult.hartree_kernel_hat();
  SpectralField out;
  if (mult.dealias()) {
    std::vector<double> masked(kernel.begin(), kernel.end());
    const auto mask = mult.dealias_mask();
    for (std::size_t i = 0; i < masked.size(); ++i) masked[i] *= mask[i];
    out = apply_multiplier(density, std::span<const double>(masked));
  } else {
    out = apply_multiplier(density, kernel);
  }
  return real_part(std::move(out));
}

double sobolev_norm(const SpectralField& u, double alpha) {
  const auto hat = to_fourier(u);
  const auto xi2 = u.grid().xi_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < xi2.size(); ++i) {
    const double w = alpha == 0.0 ? 1.0 : std::pow(xi2[i], alpha);
    acc += w * std::norm(hat[i]);
  }
  return std::sqrt(acc * parseval_weight(u.grid()));
}

double lp_norm(const SpectralField& u, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_norm: exponent must be >= 1");
  if (std::isinf(p)) return u.max_modulus();
  double acc = 0.0;
  for (const auto& v : u.values()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * u.grid().cell_volume(), 1.0 / p);
}

}  // namespace fhartree
