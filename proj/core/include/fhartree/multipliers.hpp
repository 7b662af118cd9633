#pragma once

#include <span>
#include <vector>

#include "fhartree/field.hpp"
#include "fhartree/grid.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

/// Fourier-space tables shared by every operator on one (params, grid) pair.
class MultiplierSet {
 public:
  MultiplierSet(const PhysParams& params, const GridSpec& grid, bool dealias = false);

  const PhysParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  bool dealias() const { return dealias_; }

  std::span<const double> xi_squared() const { return xi2_; }
  /// |ξ|^{2s}.
  std::span<const double> frac_lap_s() const { return frac_lap_s_; }
  /// |ξ|^{2α}, computed on demand.
  std::vector<double> frac_lap(double alpha) const;
  /// Ŵ(ξ) for W(x) = |x|^{-γ} on the torus (see build_hartree_kernel).
  std::span<const double> hartree_kernel_hat() const { return kernel_hat_; }
  /// i ξ_axis Ŵ(ξ): transform of ∂_axis W.
  std::vector<Complex> grad_kernel_hat(int axis) const;
  /// Ŵ(0) = Σ_x K(x) h^N, the kernel's total weight on the box.
  double kernel_zero_mode() const { return kernel_hat_.front(); }
  /// 1 inside the 2/3-rule band, 0 outside (all ones unless dealiasing is on).
  std::span<const double> dealias_mask() const { return mask_; }

 private:
  PhysParams params_;
  GridSpec grid_;
  bool dealias_;
  std::vector<double> xi2_;
  std::vector<double> frac_lap_s_;
  std::vector<double> kernel_hat_;
  std::vector<double> mask_;
};

/// Ŵ table for the periodic minimum-image kernel |x|^{-γ}.
///
/// The kernel is split as |x|^{-γ} = S(x) + G(x) with
///   S(x) = |x|^{-γ} Q(γ/2, α²|x|²),   G(x) = |x|^{-γ} P(γ/2, α²|x|²),
/// P/Q the regularized incomplete gamma functions. The singular short-range
/// part S is transformed analytically; the smooth long-range part G is sampled
/// at minimum-image offsets and transformed with the grid DFT. α = sqrt(πn)/L
/// balances the two truncation errors at exp(-πn/4).
/// Throws ValidationError unless 0 < γ < N.
std::vector<double> build_hartree_kernel(const GridSpec& grid, double gamma);

/// Real-space kernel K(x_j) whose grid transform is build_hartree_kernel,
/// stored centered (origin at multi-index n/2). Used for direct-sum checks.
std::vector<double> hartree_kernel_real_space(const GridSpec& grid, double gamma);

/// F^{-1}[|ξ|^{2α} F u]; requires 0 <= α <= 2.
SpectralField fractional_laplacian(const SpectralField& u, double alpha);

/// U(t)u = F^{-1}[e^{-i t |ξ|^{2s}} F u].
SpectralField linear_propagator(const SpectralField& u, const MultiplierSet& mult, double t);

/// W * |u|², returned as a (real-valued) physical field.
SpectralField hartree_potential(const SpectralField& u, const MultiplierSet& mult);

/// (Σ_ξ |ξ|^{2α} |û|² · parseval_weight)^{1/2}; α = 0 gives ‖u‖₂.
double sobolev_norm(const SpectralField& u, double alpha);

/// h^N-weighted discrete L^p norm; p = ∞ gives the max modulus.
double lp_norm(const SpectralField& u, double p);

}  // namespace fhartree
