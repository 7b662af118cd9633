#pragma once

namespace fhartree {

/// Physical parameters of i u_t - (-Δ)^s u + (|x|^{-γ} * |u|^2) u = 0.
///
/// Only (N, s, γ) are stored; every derived exponent is recomputed on demand.
struct PhysParams {
  int N = 2;
  double s = 0.7;
  double gamma = 1.6;

  /// Validating constructor: N in {2,3}, 0 < s < 1, 2s < γ < min(N, 4s).
  static PhysParams make(int N, double s, double gamma);

  /// Critical Sobolev index (γ - 2s)/2.
  double s_c() const { return 0.5 * (gamma - 2.0 * s); }
  /// Critical Lebesgue exponent 2N/(N - γ + 2s).
  double p_c() const { return 2.0 * N / (N - gamma + 2.0 * s); }
  /// Strichartz exponent (2N + 4s)/(N + 2s - γ); also the spatial exponent r_c.
  double q_c() const { return (2.0 * N + 4.0 * s) / (N + 2.0 * s - gamma); }
  /// Exponent (s - s_c)/s_c carried by the mass in the scale-invariant products.
  double mass_exponent() const { return (s - s_c()) / s_c(); }
  /// Exponent (N - γ + 2s)/2 of the amplitude under the scaling symmetry.
  double scaling_exponent() const { return 0.5 * (N - gamma + 2.0 * s); }

  /// s >= N/(2N-1), required before a scattering prediction is made.
  bool scattering_hypothesis() const { return s >= N / (2.0 * N - 1.0); }

  void validate() const;

  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

/// N=2, s=0.7, γ=1.6 (s_c = 0.1, mass exponent 6).
PhysParams canonical_params();

}  // namespace fhartree
