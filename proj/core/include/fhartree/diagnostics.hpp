#pragma once

#include <array>
#include <vector>

#include "fhartree/evolution.hpp"
#include "fhartree/field.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/multipliers.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

/// Nodes and weights for ∫₀^∞ m^s f(m) dm.
///
/// m = e^y with composite 10-point Gauss–Legendre panels on [ln m_min, ln m_max].
/// Integrands here behave like C m^{-2} for m ≫ |ξ|², so the piece beyond
/// m_max is added analytically: upper_tail_weight · lim_{m→∞} m² f(m).
struct QuadratureRule {
  double s = 0.0;
  double m_min = 1e-6;
  double m_max = 1e6;
  std::vector<double> nodes;
  std::vector<double> weights;
  double upper_tail_weight = 0.0;

  /// node_count is rounded up to a multiple of 10.
  static QuadratureRule make(double s, int node_count = 200, double m_min = 1e-6, double m_max = 1e6);
};

/// c_s = sqrt(sin(πs)/π).
double resolvent_normalization(double s);

/// Radial cutoff ψ(r) = r² on [0,1], 0 on [2,∞), joined by the degree-9 polynomial
/// that keeps ψ C⁴. Tables are evaluated at x/R on a grid.
class CutoffPhi {
 public:
  CutoffPhi(const GridSpec& grid, double R);

  /// ψ and its first four derivatives at r.
  std::array<double, 5> profile(double r) const;

  double R() const { return R_; }
  const GridSpec& grid() const { return grid_; }
  /// Components of R ∇φ(x/R).
  const std::vector<double>& flow(int axis) const { return flow_[static_cast<std::size_t>(axis)]; }
  /// ∂²_{kl}φ at x/R, derivatives in the scaled variable; index k*N + l.
  const std::vector<double>& hessian(int k, int l) const {
    return hessian_[static_cast<std::size_t>(k * grid_.N + l)];
  }
  /// Δ²φ at x/R, projected to zero mean on the grid.
  const std::vector<double>& bilaplacian() const { return bilap_; }
  /// Mean removed from the raw Δ²φ table.
  double bilaplacian_offset() const { return bilap_offset_; }
  /// 1 where |x| > R.
  const std::vector<double>& outside() const { return outside_; }

 private:
  GridSpec grid_;
  double R_;
  std::array<double, 5> bridge_{};  // coefficients c5..c9 of (r-1)^k
  std::array<std::vector<double>, 3> flow_;
  std::vector<std::vector<double>> hessian_;
  std::vector<double> bilap_;
  double bilap_offset_ = 0.0;
  std::vector<double> outside_;
};

/// u_m = c_s (-Δ + m)^{-1} u.
SpectralField auxiliary_field(const SpectralField& u, double m, const PhysParams& p);

struct BalakrishnanResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

/// ∫₀^∞ m^s ‖∇u_m‖₂² dm against s‖u‖²_{Ḣ^s}.
BalakrishnanResult balakrishnan_check(const SpectralField& u, const PhysParams& p, const QuadratureRule& quad);

/// 2 Im ∫ ū R∇φ(x/R)·∇u dx.
double localized_virial(const SpectralField& u, const CutoffPhi& phi);

struct VirialRhs {
  double main = 0.0;  ///< m-integral of the Hessian and Δ²φ terms
  double I = 0.0;     ///< Hartree contribution
  double A_R = 0.0;   ///< remainder magnitude with unit constant
  double total() const { return main + I; }
};

VirialRhs virial_rhs(const SpectralField& u, const CutoffPhi& phi, const PhysParams& p, const MultiplierSet& mult,
                     const QuadratureRule& quad);

struct VirialAudit {
  bool positive = true;
  long first_violation = -1;
  double min_total = 0.0;
  double empirical_c_delta = 0.0;  ///< min(main + I) / ‖D^s u0‖₂²
  Membership initial = Membership::Neither;
};

/// For K1 runs checks main + I > 0 at every sample and reports the empirical constant.
VirialAudit virial_lower_bound_audit(const RunRecord& rec, const GroundState& gs,
                                     const std::vector<VirialRhs>& series);

/// Σ_j Re⟨x_j u, (-Δ)^{1-s}(x_j u)⟩, the box-centred weighted functional.
/// Warns when more than 1e-8 of the mass lies beyond |x| = 0.4 L.
double weighted_virial(const SpectralField& u, const PhysParams& p);

/// Least-squares quadratic a t² + b t + c through (times, values); returns {a, b, c}.
std::array<double, 3> quadratic_fit(const std::vector<double>& times, const std::vector<double>& values);

struct ScatteringProxies {
  double v_ratio = 0.0;    ///< V(u(t_end)) / V(u0)
  double lpc_ratio = 0.0;  ///< ‖u(t_end)‖_{p_c} / ‖u0‖_{p_c}
  double strichartz_rate_first = 0.0;  ///< growth rate of the accumulated norm over the first quarter
  double strichartz_rate_final = 0.0;  ///< and over the final quarter
};

ScatteringProxies scattering_proxies(const RunRecord& rec);

}  // namespace fhartree
