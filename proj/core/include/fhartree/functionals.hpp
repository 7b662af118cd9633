#pragma once

#include <string>

#include "fhartree/field.hpp"
#include "fhartree/multipliers.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

/// Scale-invariant products M^{(s-s_c)/s_c} E and M^{(s-s_c)/s_c} ‖u‖²_{Ḣ^s}.
struct InvariantPair {
  double me = 0.0;
  double grad = 0.0;
};

/// Reference values of the invariant pair at the ground state.
struct Thresholds {
  double me_Q = 0.0;
  double grad_Q = 0.0;
};

enum class Membership { K1, K2, Boundary, Neither };

std::string to_string(Membership m);

struct SetMembership {
  Membership verdict = Membership::Neither;
  double me_ratio = 0.0;
  double grad_ratio = 0.0;
};

inline constexpr double kBoundaryTol = 1e-3;

/// ∫|u|².
double mass(const SpectralField& u);
/// ∫ (W * |u|²) |u|².
double hartree_energy(const SpectralField& u, const MultiplierSet& mult);
/// ½‖u‖²_{Ḣ^s} - ¼ V(u).
double energy(const SpectralField& u, const MultiplierSet& mult);

/// Throws ValidationError on a zero field.
InvariantPair invariant_pair(const SpectralField& u, const PhysParams& p, const MultiplierSet& mult);

/// Boundary when |grad_ratio - 1| < boundary_tol; Neither when me_ratio >= 1;
/// otherwise K1 (grad_ratio < 1) or K2.
SetMembership classify_membership(const InvariantPair& pair, const Thresholds& th,
                                  double boundary_tol = kBoundaryTol);

/// V(v) / (C_GN ‖v‖₂^{(4s-γ)/s} ‖v‖_{Ḣ^s}^{γ/s}). Throws on a zero field.
double gn_ratio(const SpectralField& v, double cgn, const PhysParams& p, const MultiplierSet& mult);

/// λ^{(N-γ+2s)/2} u(λx), evaluated by trigonometric interpolation of u.
/// Points with λx outside the box are set to zero. Requires λ in [1/4, 4];
/// warns when the rescaled profile reaches beyond 80% of the box half-width.
SpectralField scale_solution(const SpectralField& u, double lambda, const PhysParams& p);

struct ComparabilityReport {
  double hs_sq = 0.0;        ///< ‖D^s u‖₂²
  double energy = 0.0;
  double lower = 0.0;        ///< ((γ-2s)/(2γ)) ‖D^s u‖₂²
  double upper = 0.0;        ///< ½ ‖D^s u‖₂²
  double lower_margin = 0.0; ///< energy - lower
  double upper_margin = 0.0; ///< upper - energy
  double coercivity_gap = 0.0;  ///< ‖D^s u‖₂² - (γ/4s) V(u)
  bool holds = false;
};

ComparabilityReport comparability_check(const SpectralField& u, const PhysParams& p,
                                        const MultiplierSet& mult);

}  // namespace fhartree
