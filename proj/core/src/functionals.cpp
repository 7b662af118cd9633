#include "fhartree/functionals.hpp"

#include <cmath>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/log.hpp"

namespace fhartree {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::K1: return "K1";
    case Membership::K2: return "K2";
    case Membership::Boundary: return "Boundary";
    case Membership::Neither: return "Neither";
  }
  return "Neither";
}

double mass(const SpectralField& u) {
  double acc = 0.0;
  for (const auto& v : u.values()) acc += std::norm(v);
  return acc * u.grid().cell_volume();
}

double hartree_energy(const SpectralField& u, const MultiplierSet& mult) {
  const auto pot = hartree_potential(u, mult);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += pot[i].real() * std::norm(u[i]);
  return acc * u.grid().cell_volume();
}

double energy(const SpectralField& u, const MultiplierSet& mult) {
  const double hs = sobolev_norm(u, mult.params().s);
  return 0.5 * hs * hs - 0.25 * hartree_energy(u, mult);
}

InvariantPair invariant_pair(const SpectralField& u, const PhysParams& p, const MultiplierSet& mult) {
  const double m = mass(u);
  if (!(m > 0.0)) throw ValidationError("invariant_pair: zero field has no invariant pair");
  const double weight = std::pow(m, p.mass_exponent());
  const double hs = sobolev_norm(u, p.s);
  const double v = hartree_energy(u, mult);
  return InvariantPair{weight * (0.5 * hs * hs - 0.25 * v), weight * hs * hs};
}

SetMembership classify_membership(const InvariantPair& pair, const Thresholds& th, double boundary_tol) {
  SetMembership out;
  out.me_ratio = pair.me / th.me_Q;
  out.grad_ratio = pair.grad / th.grad_Q;
  if (std::abs(out.grad_ratio - 1.0) < boundary_tol) {
    out.verdict = Membership::Boundary;
  } else if (out.me_ratio >= 1.0) {
    out.verdict = Membership::Neither;
  } else {
    out.verdict = out.grad_ratio < 1.0 ? Membership::K1 : Membership::K2;
  }
  return out;
}

double gn_ratio(const SpectralField& v, double cgn, const PhysParams& p, const MultiplierSet& mult) {
  const double l2 = std::sqrt(mass(v));
  if (!(l2 > 0.0)) throw ValidationError("gn_ratio: zero field");
  const double hs = sobolev_norm(v, p.s);
  const double s = p.s;
  const double g = p.gamma;
  const double bound = cgn * std::pow(l2, (4.0 * s - g) / s) * std::pow(hs, g / s);
  return hartree_energy(v, mult) / bound;
}

namespace {

// Row i holds e^{iξ_k y_i} for the target points y_i = λ x_i, zero outside the box.
std::vector<Complex> interpolation_matrix(const GridSpec& grid, double lambda) {
  const auto n = static_cast<std::size_t>(grid.n);
  std::vector<Complex> E(n * n);
  const double half = 0.5 * grid.L;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = lambda * grid.coordinate(static_cast<int>(i));
    if (y < -half || y >= half) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const int mode = grid.signed_mode(static_cast<int>(k));
      const double xi = grid.wavenumber(static_cast<int>(k));
      // Nyquist column uses cos so a real input stays real.
      E[i * n + k] = mode == -grid.n / 2 ? Complex(std::cos(xi * y), 0.0) : std::polar(1.0, xi * y);
    }
  }
  return E;
}

}  // namespace

SpectralField scale_solution(const SpectralField& u, double lambda, const PhysParams& p) {
  if (!(lambda >= 0.25 && lambda <= 4.0)) {
    throw ValidationError("scale_solution: lambda must lie in [1/4, 4]");
  }
  const auto& grid = u.grid();
  const auto n = static_cast<std::size_t>(grid.n);
  const auto E = interpolation_matrix(grid, lambda);
  auto hat = to_fourier(u);
  std::vector<Complex> data(hat.values().begin(), hat.values().end());
  std::vector<Complex> line(n);

  // Contract each axis in turn: data[..., i, ...] = Σ_k E[i,k] data[..., k, ...].
  for (int axis = 0; axis < grid.N; ++axis) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < grid.N; ++d) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < data.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < n; ++i) {
          Complex acc(0.0, 0.0);
          for (std::size_t k = 0; k < n; ++k) acc += E[i * n + k] * data[base + off + k * stride];
          line[i] = acc;
        }
        for (std::size_t i = 0; i < n; ++i) data[base + off + i * stride] = line[i];
      }
    }
  }

  const double amp = std::pow(lambda, p.scaling_exponent()) * parseval_weight(grid);
  SpectralField out(grid, std::move(data));
  out *= amp;

  const double peak = out.max_modulus();
  double reach = 0.0;
  for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) {
    if (std::abs(out[i]) > 1e-6 * peak) {
      reach = std::max(reach, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    }
  });
  if (reach > 0.8 * 0.5 * grid.L) {
    std::ostringstream msg;
    msg << "scale_solution: rescaled profile reaches radius " << reach << ", beyond 80% of the box half-width "
        << 0.5 * grid.L;
    warn(msg.str());
  }
  return out;
}

ComparabilityReport comparability_check(const SpectralField& u, const PhysParams& p,
                                        const MultiplierSet& mult) {
  ComparabilityReport r;
  const double hs = sobolev_norm(u, p.s);
  const double v = hartree_energy(u, mult);
  r.hs_sq = hs * hs;
  r.energy = 0.5 * r.hs_sq - 0.25 * v;
  r.lower = (p.gamma - 2.0 * p.s) / (2.0 * p.gamma) * r.hs_sq;
  r.upper = 0.5 * r.hs_sq;
  r.lower_margin = r.energy - r.lower;
  r.upper_margin = r.upper - r.energy;
  r.coercivity_gap = r.hs_sq - p.gamma / (4.0 * p.s) * v;
  r.holds = r.lower_margin >= 0.0 && r.upper_margin >= 0.0;
  return r;
}

}  // namespace fhartree
