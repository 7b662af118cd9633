#include "fhartree/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/fft.hpp"
#include "fhartree/functionals.hpp"
#include "fhartree/log.hpp"

namespace fhartree {

SpectralField auxiliary_field(const SpectralField& u, double m, const PhysParams& p) {
  if (!(m > 0.0)) throw ValidationError("auxiliary_field: m must be positive");
  const double cs = resolvent_normalization(p.s);
  auto table = u.grid().xi_squared();
  for (auto& v : table) v = cs / (v + m);
  return apply_multiplier(u, std::span<const double>(table));
}

namespace {

// Spectral derivative symbols with the Nyquist mode removed, matching partial_derivative.
std::vector<std::vector<double>> derivative_symbols(const GridSpec& grid) {
  std::vector<std::vector<double>> out;
  const double nyquist = grid.wavenumber(grid.n / 2);
  for (int d = 0; d < grid.N; ++d) {
    auto xi = grid.xi_component(d);
    for (auto& v : xi)
      if (v == nyquist) v = 0.0;
    out.push_back(std::move(xi));
  }
  return out;
}

}  // namespace

BalakrishnanResult balakrishnan_check(const SpectralField& u, const PhysParams& p, const QuadratureRule& quad) {
  const auto& grid = u.grid();
  const auto hat = to_fourier(u);
  const auto symbols = derivative_symbols(grid);
  const auto xi2 = grid.xi_squared();
  const double cs2 = std::pow(resolvent_normalization(p.s), 2);
  const double w = parseval_weight(grid);

  // Per-mode weights |∂u|² and the quadrature evaluated mode by mode, summed in node order.
  std::vector<double> grad2(xi2.size(), 0.0);
  for (std::size_t i = 0; i < xi2.size(); ++i) {
    double g = 0.0;
    for (const auto& sym : symbols) g += sym[i] * sym[i];
    grad2[i] = g * std::norm(hat[i]);
  }
  double lhs = 0.0;
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const double m = quad.nodes[k];
    double acc = 0.0;
    for (std::size_t i = 0; i < xi2.size(); ++i) {
      const double d = xi2[i] + m;
      acc += grad2[i] / (d * d);
    }
    lhs += quad.weights[k] * cs2 * acc * w;
  }
  double full = 0.0;
  for (double g : grad2) full += g;
  lhs += quad.upper_tail_weight * cs2 * full * w;

  const double hs = sobolev_norm(u, p.s);
  BalakrishnanResult r;
  r.lhs = lhs;
  r.rhs = p.s * hs * hs;
  r.rel_err = r.rhs > 0.0 ? std::abs(r.lhs - r.rhs) / r.rhs : std::abs(r.lhs);
  return r;
}

double localized_virial(const SpectralField& u, const CutoffPhi& phi) {
  const auto& grid = u.grid();
  double acc = 0.0;
  for (int d = 0; d < grid.N; ++d) {
    const auto du = partial_derivative(u, d);
    const auto& flow = phi.flow(d);
    for (std::size_t i = 0; i < u.size(); ++i) acc += flow[i] * (std::conj(u[i]) * du[i]).imag();
  }
  return 2.0 * acc * grid.cell_volume();
}

VirialRhs virial_rhs(const SpectralField& u, const CutoffPhi& phi, const PhysParams& p, const MultiplierSet& mult,
                     const QuadratureRule& quad) {
  const auto& grid = u.grid();
  if (!(phi.grid() == grid) || !(mult.grid() == grid)) throw ValidationError("virial_rhs: grid mismatch");
  const int N = grid.N;
  const std::size_t size = grid.size();
  const double hN = grid.cell_volume();
  const auto& fft = FourierTransform::for_grid(grid);
  const auto symbols = derivative_symbols(grid);
  const auto xi2 = grid.xi_squared();
  const double cs = resolvent_normalization(p.s);
  const double inv_R2 = 1.0 / (phi.R() * phi.R());

  std::vector<Complex> spec(size);
  fft.forward(u.values().data(), spec.data());
  const double scale = 1.0 / static_cast<double>(size);

  std::vector<Complex> work(size);
  std::vector<std::vector<Complex>> grad(static_cast<std::size_t>(N), std::vector<Complex>(size));
  std::vector<Complex> field(size);

  // Spatial form 4 ∂̄_k v H_kl ∂_l v - R^{-2} Δ²φ |v|² for v with symbol m(ξ) applied to u.
  auto spatial_form = [&](auto&& symbol) {
    for (int d = 0; d < N; ++d) {
      const auto& sym = symbols[static_cast<std::size_t>(d)];
      for (std::size_t i = 0; i < size; ++i) work[i] = spec[i] * Complex(0.0, sym[i] * symbol(i) * scale);
      fft.backward(work.data(), grad[static_cast<std::size_t>(d)].data());
    }
    for (std::size_t i = 0; i < size; ++i) work[i] = spec[i] * (symbol(i) * scale);
    fft.backward(work.data(), field.data());
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
      for (int l = 0; l < N; ++l) {
        const auto& H = phi.hessian(k, l);
        const auto& gk = grad[static_cast<std::size_t>(k)];
        const auto& gl = grad[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < size; ++i) {
          if (H[i] != 0.0) acc += 4.0 * H[i] * (std::conj(gk[i]) * gl[i]).real();
        }
      }
    }
    const auto& bl = phi.bilaplacian();
    for (std::size_t i = 0; i < size; ++i) acc -= inv_R2 * bl[i] * std::norm(field[i]);
    return acc * hN;
  };

  VirialRhs out;
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const double m = quad.nodes[k];
    out.main += quad.weights[k] * spatial_form([&](std::size_t i) { return cs / (xi2[i] + m); });
  }
  out.main += quad.upper_tail_weight * spatial_form([&](std::size_t) { return cs; });

  SpectralField density(grid);
  for (std::size_t i = 0; i < size; ++i) density[i] = std::norm(u[i]);
  double I = 0.0;
  for (int d = 0; d < N; ++d) {
    const auto gk = mult.grad_kernel_hat(d);
    const auto force = apply_multiplier(density, std::span<const Complex>(gk));
    const auto& flow = phi.flow(d);
    for (std::size_t i = 0; i < size; ++i) I += flow[i] * density[i].real() * force[i].real();
  }
  out.I = 2.0 * I * hN;

  const auto& outside = phi.outside();
  auto half = mult.frac_lap(0.5 * p.s);
  const auto ds = apply_multiplier(u, std::span<const double>(half));
  const auto pot = hartree_potential(u, mult);
  double ar = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    if (outside[i] == 0.0) continue;
    ar += std::norm(ds[i]) + inv_R2 * std::norm(u[i]) + pot[i].real() * std::norm(u[i]);
  }
  out.A_R = ar * hN;
  return out;
}

VirialAudit virial_lower_bound_audit(const RunRecord& rec, const GroundState& gs,
                                     const std::vector<VirialRhs>& series) {
  (void)gs;
  VirialAudit a;
  if (series.empty() || rec.hs_series.empty()) return a;
  a.initial = rec.membership_series.front();
  a.min_total = series.front().total();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series[i].total();
    a.min_total = std::min(a.min_total, v);
    if (!(v > 0.0) && a.first_violation < 0) a.first_violation = static_cast<long>(i);
  }
  a.positive = a.first_violation < 0;
  a.empirical_c_delta = a.min_total / rec.hs_series.front();
  return a;
}

double weighted_virial(const SpectralField& u, const PhysParams& p) {
  const auto& grid = u.grid();
  const double limit = 0.4 * grid.L;
  double outside = 0.0;
  double total = 0.0;
  for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) {
    const double w = std::norm(u[i]);
    total += w;
    if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) > limit) outside += w;
  });
  if (total > 0.0 && outside > 1e-8 * total) {
    std::ostringstream msg;
    msg << "weighted_virial: mass fraction " << outside / total << " lies beyond |x| = 0.4 L";
    warn(msg.str());
  }
  double acc = 0.0;
  for (int d = 0; d < grid.N; ++d) {
    SpectralField xu = u;
    const auto x = grid.coordinate_component(d);
    for (std::size_t i = 0; i < xu.size(); ++i) xu[i] *= x[i];
    const double norm = sobolev_norm(xu, 1.0 - p.s);
    acc += norm * norm;
  }
  return acc;
}

std::array<double, 3> quadratic_fit(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 3) {
    throw ValidationError("quadratic_fit: need at least three matching samples");
  }
  // Normal equations in the basis (t², t, 1).
  double a[3][4] = {};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double b[3] = {times[i] * times[i], times[i], 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += b[r] * b[c];
      a[r][3] += b[r] * values[i];
    }
  }
  for (int c = 0; c < 3; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    for (int k = 0; k < 4; ++k) std::swap(a[c][k], a[pivot][k]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

ScatteringProxies scattering_proxies(const RunRecord& rec) {
  ScatteringProxies out;
  if (rec.times.size() < 2) return out;
  out.v_ratio = rec.v_series.back() / rec.v_series.front();
  out.lpc_ratio = rec.lpc_series.back() / rec.lpc_series.front();
  const double t_end = rec.times.back();
  const auto& S = rec.strichartz_series;
  std::size_t q1 = 0;
  while (q1 + 1 < rec.times.size() && rec.times[q1 + 1] <= 0.25 * t_end) ++q1;
  std::size_t q3 = 0;
  while (q3 + 1 < rec.times.size() && rec.times[q3] < 0.75 * t_end) ++q3;
  if (q3 + 1 == rec.times.size() && q3 > 0) --q3;
  if (q1 > 0) out.strichartz_rate_first = (S[q1] - S[0]) / (rec.times[q1] - rec.times[0]);
  out.strichartz_rate_final = (S.back() - S[q3]) / (t_end - rec.times[q3]);
  return out;
}

}  // namespace fhartree
