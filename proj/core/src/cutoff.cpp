#include <cmath>

#include "fhartree/diagnostics.hpp"
#include "fhartree/errors.hpp"

namespace fhartree {

namespace {

// Coefficients c5..c9 of Σ c_k (r-1)^k with c0..c4 = 1, 2, 1, 0, 0 such that the
// value and first four derivatives vanish at r = 2.
std::array<double, 5> bridge_coefficients() {
  const double low[5] = {1.0, 2.0, 1.0, 0.0, 0.0};
  double a[5][6] = {};
  for (int j = 0; j < 5; ++j) {
    auto falling = [j](int k) {
      double f = 1.0;
      for (int i = 0; i < j; ++i) f *= (k - i);
      return f;
    };
    for (int k = 5; k <= 9; ++k) a[j][k - 5] = falling(k);
    double rhs = 0.0;
    for (int k = 0; k < 5; ++k) rhs -= low[k] * falling(k);
    a[j][5] = rhs;
  }
  for (int c = 0; c < 5; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    for (int k = 0; k < 6; ++k) std::swap(a[c][k], a[pivot][k]);
    for (int r = 0; r < 5; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 6; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::array<double, 5> out{};
  for (int c = 0; c < 5; ++c) out[static_cast<std::size_t>(c)] = a[c][5] / a[c][c];
  return out;
}

}  // namespace

CutoffPhi::CutoffPhi(const GridSpec& grid, double R) : grid_(grid), R_(R), bridge_(bridge_coefficients()) {
  if (!(R > 0.0)) throw ValidationError("cutoff radius must be positive");
  const int N = grid.N;
  const std::size_t size = grid.size();
  for (int d = 0; d < N; ++d) flow_[static_cast<std::size_t>(d)].assign(size, 0.0);
  hessian_.assign(static_cast<std::size_t>(N * N), std::vector<double>(size, 0.0));
  bilap_.assign(size, 0.0);
  outside_.assign(size, 0.0);

  const double dim = N - 1.0;
  for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < N; ++d) r2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
    const double r = std::sqrt(r2) / R;
    outside_[i] = r > 1.0 ? 1.0 : 0.0;
    if (r <= 1.0) {
      for (int d = 0; d < N; ++d) {
        flow_[static_cast<std::size_t>(d)][i] = 2.0 * x[static_cast<std::size_t>(d)];
        hessian_[static_cast<std::size_t>(d * N + d)][i] = 2.0;
      }
      return;
    }
    if (r >= 2.0) return;
    const auto psi = profile(r);
    std::array<double, 3> e{};
    for (int d = 0; d < N; ++d) e[static_cast<std::size_t>(d)] = x[static_cast<std::size_t>(d)] / (r * R);
    for (int k = 0; k < N; ++k) {
      flow_[static_cast<std::size_t>(k)][i] = R * psi[1] * e[static_cast<std::size_t>(k)];
      for (int l = 0; l < N; ++l) {
        const double ee = e[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(l)];
        hessian_[static_cast<std::size_t>(k * N + l)][i] =
            psi[2] * ee + psi[1] / r * ((k == l ? 1.0 : 0.0) - ee);
      }
    }
    // f = Δφ = ψ'' + (N-1)ψ'/r, then Δ²φ = f'' + (N-1) f'/r.
    const double f1 = psi[3] + dim * (psi[2] / r - psi[1] / (r * r));
    const double f2 = psi[4] + dim * (psi[3] / r - 2.0 * psi[2] / (r * r) + 2.0 * psi[1] / (r * r * r));
    bilap_[i] = f2 + dim * f1 / r;
  });

  double mean = 0.0;
  for (double v : bilap_) mean += v;
  mean /= static_cast<double>(size);
  for (double& v : bilap_) v -= mean;
  bilap_offset_ = mean;
}

std::array<double, 5> CutoffPhi::profile(double r) const {
  if (r <= 1.0) return {r * r, 2.0 * r, 2.0, 0.0, 0.0};
  if (r >= 2.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
  double c[10] = {1.0, 2.0, 1.0, 0.0, 0.0, bridge_[0], bridge_[1], bridge_[2], bridge_[3], bridge_[4]};
  const double t = r - 1.0;
  std::array<double, 5> out{};
  // Horner on each derivative.
  for (int j = 0; j < 5; ++j) {
    double acc = 0.0;
    for (int k = 9; k >= j; --k) {
      double f = 1.0;
      for (int i = 0; i < j; ++i) f *= (k - i);
      acc = acc * t + c[k] * f;
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace fhartree
