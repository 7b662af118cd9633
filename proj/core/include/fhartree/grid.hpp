#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

namespace fhartree {

/// Uniform periodic box [-L/2, L/2)^N with n points per axis.
///
/// Storage is row-major with the last axis fastest. Wavenumbers follow FFT
/// order: index j maps to 2πk/L with k = j for j < n/2 and k = j - n otherwise.
struct GridSpec {
  int N = 2;
  int n = 128;
  double L = 32.0;

  double h() const { return L / n; }
  double dxi() const { return 2.0 * std::numbers::pi / L; }
  double xi_max() const { return std::numbers::pi * n / L; }
  std::size_t size() const;
  double cell_volume() const;
  double box_volume() const;

  double coordinate(int j) const { return -0.5 * L + j * h(); }
  int signed_mode(int j) const { return j < n / 2 ? j : j - n; }
  double wavenumber(int j) const { return dxi() * signed_mode(j); }

  /// Per-axis coordinates x_j = -L/2 + j h.
  std::vector<double> coordinates() const;
  /// Per-axis wavenumbers in FFT storage order.
  std::vector<double> wavenumbers() const;
  /// Per-axis wavenumbers in ascending order, {-n/2, ..., n/2-1} times 2π/L.
  std::vector<double> wavenumbers_ascending() const;

  /// Per-point tables.
  std::vector<double> radius_squared() const;
  std::vector<double> xi_squared() const;
  std::vector<double> coordinate_component(int axis) const;
  std::vector<double> xi_component(int axis) const;

  /// Multi-index of a flat index; unused trailing entries are zero.
  std::array<int, 3> unravel(std::size_t index) const;
  std::size_t ravel(const std::array<int, 3>& idx) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Validating constructor: N in {2,3}, n a power of two with n >= 16, L > 0.
GridSpec make_grid(int N, int n, double L);

/// Calls f(flat_index, x) for every grid point, x the physical coordinates.
template <class F>
void for_each_point(const GridSpec& grid, F&& f) {
  const auto n = static_cast<std::size_t>(grid.n);
  std::size_t idx = 0;
  std::array<double, 3> x{0.0, 0.0, 0.0};
  if (grid.N == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      x[0] = grid.coordinate(static_cast<int>(i));
      for (std::size_t j = 0; j < n; ++j, ++idx) {
        x[1] = grid.coordinate(static_cast<int>(j));
        f(idx, x);
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      x[0] = grid.coordinate(static_cast<int>(i));
      for (std::size_t j = 0; j < n; ++j) {
        x[1] = grid.coordinate(static_cast<int>(j));
        for (std::size_t k = 0; k < n; ++k, ++idx) {
          x[2] = grid.coordinate(static_cast<int>(k));
          f(idx, x);
        }
      }
    }
  }
}

/// Calls f(flat_index, ξ) for every Fourier mode in storage order.
template <class F>
void for_each_mode(const GridSpec& grid, F&& f) {
  const auto n = static_cast<std::size_t>(grid.n);
  std::size_t idx = 0;
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  if (grid.N == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      xi[0] = grid.wavenumber(static_cast<int>(i));
      for (std::size_t j = 0; j < n; ++j, ++idx) {
        xi[1] = grid.wavenumber(static_cast<int>(j));
        f(idx, xi);
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      xi[0] = grid.wavenumber(static_cast<int>(i));
      for (std::size_t j = 0; j < n; ++j) {
        xi[1] = grid.wavenumber(static_cast<int>(j));
        for (std::size_t k = 0; k < n; ++k, ++idx) {
          xi[2] = grid.wavenumber(static_cast<int>(k));
          f(idx, xi);
        }
      }
    }
  }
}

}  // namespace fhartree
