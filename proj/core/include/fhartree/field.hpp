#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fhartree/grid.hpp"

namespace fhartree {

using Complex = std::complex<double>;

enum class Space { physical, fourier };

/// Complex samples on a periodic grid, tagged with the space they live in.
///
/// Fourier-space values approximate the continuum transform
///   û(ξ) = ∫ e^{-i x·ξ} u(x) dx,
/// i.e. û_k = h^N Σ_j u_j e^{-i ξ_k·x_j}; the inverse carries L^{-N}.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid, Space space = Space::physical);
  SpectralField(const GridSpec& grid, std::vector<Complex> values, Space space = Space::physical);

  /// Samples f(x) at every grid point; f receives std::array<double, 3>.
  template <class F>
  static SpectralField sample(const GridSpec& grid, F&& f) {
    SpectralField out(grid);
    for_each_point(grid, [&](std::size_t idx, const std::array<double, 3>& x) {
      out.values_[idx] = Complex(f(x));
    });
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  Space space() const { return space_; }
  std::size_t size() const { return values_.size(); }

  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  double max_modulus() const;
  double max_imag() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex c);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, Complex c) { return a *= c; }
  friend SpectralField operator*(Complex c, SpectralField a) { return a *= c; }

 private:
  void require_compatible(const SpectralField& other) const;

  GridSpec grid_{};
  std::vector<Complex> values_;
  Space space_ = Space::physical;
};

/// Single home of the discrete Parseval weight: ‖u‖₂² = parseval_weight · Σ_ξ |û(ξ)|².
/// Equals (2π)^{-N} (2π/L)^N = L^{-N}.
double parseval_weight(const GridSpec& grid);

SpectralField to_fourier(const SpectralField& u);
SpectralField to_physical(const SpectralField& u);

/// Discrete inner product ⟨u, v⟩ = h^N Σ conj(u_j) v_j (physical space).
Complex inner_product(const SpectralField& u, const SpectralField& v);
/// h^N-weighted L² norm (physical space).
double l2_norm(const SpectralField& u);

/// Pointwise complex conjugate.
SpectralField conjugate(SpectralField u);
/// Pointwise real part (imaginary part discarded).
SpectralField real_part(SpectralField u);

/// Applies a real Fourier multiplier m(ξ) (table in storage order) to a physical field.
SpectralField apply_multiplier(const SpectralField& u, std::span<const double> multiplier);
/// Complex-multiplier variant.
SpectralField apply_multiplier(const SpectralField& u, std::span<const Complex> multiplier);

/// Spectral partial derivative ∂_axis u (physical in, physical out).
SpectralField partial_derivative(const SpectralField& u, int axis);

}  // namespace fhartree
