#include "fhartree/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/fft.hpp"

namespace fhartree {

SpectralField::SpectralField(const GridSpec& grid, Space space)
    : grid_(grid), values_(grid.size(), Complex(0.0, 0.0)), space_(space) {}

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> values, Space space)
    : grid_(grid), values_(std::move(values)), space_(space) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "field has " << values_.size() << " values but the grid has " << grid_.size() << " points";
    throw ValidationError(msg.str());
  }
}

double SpectralField::max_modulus() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SpectralField::max_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || space_ != other.space_) {
    throw ValidationError("field arithmetic requires matching grids and spaces");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

double parseval_weight(const GridSpec& grid) { return 1.0 / grid.box_volume(); }

namespace {

// (-1)^{k_1+...+k_N}: shifts the DFT phase origin from x=0 to the box corner -L/2.
void apply_checkerboard(const GridSpec& grid, std::span<Complex> v) {
  const auto n = static_cast<std::size_t>(grid.n);
  std::size_t idx = 0;
  if (grid.N == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++idx)
        if ((i + j) & 1U) v[idx] = -v[idx];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k, ++idx)
          if ((i + j + k) & 1U) v[idx] = -v[idx];
  }
}

void require_space(const SpectralField& u, Space s, const char* op) {
  if (u.space() != s) {
    throw ValidationError(std::string(op) + ": field is in the wrong space");
  }
}

}  // namespace

SpectralField to_fourier(const SpectralField& u) {
  require_space(u, Space::physical, "to_fourier");
  const auto& grid = u.grid();
  SpectralField out(grid, Space::fourier);
  FourierTransform::for_grid(grid).forward(u.values().data(), out.values().data());
  apply_checkerboard(grid, out.values());
  const double w = grid.cell_volume();
  for (auto& v : out.values()) v *= w;
  return out;
}

SpectralField to_physical(const SpectralField& u) {
  require_space(u, Space::fourier, "to_physical");
  const auto& grid = u.grid();
  std::vector<Complex> tmp(u.values().begin(), u.values().end());
  apply_checkerboard(grid, tmp);
  SpectralField out(grid, Space::physical);
  FourierTransform::for_grid(grid).backward(tmp.data(), out.values().data());
  const double w = 1.0 / grid.box_volume();
  for (auto& v : out.values()) v *= w;
  return out;
}

Complex inner_product(const SpectralField& u, const SpectralField& v) {
  require_space(u, Space::physical, "inner_product");
  require_space(v, Space::physical, "inner_product");
  if (!(u.grid() == v.grid())) throw ValidationError("inner_product: grid mismatch");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc * u.grid().cell_volume();
}

double l2_norm(const SpectralField& u) {
  double acc = 0.0;
  for (const auto& v : u.values()) acc += std::norm(v);
  return std::sqrt(acc * u.grid().cell_volume());
}

SpectralField conjugate(SpectralField u) {
  for (auto& v : u.values()) v = std::conj(v);
  return u;
}

SpectralField real_part(SpectralField u) {
  for (auto& v : u.values()) v = Complex(v.real(), 0.0);
  return u;
}

namespace {

template <class M>
SpectralField apply_multiplier_impl(const SpectralField& u, std::span<const M> multiplier) {
  require_space(u, Space::physical, "apply_multiplier");
  const auto& grid = u.grid();
  if (multiplier.size() != grid.size()) throw ValidationError("apply_multiplier: table size mismatch");
  const auto& fft = FourierTransform::for_grid(grid);
  std::vector<Complex> spec(grid.size());
  fft.forward(u.values().data(), spec.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= multiplier[i] * scale;
  SpectralField out(grid, Space::physical);
  fft.backward(spec.data(), out.values().data());
  return out;
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& u, std::span<const double> multiplier) {
  return apply_multiplier_impl(u, multiplier);
}

SpectralField apply_multiplier(const SpectralField& u, std::span<const Complex> multiplier) {
  return apply_multiplier_impl(u, multiplier);
}

SpectralField partial_derivative(const SpectralField& u, int axis) {
  const auto xi = u.grid().xi_component(axis);
  std::vector<Complex> mult(xi.size());
  const int half = u.grid().n / 2;
  // The Nyquist mode has no odd counterpart; zero it so real fields stay real.
  const double nyquist = u.grid().wavenumber(half);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    mult[i] = xi[i] == nyquist ? Complex(0.0, 0.0) : Complex(0.0, xi[i]);
  }
  return apply_multiplier(u, std::span<const Complex>(mult));
}

}  // namespace fhartree
