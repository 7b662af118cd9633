#include "fhartree/grid.hpp"

#include <cmath>
#include <sstream>

#include "fhartree/errors.hpp"

namespace fhartree {

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int d = 0; d < N; ++d) total *= static_cast<std::size_t>(n);
  return total;
}

double GridSpec::cell_volume() const { return std::pow(h(), N); }
double GridSpec::box_volume() const { return std::pow(L, N); }

std::vector<double> GridSpec::coordinates() const {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = coordinate(j);
  return x;
}

std::vector<double> GridSpec::wavenumbers() const {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = wavenumber(j);
  return k;
}

std::vector<double> GridSpec::wavenumbers_ascending() const {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = dxi() * (j - n / 2);
  return k;
}

std::vector<double> GridSpec::radius_squared() const {
  std::vector<double> out(size());
  for_each_point(*this, [&](std::size_t i, const std::array<double, 3>& x) {
    out[i] = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  });
  return out;
}

std::vector<double> GridSpec::xi_squared() const {
  std::vector<double> out(size());
  for_each_mode(*this, [&](std::size_t i, const std::array<double, 3>& k) {
    out[i] = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  });
  return out;
}

std::vector<double> GridSpec::coordinate_component(int axis) const {
  std::vector<double> out(size());
  for_each_point(*this, [&](std::size_t i, const std::array<double, 3>& x) {
    out[i] = x[static_cast<std::size_t>(axis)];
  });
  return out;
}

std::vector<double> GridSpec::xi_component(int axis) const {
  std::vector<double> out(size());
  for_each_mode(*this, [&](std::size_t i, const std::array<double, 3>& k) {
    out[i] = k[static_cast<std::size_t>(axis)];
  });
  return out;
}

std::array<int, 3> GridSpec::unravel(std::size_t index) const {
  std::array<int, 3> idx{0, 0, 0};
  const auto nn = static_cast<std::size_t>(n);
  for (int d = N - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = static_cast<int>(index % nn);
    index /= nn;
  }
  return idx;
}

std::size_t GridSpec::ravel(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < N; ++d) {
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
  }
  return flat;
}

GridSpec make_grid(int N, int n, double L) {
  std::ostringstream msg;
  if (N != 2 && N != 3) {
    msg << "grid dimension must be 2 or 3, got " << N;
    throw ValidationError(msg.str());
  }
  if (n < 16 || (n & (n - 1)) != 0) {
    msg << "points per axis must be a power of two >= 16, got " << n;
    throw ValidationError(msg.str());
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    msg << "box length must be positive, got " << L;
    throw ValidationError(msg.str());
  }
  return GridSpec{N, n, L};
}

}  // namespace fhartree
