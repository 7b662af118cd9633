#include "fhartree/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fhartree/errors.hpp"

namespace fhartree {

namespace {

constexpr char kMagic[8] = {'F', 'H', 'S', 'N', 'A', 'P', '0', '1'};
constexpr std::size_t kTagBytes = 16;

template <class T>
void put(std::ostream& os, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& is, const std::filesystem::path& path) {
  char bytes[sizeof(T)];
  if (!is.read(bytes, sizeof(T))) throw SnapshotError("truncated snapshot header: " + path.string());
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& u, const PhysParams& p) {
  if (u.space() != Space::physical) throw SnapshotError("snapshots store physical-space fields only");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot open snapshot for writing: " + path.string());
  const auto& grid = u.grid();
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.N));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n));
  put<double>(os, grid.L);
  put<double>(os, p.s);
  put<double>(os, p.gamma);
  os.write(kConventionTag, kTagBytes);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(u.size()));
  for (const auto& v : u.values()) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw SnapshotError("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot open snapshot: " + path.string());
  char magic[sizeof(kMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw SnapshotError("not a field snapshot (bad magic): " + path.string());
  }
  const auto N = get<std::uint32_t>(is, path);
  const auto n = get<std::uint32_t>(is, path);
  const auto L = get<double>(is, path);
  const auto s = get<double>(is, path);
  const auto gamma = get<double>(is, path);
  char tag[kTagBytes];
  if (!is.read(tag, kTagBytes)) throw SnapshotError("truncated snapshot header: " + path.string());
  if (std::memcmp(tag, kConventionTag, kTagBytes) != 0) {
    throw SnapshotError("snapshot convention tag mismatch: expected '" + std::string(kConventionTag) + "', got '" +
                        std::string(tag, kTagBytes) + "'");
  }
  const auto count = get<std::uint64_t>(is, path);

  GridSpec grid;
  PhysParams params;
  try {
    grid = make_grid(static_cast<int>(N), static_cast<int>(n), L);
    params = PhysParams::make(static_cast<int>(N), s, gamma);
  } catch (const ValidationError& e) {
    throw SnapshotError(std::string("snapshot header is inconsistent: ") + e.what());
  }
  if (count != grid.size()) {
    std::ostringstream msg;
    msg << "snapshot holds " << count << " values but its header implies " << grid.size();
    throw SnapshotError(msg.str());
  }
  std::vector<Complex> values(grid.size());
  for (auto& v : values) {
    const double re = get<double>(is, path);
    const double im = get<double>(is, path);
    v = Complex(re, im);
  }
  return Snapshot{params, SpectralField(grid, std::move(values))};
}

}  // namespace fhartree
