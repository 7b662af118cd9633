#pragma once

#include <filesystem>

#include "fhartree/field.hpp"
#include "fhartree/params.hpp"

namespace fhartree {

/// Tag recording the transform normalization of the stored data.
inline constexpr char kConventionTag[] = "fwd:h^N,inv:L^-N";

struct Snapshot {
  PhysParams params;
  SpectralField field;
};

/// Binary layout, little-endian:
///   "FHSNAP01" | u32 N | u32 n | f64 L | f64 s | f64 gamma | 16-byte convention tag |
///   u64 count | count × (f64 re, f64 im), row-major physical values.
void write_snapshot(const std::filesystem::path& path, const SpectralField& u, const PhysParams& p);

/// Throws SnapshotError on a bad magic, tag, size or truncated payload.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace fhartree
