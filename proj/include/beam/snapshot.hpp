#pragma once
#include <string>

#include "beam/field.hpp"

namespace beam {

// Binary field snapshot. Layout, all little-endian:
//   magic "BEAM" | format version u32 | n u32 | N u32 | L f64 | flavor u8
// followed by the N^n physical samples in row-major order as f64 (flavor 0, real
// fields) or interleaved re,im f64 pairs (flavor 1). Reading validates the header
// and restores the real tag for flavor 0.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const std::string& path, const Field& f);
Field read_snapshot(const std::string& path);

}  // namespace beam
