#pragma once

#include <cstdint>
#include <filesystem>

#include "vlasov/phase_grid.hpp"

namespace vlasov {

// On-disk layout, little-endian throughout:
//   char[8]  magic "VLSVSNAP"
//   uint32   version (1)
//   uint64   nx, nv
//   float64  L, vmax, time
//   float64  payload[nx * nv], row-major with x as the slow index
struct SnapshotHeader {
  std::uint32_t version;
  std::uint64_t nx;
  std::uint64_t nv;
  double L;
  double vmax;
  double time;
};

struct Snapshot {
  SnapshotHeader header;
  DistributionField field;
};

inline constexpr std::uint32_t snapshot_version = 1;

void save_snapshot(const std::filesystem::path& path, const DistributionField& f, double time);
SnapshotHeader read_snapshot_header(const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);
// Also throws DimensionError if the stored grid differs from `expected`.
Snapshot load_snapshot(const std::filesystem::path& path, const GridSpec& expected);

}  // namespace vlasov
