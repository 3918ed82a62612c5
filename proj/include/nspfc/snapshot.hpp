#pragma once

// NSPFCSNAP v1 binary state files.
//
// Layout (all little-endian):
//   bytes  0..15   magic "NSPFCSNAP\0v1\0\0\0\0"
//   bytes 16..19   u32 dim
//   bytes 20..23   u32 n (samples per dimension)
//   bytes 24..31   f64 box_length
//   bytes 32..39   f64 t
//   then phi real-space samples as f64, row-major, n^dim of them,
//   then the velocity components, each n^dim f64, in component order.
//
// read -> write -> read is byte-identical.

#include <filesystem>

#include "nspfc/model.hpp"

namespace nspfc {

inline constexpr char snapshot_magic[16] = {'N', 'S', 'P', 'F', 'C', 'S', 'N', 'A',
                                            'P', '\0', 'v', '1', '\0', '\0', '\0', '\0'};

void write_snapshot(const State& state, const std::filesystem::path& path);

// Loads onto the provided grid; throws IoError on magic mismatch or
// truncation, ConfigError if the header disagrees with the grid. Both views
// of the loaded fields are consistent on return.
State read_snapshot(const std::filesystem::path& path, const GridPtr& grid);

struct SnapshotHeader {
    int dim = 0;
    int n = 0;
    double box_length = 0.0;
    double t = 0.0;
};

SnapshotHeader peek_snapshot(const std::filesystem::path& path);

} // namespace nspfc
