// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PLY_IO_HPP
#define HPSR_PLY_IO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpsr/voxel.hpp"

namespace hpsr {

enum class PlyFormat { ASCII, BINARY };

struct PlyCloud {
  std::vector<std::array<double, 3>> positions;
  std::vector<std::array<double, 3>> normals;  // empty when absent

  bool has_normals() const { return !normals.empty(); }
};

// Parses `element vertex` with x/y/z in any float or double property type,
// plus nx/ny/nz when present. Unknown properties and non-vertex elements are
// skipped. Structural problems raise ParseError with a line or byte offset.
PlyCloud read_ply(const std::uint8_t* data, std::size_t size);
PlyCloud read_ply(const std::vector<std::uint8_t>& bytes);
PlyCloud read_ply_file(const std::string& path);

// Vertex-only PLY in canonical point order, coordinates as float32.
std::vector<std::uint8_t> write_ply(const VoxelCloud& cloud, PlyFormat format);
void write_ply_file(const std::string& path, const VoxelCloud& cloud,
                    PlyFormat format);

struct VoxelizeResult {
  VoxelCloud cloud;
  // Affine map back to input coordinates: original = voxel / scale + offset.
  double scale = 1.0;
  std::array<double, 3> offset = {0.0, 0.0, 0.0};
};

// Translates the min corner to the origin, scales uniformly by
// (2^b - 1) / max_extent, rounds half up, dedupes. A zero-extent input
// collapses to a single voxel at the origin.
VoxelizeResult voxelize(const std::vector<std::array<double, 3>>& positions,
                        int bitdepth);

}  // namespace hpsr

#endif
