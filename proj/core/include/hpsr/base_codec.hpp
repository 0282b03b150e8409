// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_BASE_CODEC_HPP
#define HPSR_BASE_CODEC_HPP

#include <cstdint>
#include <vector>

#include "hpsr/voxel.hpp"

namespace hpsr {

inline constexpr std::uint8_t kBaseCoderVersion = 1;

// Lossless octree coder for the base cloud. Substream layout:
//   [u8 version][u8 bitdepth][u32 LE point count][range-coded payload]
// Occupancy bytes are emitted in breadth-first order; each bit is coded with
// a context of (child index, set bits already coded in the node clamped to 3,
// depth clamped to 7).
std::vector<std::uint8_t> encode_base(const VoxelCloud& cloud);

VoxelCloud decode_base(const std::uint8_t* data, std::size_t size);
VoxelCloud decode_base(const std::vector<std::uint8_t>& bytes);

// The breadth-first occupancy byte sequence before entropy coding. Exposed
// for tests and diagnostics; the encoder codes exactly these bytes.
std::vector<std::uint8_t> octree_occupancy_bytes(const VoxelCloud& cloud);

}  // namespace hpsr

#endif
