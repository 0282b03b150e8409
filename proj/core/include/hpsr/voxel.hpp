// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_VOXEL_HPP
#define HPSR_VOXEL_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hpsr/error.hpp"

namespace hpsr {

// Coordinates are non-negative grid integers below 2^21, so one voxel packs
// into a single 64-bit key with 21 bits per axis. Packing by (x, y, z) makes
// key order coincide with the canonical point order.
inline constexpr int kMaxBitdepth = 21;
inline constexpr std::int32_t kMaxCoord = (1 << kMaxBitdepth) - 1;

struct Voxel {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  friend bool operator==(const Voxel& a, const Voxel& b)
  {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Voxel& a, const Voxel& b) { return !(a == b); }
  // Canonical order: ascending lexicographic (x, then y, then z).
  friend bool operator<(const Voxel& a, const Voxel& b)
  {
    if (a.x != b.x)
      return a.x < b.x;
    if (a.y != b.y)
      return a.y < b.y;
    return a.z < b.z;
  }
};

inline std::uint64_t pack_voxel(const Voxel& v)
{
  return (std::uint64_t(v.x) << 42) | (std::uint64_t(v.y) << 21)
    | std::uint64_t(v.z);
}

inline Voxel unpack_voxel(std::uint64_t key)
{
  return Voxel{std::int32_t((key >> 42) & kMaxCoord),
               std::int32_t((key >> 21) & kMaxCoord),
               std::int32_t(key & kMaxCoord)};
}

inline bool voxel_packable(const Voxel& v)
{
  return v.x >= 0 && v.y >= 0 && v.z >= 0 && v.x <= kMaxCoord
    && v.y <= kMaxCoord && v.z <= kMaxCoord;
}

// A deduplicated set of voxels on the grid [0, 2^bitdepth)^3, stored in
// canonical order.
struct VoxelCloud {
  std::vector<Voxel> points;
  int bitdepth = 1;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  // Sorts, deduplicates and validates an arbitrary point list.
  static VoxelCloud from_unsorted(std::vector<Voxel> pts, int bitdepth);

  friend bool operator==(const VoxelCloud& a, const VoxelCloud& b)
  {
    return a.bitdepth == b.bitdepth && a.points == b.points;
  }
  friend bool operator!=(const VoxelCloud& a, const VoxelCloud& b)
  {
    return !(a == b);
  }
};

// Insert-only hash set of packed voxel keys (open addressing, power-of-two
// capacity). Membership queries are the hot path of neighborhood coding and
// interpolation; iteration order is never exposed.
class VoxelSet {
public:
  VoxelSet() = default;
  explicit VoxelSet(const VoxelCloud& cloud);

  void reserve(std::size_t n);
  void insert(std::uint64_t key);
  bool contains_key(std::uint64_t key) const;

  bool contains(const Voxel& v) const
  {
    return voxel_packable(v) && contains_key(pack_voxel(v));
  }
  std::size_t size() const { return size_; }

private:
  static constexpr std::uint64_t kEmpty = ~0ULL;

  static std::size_t mix(std::uint64_t key)
  {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdULL;
    key ^= key >> 33;
    key *= 0xc4ceb9fe1a85ec53ULL;
    key ^= key >> 33;
    return static_cast<std::size_t>(key);
  }

  void grow();

  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
};

enum class NeighborSetId : std::uint8_t {
  FACE6 = 6,        // voxels sharing a face
  FACE_EDGE18 = 18, // voxels sharing a face or an edge
  FULL26 = 26,      // the complete 3x3x3 shell
};

struct Offset {
  std::int8_t dx, dy, dz;
};

// Fixed ordered neighbor offsets. The order (ascending lexicographic by
// (dz, dy, dx)) is part of the bitstream contract: the bit weight of each
// neighbor in the neighborhood code is its index here.
class NeighborSet {
public:
  static const NeighborSet& get(NeighborSetId id);
  static NeighborSet from_wire(std::uint8_t raw);

  NeighborSetId id() const { return id_; }
  int size() const { return static_cast<int>(offsets_.size()); }
  const std::vector<Offset>& offsets() const { return offsets_; }

private:
  explicit NeighborSet(NeighborSetId id);

  NeighborSetId id_;
  std::vector<Offset> offsets_;
};

}  // namespace hpsr

#endif
