// SPDX-License-Identifier: Apache-2.0
#include "hpsr/voxel.hpp"

#include <algorithm>
#include <cstdlib>

namespace hpsr {

VoxelCloud VoxelCloud::from_unsorted(std::vector<Voxel> pts, int bitdepth)
{
  if (bitdepth < 1 || bitdepth > kMaxBitdepth)
    throw ArgError("bitdepth out of range [1, 21]: "
                   + std::to_string(bitdepth));
  const std::int32_t bound = std::int32_t(1) << bitdepth;
  for (const Voxel& v : pts) {
    if (v.x < 0 || v.y < 0 || v.z < 0 || v.x >= bound || v.y >= bound
        || v.z >= bound)
      throw ArgError("coordinate out of grid [0, 2^"
                     + std::to_string(bitdepth) + ")");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  VoxelCloud cloud;
  cloud.points = std::move(pts);
  cloud.bitdepth = bitdepth;
  return cloud;
}

VoxelSet::VoxelSet(const VoxelCloud& cloud)
{
  reserve(cloud.size());
  for (const Voxel& v : cloud.points)
    insert(pack_voxel(v));
}

void VoxelSet::reserve(std::size_t n)
{
  std::size_t cap = 16;
  while (cap < 2 * n + 1)
    cap <<= 1;
  if (cap <= slots_.size())
    return;
  std::vector<std::uint64_t> old = std::move(slots_);
  slots_.assign(cap, kEmpty);
  mask_ = cap - 1;
  size_ = 0;
  for (std::uint64_t key : old)
    if (key != kEmpty)
      insert(key);
}

void VoxelSet::grow()
{
  reserve(slots_.empty() ? 16 : slots_.size());
}

void VoxelSet::insert(std::uint64_t key)
{
  if (slots_.empty() || 2 * (size_ + 1) > slots_.size())
    grow();
  std::size_t i = mix(key) & mask_;
  while (slots_[i] != kEmpty) {
    if (slots_[i] == key)
      return;
    i = (i + 1) & mask_;
  }
  slots_[i] = key;
  size_++;
}

bool VoxelSet::contains_key(std::uint64_t key) const
{
  if (slots_.empty())
    return false;
  std::size_t i = mix(key) & mask_;
  while (slots_[i] != kEmpty) {
    if (slots_[i] == key)
      return true;
    i = (i + 1) & mask_;
  }
  return false;
}

NeighborSet::NeighborSet(NeighborSetId id) : id_(id)
{
  // Ascending lexicographic by (dz, dy, dx); this order defines the bit
  // weight of each neighbor in the neighborhood code.
  for (int dz = -1; dz <= 1; dz++) {
    for (int dy = -1; dy <= 1; dy++) {
      for (int dx = -1; dx <= 1; dx++) {
        if (dx == 0 && dy == 0 && dz == 0)
          continue;
        int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        bool keep = false;
        switch (id) {
        case NeighborSetId::FACE6: keep = manhattan == 1; break;
        case NeighborSetId::FACE_EDGE18: keep = manhattan <= 2; break;
        case NeighborSetId::FULL26: keep = true; break;
        }
        if (keep)
          offsets_.push_back(Offset{std::int8_t(dx), std::int8_t(dy),
                                    std::int8_t(dz)});
      }
    }
  }
}

const NeighborSet& NeighborSet::get(NeighborSetId id)
{
  static const NeighborSet face6(NeighborSetId::FACE6);
  static const NeighborSet faceEdge18(NeighborSetId::FACE_EDGE18);
  static const NeighborSet full26(NeighborSetId::FULL26);
  switch (id) {
  case NeighborSetId::FACE6: return face6;
  case NeighborSetId::FACE_EDGE18: return faceEdge18;
  case NeighborSetId::FULL26: return full26;
  }
  throw ArgError("unknown neighbor set id");
}

NeighborSet NeighborSet::from_wire(std::uint8_t raw)
{
  switch (raw) {
  case 6: return NeighborSet(NeighborSetId::FACE6);
  case 18: return NeighborSet(NeighborSetId::FACE_EDGE18);
  case 26: return NeighborSet(NeighborSetId::FULL26);
  default:
    throw StreamError("unknown neighbor set id " + std::to_string(raw));
  }
}

}  // namespace hpsr
