// SPDX-License-Identifier: Apache-2.0
#include "hpsr/base_codec.hpp"

#include <algorithm>
#include <deque>

#include "hpsr/range_coder.hpp"

namespace hpsr {

namespace {

// One adaptive model per (child index, set bits coded so far in the node
// clamped to 3, depth clamped to 7).
struct ContextTable {
  std::array<BitModel, 8 * 4 * 8> models;

  BitModel& at(int m, int set_bits, int depth)
  {
    int s = std::min(set_bits, 3);
    int d = std::min(depth, 7);
    return models[std::size_t(m) * 32 + std::size_t(s) * 8 + std::size_t(d)];
  }
};

struct EncNode {
  std::size_t begin, end;
  Voxel origin;
  std::int32_t size;
  int depth;
};

// Child index m = bx + 2*by + 4*bz, with b the high-half bit per axis.
// Splits [begin, end) of pts into the eight children, returns child begins
// (children are laid out in ascending m after nested partitioning on z,
// then y, then x).
std::array<std::size_t, 9> partition_children(std::vector<Voxel>& pts,
                                              std::size_t begin,
                                              std::size_t end,
                                              const Voxel& origin,
                                              std::int32_t half)
{
  auto it0 = pts.begin() + begin;
  auto it8 = pts.begin() + end;
  auto z_mid = std::partition(it0, it8, [&](const Voxel& v) {
    return v.z < origin.z + half;
  });
  std::array<std::size_t, 9> bounds{};
  std::array<decltype(it0), 2> zs{it0, z_mid};
  std::array<decltype(it0), 2> ze{z_mid, it8};
  for (int bz = 0; bz < 2; bz++) {
    auto y_mid = std::partition(zs[bz], ze[bz], [&](const Voxel& v) {
      return v.y < origin.y + half;
    });
    std::array<decltype(it0), 2> ys{zs[bz], y_mid};
    std::array<decltype(it0), 2> ye{y_mid, ze[bz]};
    for (int by = 0; by < 2; by++) {
      auto x_mid = std::partition(ys[by], ye[by], [&](const Voxel& v) {
        return v.x < origin.x + half;
      });
      int m = 4 * bz + 2 * by;
      bounds[m] = std::size_t(ys[by] - pts.begin());
      bounds[m + 1] = std::size_t(x_mid - pts.begin());
      bounds[m + 2] = std::size_t(ye[by] - pts.begin());
    }
  }
  return bounds;
}

void write_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v)
{
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 24));
}

std::uint32_t read_u32_le(const std::uint8_t* p)
{
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8)
    | (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> octree_occupancy_bytes(const VoxelCloud& cloud)
{
  if (cloud.empty())
    throw ArgError("empty cloud");
  std::vector<Voxel> pts = cloud.points;
  std::vector<std::uint8_t> bytes;
  std::deque<EncNode> queue;
  queue.push_back(EncNode{0, pts.size(), Voxel{0, 0, 0},
                          std::int32_t(1) << cloud.bitdepth, 0});
  while (!queue.empty()) {
    EncNode node = queue.front();
    queue.pop_front();
    std::int32_t half = node.size / 2;
    auto bounds = partition_children(pts, node.begin, node.end, node.origin,
                                     half);
    std::uint8_t occupancy = 0;
    for (int m = 0; m < 8; m++) {
      if (bounds[m] == bounds[m + 1])
        continue;
      occupancy |= std::uint8_t(1) << m;
      if (half > 1)
        queue.push_back(EncNode{
          bounds[m], bounds[m + 1],
          Voxel{node.origin.x + ((m & 1) ? half : 0),
                node.origin.y + ((m & 2) ? half : 0),
                node.origin.z + ((m & 4) ? half : 0)},
          half, node.depth + 1});
    }
    bytes.push_back(occupancy);
  }
  return bytes;
}

std::vector<std::uint8_t> encode_base(const VoxelCloud& cloud)
{
  if (cloud.empty())
    throw ArgError("empty cloud");
  std::vector<Voxel> pts = cloud.points;

  std::vector<std::uint8_t> out;
  out.push_back(kBaseCoderVersion);
  out.push_back(std::uint8_t(cloud.bitdepth));
  write_u32_le(out, std::uint32_t(cloud.size()));

  ContextTable ctx;
  RangeEncoder rc;
  std::deque<EncNode> queue;
  queue.push_back(EncNode{0, pts.size(), Voxel{0, 0, 0},
                          std::int32_t(1) << cloud.bitdepth, 0});
  while (!queue.empty()) {
    EncNode node = queue.front();
    queue.pop_front();
    std::int32_t half = node.size / 2;
    auto bounds = partition_children(pts, node.begin, node.end, node.origin,
                                     half);
    int set_bits = 0;
    for (int m = 0; m < 8; m++) {
      int bit = bounds[m] != bounds[m + 1];
      rc.encode_bit(ctx.at(m, set_bits, node.depth), bit);
      if (!bit)
        continue;
      set_bits++;
      if (half > 1)
        queue.push_back(EncNode{
          bounds[m], bounds[m + 1],
          Voxel{node.origin.x + ((m & 1) ? half : 0),
                node.origin.y + ((m & 2) ? half : 0),
                node.origin.z + ((m & 4) ? half : 0)},
          half, node.depth + 1});
    }
  }
  std::vector<std::uint8_t> payload = rc.finish();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

VoxelCloud decode_base(const std::uint8_t* data, std::size_t size)
{
  if (size < 6)
    throw StreamError("malformed base stream: truncated header");
  if (data[0] != kBaseCoderVersion)
    throw StreamError("malformed base stream: unsupported coder version "
                      + std::to_string(data[0]));
  int bitdepth = data[1];
  if (bitdepth < 1 || bitdepth > kMaxBitdepth)
    throw StreamError("malformed base stream: bad bitdepth "
                      + std::to_string(bitdepth));
  std::uint32_t count = read_u32_le(data + 2);
  if (count == 0)
    throw StreamError("malformed base stream: zero point count");

  struct DecNode {
    Voxel origin;
    std::int32_t size;
    int depth;
  };

  try {
    ContextTable ctx;
    RangeDecoder rc(data + 6, size - 6);
    std::vector<Voxel> pts;
    pts.reserve(count);
    std::deque<DecNode> queue;
    queue.push_back(DecNode{Voxel{0, 0, 0}, std::int32_t(1) << bitdepth, 0});
    while (!queue.empty()) {
      DecNode node = queue.front();
      queue.pop_front();
      std::int32_t half = node.size / 2;
      int set_bits = 0;
      for (int m = 0; m < 8; m++) {
        if (!rc.decode_bit(ctx.at(m, set_bits, node.depth)))
          continue;
        set_bits++;
        Voxel child{node.origin.x + ((m & 1) ? half : 0),
                    node.origin.y + ((m & 2) ? half : 0),
                    node.origin.z + ((m & 4) ? half : 0)};
        if (half > 1)
          queue.push_back(DecNode{child, half, node.depth + 1});
        else
          pts.push_back(child);
        // Every node of a valid stream holds at least one point and nodes
        // of one level are disjoint, so neither bound can trip on them.
        if (pts.size() > count)
          throw StreamError("malformed base stream: point count overflow");
        if (queue.size() > 2 * std::size_t(count) + 16)
          throw StreamError("malformed base stream: node overflow");
      }
      if (set_bits == 0)
        throw StreamError("malformed base stream: empty occupancy");
    }
    if (pts.size() != count)
      throw StreamError("malformed base stream: point count mismatch");
    if (rc.bytes_consumed() != rc.bytes_total())
      throw StreamError("malformed base stream: length mismatch");
    return VoxelCloud::from_unsorted(std::move(pts), bitdepth);
  } catch (const ArgError& e) {
    throw StreamError(std::string("malformed base stream: ") + e.what());
  }
}

VoxelCloud decode_base(const std::vector<std::uint8_t>& bytes)
{
  return decode_base(bytes.data(), bytes.size());
}

}  // namespace hpsr
