// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_KDTREE_HPP
#define HPSR_KDTREE_HPP

#include <cstdint>
#include <vector>

#include "hpsr/voxel.hpp"

namespace hpsr {

// Exact nearest-neighbor search over voxel coordinates. Axis-median splits,
// branch-and-bound descent; distances are exact in int64 arithmetic.
class KdTree {
public:
  explicit KdTree(const std::vector<Voxel>& points);

  std::size_t size() const { return points_.size(); }

  // Index of an exact nearest neighbor of p (ties broken arbitrarily).
  // Precondition: non-empty tree.
  std::size_t nearest(const Voxel& p) const;

  // Indices of the k exact nearest neighbors, nearest first. Returns fewer
  // than k when the tree is smaller.
  std::vector<std::size_t> knearest(const Voxel& p, std::size_t k) const;

  const Voxel& point(std::size_t i) const { return points_[i]; }

private:
  struct Node {
    std::int32_t split;
    std::uint32_t left, right;  // kNull when absent
    std::uint32_t begin, end;   // leaf payload range in order_
    std::uint8_t axis;
    bool leaf;
  };
  static constexpr std::uint32_t kNull = 0xffffffffu;
  static constexpr std::size_t kLeafSize = 8;

  std::uint32_t build(std::size_t begin, std::size_t end, int depth);

  struct Best;
  void search(std::uint32_t node, const Voxel& p, Best& best) const;

  std::vector<Voxel> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = kNull;
};

std::int64_t squared_distance(const Voxel& a, const Voxel& b);

}  // namespace hpsr

#endif
