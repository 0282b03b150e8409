// SPDX-License-Identifier: Apache-2.0
#include "hpsr/kdtree.hpp"

#include <algorithm>
#include <limits>

#include "hpsr/error.hpp"

namespace hpsr {

namespace {

std::int32_t coord(const Voxel& v, int axis)
{
  switch (axis) {
  case 0: return v.x;
  case 1: return v.y;
  default: return v.z;
  }
}

}  // namespace

std::int64_t squared_distance(const Voxel& a, const Voxel& b)
{
  std::int64_t dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

KdTree::KdTree(const std::vector<Voxel>& points) : points_(points)
{
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); i++)
    order_[i] = std::uint32_t(i);
  if (!points_.empty())
    root_ = build(0, points_.size(), 0);
}

std::uint32_t KdTree::build(std::size_t begin, std::size_t end, int depth)
{
  Node node{};
  if (end - begin <= kLeafSize) {
    node.leaf = true;
    node.begin = std::uint32_t(begin);
    node.end = std::uint32_t(end);
    node.left = node.right = kNull;
    nodes_.push_back(node);
    return std::uint32_t(nodes_.size() - 1);
  }
  // Split on the axis of largest spread, at the median.
  std::int32_t lo[3], hi[3];
  for (int a = 0; a < 3; a++) {
    lo[a] = std::numeric_limits<std::int32_t>::max();
    hi[a] = std::numeric_limits<std::int32_t>::min();
  }
  for (std::size_t i = begin; i < end; i++) {
    const Voxel& v = points_[order_[i]];
    for (int a = 0; a < 3; a++) {
      lo[a] = std::min(lo[a], coord(v, a));
      hi[a] = std::max(hi[a], coord(v, a));
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; a++)
    if (hi[a] - lo[a] > hi[axis] - lo[axis])
      axis = a;

  std::size_t mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     return coord(points_[a], axis) < coord(points_[b], axis);
                   });
  node.axis = std::uint8_t(axis);
  node.split = coord(points_[order_[mid]], axis);
  node.leaf = false;
  node.begin = node.end = 0;
  nodes_.push_back(node);
  std::uint32_t self = std::uint32_t(nodes_.size() - 1);
  std::uint32_t left = build(begin, mid, depth + 1);
  std::uint32_t right = build(mid, end, depth + 1);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

// Fixed-capacity best list ordered by (distance, index); a capacity of one
// serves nearest(), larger capacities serve knearest().
struct KdTree::Best {
  std::vector<std::pair<std::int64_t, std::size_t>> heap;  // max-heap
  std::size_t capacity;

  explicit Best(std::size_t cap) : capacity(cap) { heap.reserve(cap); }

  std::int64_t worst() const
  {
    return heap.size() < capacity ? std::numeric_limits<std::int64_t>::max()
                                  : heap.front().first;
  }

  void offer(std::int64_t d, std::size_t idx)
  {
    std::pair<std::int64_t, std::size_t> entry{d, idx};
    if (heap.size() < capacity) {
      heap.push_back(entry);
      std::push_heap(heap.begin(), heap.end());
      return;
    }
    if (entry < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = entry;
      std::push_heap(heap.begin(), heap.end());
    }
  }
};

void KdTree::search(std::uint32_t idx, const Voxel& p, Best& best) const
{
  const Node& node = nodes_[idx];
  if (node.leaf) {
    for (std::uint32_t i = node.begin; i < node.end; i++) {
      std::size_t pt = order_[i];
      best.offer(squared_distance(p, points_[pt]), pt);
    }
    return;
  }
  std::int64_t diff = std::int64_t(coord(p, node.axis)) - node.split;
  std::uint32_t near = diff < 0 ? node.left : node.right;
  std::uint32_t far = diff < 0 ? node.right : node.left;
  search(near, p, best);
  if (diff * diff <= best.worst())
    search(far, p, best);
}

std::size_t KdTree::nearest(const Voxel& p) const
{
  if (points_.empty())
    throw ArgError("nearest neighbor query on an empty tree");
  Best best(1);
  search(root_, p, best);
  return best.heap.front().second;
}

std::vector<std::size_t> KdTree::knearest(const Voxel& p, std::size_t k) const
{
  Best best(std::min(k, points_.size()));
  if (best.capacity > 0)
    search(root_, p, best);
  std::sort(best.heap.begin(), best.heap.end());
  std::vector<std::size_t> out;
  out.reserve(best.heap.size());
  for (const auto& [d, i] : best.heap)
    out.push_back(i);
  return out;
}

}  // namespace hpsr
