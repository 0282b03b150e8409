// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PRIOR_HPP
#define HPSR_PRIOR_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "hpsr/pyramid.hpp"

namespace hpsr {

// An interpolation pattern: bit m selects candidate child m for every point
// of one cluster. At the base level the mask uses M_c bits; at intermediate
// levels always 8.
using Pattern = std::uint8_t;

// Base-level prior: per coordinate class c in 1..7, patterns keyed by the
// observed neighborhood codes. Class 0 points reconstruct exactly and carry
// no pattern.
struct LevelKPrior {
  std::array<std::map<std::uint32_t, Pattern>, 8> tables;

  bool empty() const
  {
    for (const auto& t : tables)
      if (!t.empty())
        return false;
    return true;
  }
  std::size_t entry_count() const
  {
    std::size_t n = 0;
    for (const auto& t : tables)
      n += t.size();
    return n;
  }
};

// Intermediate-level prior: 8-bit patterns keyed by the neighborhood codes
// observed on the reconstructed cloud of that level.
struct IntermediatePrior {
  std::map<std::uint32_t, Pattern> table;
};

// The transmitted side information: sigma^(K) plus [sigma^(K-1)..sigma^(1)].
struct HierPrior {
  LevelKPrior levelK;
  std::vector<IntermediatePrior> intermediates;

  friend bool operator==(const HierPrior& a, const HierPrior& b)
  {
    if (a.levelK.tables != b.levelK.tables)
      return false;
    if (a.intermediates.size() != b.intermediates.size())
      return false;
    for (std::size_t i = 0; i < a.intermediates.size(); i++)
      if (a.intermediates[i].table != b.intermediates[i].table)
        return false;
    return true;
  }
  friend bool operator!=(const HierPrior& a, const HierPrior& b)
  {
    return !(a == b);
  }
};

// Candidate children of a base-level point: the Cartesian product of the
// per-axis preimage intervals under g. Index m assigns bit 0 to the first
// axis (in x, y, z order) whose interval has two members, bit 1 to the next,
// and so on; m = 0 is the all-low corner. All candidates are non-negative.
std::vector<Voxel> candidates_levelK(const Voxel& p, int c, const Rational& g);

// Candidate children of an intermediate-level point: the eight voxels
// (2x-1+bx, 2y-1+by, 2z-1+bz) with m = bx + 2*by + 4*bz. A child with a
// negative coordinate keeps its index but can never be occupied or emitted.
std::array<Voxel, 8> candidates_intermediate(const Voxel& p);

inline bool candidate_valid(const Voxel& v)
{
  return v.x >= 0 && v.y >= 0 && v.z >= 0;
}

// Thresholds cluster occupancy frequencies into a pattern: bit m is set iff
// at least half the cluster's candidates m are present in the finer cloud.
Pattern pattern_from_counts(const std::array<std::uint32_t, 8>& present,
                            std::uint32_t cluster_size, int num_candidates);

// sigma^(K): partitions VK by (coord_class, neighborhood code) and counts
// candidate occupancy against VKm1.
LevelKPrior build_levelK_prior(const VoxelCloud& VK, const VoxelCloud& VKm1,
                               const Rational& g, const NeighborSet& nbrs);

// One intermediate table: partitions Vk (a reconstructed cloud) by
// neighborhood code and counts the eight child candidates against the
// original finer cloud.
IntermediatePrior build_intermediate_prior(const VoxelCloud& Vk,
                                           const VoxelCloud& finer,
                                           const NeighborSet& nbrs);

// Closed-loop construction of the whole prior. Each intermediate table is
// keyed by codes of the *reconstructed* cloud of its level, so the decoder
// derives identical keys. Returns the prior together with the encoder-side
// reconstruction of V^(0).
struct HierPriorResult {
  HierPrior prior;
  VoxelCloud recon_v0;
};

HierPriorResult build_hier_prior(const Pyramid& pyr, const NeighborSet& nbrsK,
                                 const NeighborSet& nbrsI);

}  // namespace hpsr

#endif
