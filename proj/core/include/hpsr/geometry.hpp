// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_GEOMETRY_HPP
#define HPSR_GEOMETRY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hpsr/rational.hpp"
#include "hpsr/voxel.hpp"

namespace hpsr {

// Rounds the non-negative rational num/den half-up, in exact integer
// arithmetic: floor((2*num + den) / (2*den)). This single convention is used
// for every scale change in the codec, so encoder and decoder agree by
// construction.
std::int64_t round_half_up(std::int64_t num, std::int64_t den);

// round_half_up(v * g) applied per coordinate.
Voxel scale_round(const Voxel& v, const Rational& g);

// round_half_up(v / g) applied per coordinate.
Voxel scale_round_inverse(const Voxel& v, const Rational& g);

// Neighborhood code: bit n of the result is the occupancy of
// p + offsets[n]. Offsets landing outside the grid count as unoccupied.
std::uint32_t phi(const Voxel& p, const VoxelSet& occupancy,
                  const NeighborSet& nbrs);

// Convenience overload that builds the occupancy set on the fly.
std::uint32_t phi(const Voxel& p, const VoxelCloud& cloud,
                  const NeighborSet& nbrs);

// Codes for every point of `cloud`, in point order.
std::vector<std::uint32_t> neighborhood_codes(const VoxelCloud& cloud,
                                              const NeighborSet& nbrs);

// The set of non-negative integers x with round_half_up(x * g) == X, as a
// closed interval [lo, hi]. For g in [1/2, 1] the interval has one or two
// members, and intervals over consecutive X partition the non-negative
// integers.
struct PreimageInterval {
  std::int32_t lo = 0;
  std::int32_t hi = 0;
  int size() const { return hi - lo + 1; }
};

PreimageInterval preimage_interval(std::int32_t X, const Rational& g);

// Coordinate class: bit 0/1/2 set iff the preimage of x/y/z under g has two
// members. The candidate count for class c is 2^popcount(c).
int coord_class(const Voxel& p, const Rational& g);

// Candidate count of a coordinate class.
inline int class_candidate_count(int c)
{
  return 1 << __builtin_popcount(static_cast<unsigned>(c));
}

// True iff g lies in [1/2, 1]; throws ArgError("invalid fractional factor")
// otherwise. The closed lower bound admits the dyadic case g = 1/2, where
// every off-origin coordinate has the two-member preimage {2X-1, 2X}.
void check_fractional_factor(const Rational& g);

}  // namespace hpsr

#endif
