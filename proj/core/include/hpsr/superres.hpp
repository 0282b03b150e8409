// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_SUPERRES_HPP
#define HPSR_SUPERRES_HPP

#include "hpsr/prior.hpp"

namespace hpsr {

// Base-level interpolation. Class-0 points and points whose (c, r) has no
// table entry are directly upscaled to their rounded preimage [p / g]; other
// points emit the candidates selected by their pattern.
VoxelCloud interpolate_base(const VoxelCloud& VK, const LevelKPrior& prior,
                            const Rational& g, const NeighborSet& nbrs);

// Intermediate interpolation. Points whose neighborhood code has no table
// entry are directly upscaled to (2x, 2y, 2z); others emit the children
// selected by their 8-bit pattern. Children with negative coordinates are
// dropped.
VoxelCloud interpolate_intermediate(const VoxelCloud& Vk,
                                    const IntermediatePrior& prior,
                                    const NeighborSet& nbrs);

// Reuses sigma^(1) for kprime extra interpolation passes. The table (and
// with it the set of known codes) stays fixed across iterations.
VoxelCloud extra_sr(const VoxelCloud& V0, const IntermediatePrior& sigma1,
                    int kprime, const NeighborSet& nbrs);

// Returns the cloud to the original grid: multiply by 2^(L+1-K-K').
VoxelCloud final_upscale(const VoxelCloud& V0, const PyramidParams& params);

// The full decoder-side pipeline: base interpolation, K-1 intermediate
// passes, K' reuse passes, final upscale.
VoxelCloud decode_reconstruct(const VoxelCloud& VK, const HierPrior& prior,
                              const PyramidParams& params,
                              const NeighborSet& nbrsK,
                              const NeighborSet& nbrsI);

}  // namespace hpsr

#endif
