// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PIPELINE_HPP
#define HPSR_PIPELINE_HPP

#include <cstdint>

#include "hpsr/container.hpp"
#include "hpsr/pyramid.hpp"

namespace hpsr {

struct EncodeConfig {
  Rational q{1, 8};
  int k_max = 2;
  int kprime_max = 2;
  NeighborSetId nbrK = NeighborSetId::FACE_EDGE18;
  NeighborSetId nbrI = NeighborSetId::FACE6;
  PriorMode prior_mode = PriorMode::ENTROPY;
};

struct EncodeStats {
  std::uint64_t header_bits = 0;
  std::uint64_t base_bits = 0;
  std::uint64_t prior_bits = 0;

  std::uint64_t total_bits() const {
    return header_bits + base_bits + prior_bits;
  }
  double bpp(std::size_t point_count) const;
};

struct EncodeResult {
  Container container;
  PyramidParams params;
  // Closed-loop reconstruction at original scale. The decoder reproduces
  // this cloud exactly from the container.
  VoxelCloud recon;
  EncodeStats stats;
};

EncodeResult encode(const VoxelCloud& cloud, const EncodeConfig& cfg);

struct DecodeOptions {
  // Skips the reuse super-resolution stage (forces K' = 0 at decode). Legal
  // for every stream because that stage carries no side information of its
  // own; the final upscale factor grows to compensate.
  bool skip_kprime = false;
};

VoxelCloud decode(const Container& c, const DecodeOptions& opts = {});

// Baseline reconstruction from the same base substream: every refinement
// falls back to pattern-free direct upscale and the reuse stage is skipped,
// so the prior substream is never consulted.
VoxelCloud decode_naive(const Container& c);

}  // namespace hpsr

#endif
