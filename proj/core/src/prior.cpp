// SPDX-License-Identifier: Apache-2.0
#include "hpsr/prior.hpp"

#include "hpsr/parallel.hpp"
#include "hpsr/superres.hpp"

namespace hpsr {

std::vector<Voxel> candidates_levelK(const Voxel& p, int c, const Rational& g)
{
  PreimageInterval ix = preimage_interval(p.x, g);
  PreimageInterval iy = preimage_interval(p.y, g);
  PreimageInterval iz = preimage_interval(p.z, g);
  // Bit j of m drives the j-th axis (in x, y, z order) whose interval has
  // two members; single-member axes are pinned to their only value.
  int bits = 0;
  int shift_x = -1, shift_y = -1, shift_z = -1;
  if (ix.size() == 2)
    shift_x = bits++;
  if (iy.size() == 2)
    shift_y = bits++;
  if (iz.size() == 2)
    shift_z = bits++;
  (void)c;
  std::vector<Voxel> out;
  out.reserve(std::size_t(1) << bits);
  for (int m = 0; m < (1 << bits); m++) {
    Voxel v;
    v.x = ix.lo + (shift_x >= 0 ? (m >> shift_x) & 1 : 0);
    v.y = iy.lo + (shift_y >= 0 ? (m >> shift_y) & 1 : 0);
    v.z = iz.lo + (shift_z >= 0 ? (m >> shift_z) & 1 : 0);
    out.push_back(v);
  }
  return out;
}

std::array<Voxel, 8> candidates_intermediate(const Voxel& p)
{
  std::array<Voxel, 8> out;
  for (int m = 0; m < 8; m++)
    out[m] = Voxel{2 * p.x - 1 + (m & 1), 2 * p.y - 1 + ((m >> 1) & 1),
                   2 * p.z - 1 + ((m >> 2) & 1)};
  return out;
}

Pattern pattern_from_counts(const std::array<std::uint32_t, 8>& present,
                            std::uint32_t cluster_size, int num_candidates)
{
  Pattern sigma = 0;
  for (int m = 0; m < num_candidates; m++)
    if (2 * std::uint64_t(present[m]) >= cluster_size)
      sigma |= Pattern(1) << m;
  return sigma;
}

namespace {

struct Accumulator {
  std::array<std::uint32_t, 8> present{};
  std::uint32_t n = 0;
};

}  // namespace

LevelKPrior build_levelK_prior(const VoxelCloud& VK, const VoxelCloud& VKm1,
                               const Rational& g, const NeighborSet& nbrs)
{
  std::vector<std::uint32_t> codes = neighborhood_codes(VK, nbrs);
  std::vector<std::uint8_t> classes(VK.size());
  parallel_for(VK.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++)
      classes[i] = std::uint8_t(coord_class(VK.points[i], g));
  });

  VoxelSet finer(VKm1);
  std::array<std::map<std::uint32_t, Accumulator>, 8> acc;
  for (std::size_t i = 0; i < VK.size(); i++) {
    int c = classes[i];
    if (c == 0)
      continue;
    Accumulator& a = acc[c][codes[i]];
    a.n++;
    std::vector<Voxel> cands = candidates_levelK(VK.points[i], c, g);
    for (std::size_t m = 0; m < cands.size(); m++)
      if (finer.contains(cands[m]))
        a.present[m]++;
  }

  LevelKPrior prior;
  for (int c = 1; c < 8; c++)
    for (const auto& [r, a] : acc[c])
      prior.tables[c][r] = pattern_from_counts(a.present, a.n,
                                               class_candidate_count(c));
  return prior;
}

IntermediatePrior build_intermediate_prior(const VoxelCloud& Vk,
                                           const VoxelCloud& finer_cloud,
                                           const NeighborSet& nbrs)
{
  std::vector<std::uint32_t> codes = neighborhood_codes(Vk, nbrs);
  VoxelSet finer(finer_cloud);
  std::map<std::uint32_t, Accumulator> acc;
  for (std::size_t i = 0; i < Vk.size(); i++) {
    Accumulator& a = acc[codes[i]];
    a.n++;
    std::array<Voxel, 8> cands = candidates_intermediate(Vk.points[i]);
    for (int m = 0; m < 8; m++)
      if (candidate_valid(cands[m]) && finer.contains(cands[m]))
        a.present[m]++;
  }

  IntermediatePrior prior;
  for (const auto& [r, a] : acc)
    prior.table[r] = pattern_from_counts(a.present, a.n, 8);
  return prior;
}

HierPriorResult build_hier_prior(const Pyramid& pyr, const NeighborSet& nbrsK,
                                 const NeighborSet& nbrsI)
{
  const PyramidParams& params = pyr.params;
  const int K = params.K;
  HierPriorResult result;
  result.prior.levelK = build_levelK_prior(pyr.levels[K], pyr.levels[K - 1],
                                           params.g, nbrsK);
  // Closed loop: every intermediate table is keyed by codes of the
  // reconstruction of its level, which is exactly what the decoder has.
  // Targets are the original pyramid levels.
  VoxelCloud recon = interpolate_base(pyr.levels[K], result.prior.levelK,
                                      params.g, nbrsK);
  for (int k = K - 1; k >= 1; k--) {
    IntermediatePrior sigma = build_intermediate_prior(recon,
                                                       pyr.levels[k - 1],
                                                       nbrsI);
    recon = interpolate_intermediate(recon, sigma, nbrsI);
    result.prior.intermediates.push_back(std::move(sigma));
  }
  result.recon_v0 = std::move(recon);
  return result;
}

}  // namespace hpsr
