// SPDX-License-Identifier: Apache-2.0
#include "hpsr/superres.hpp"

#include <algorithm>

namespace hpsr {

namespace {

int fit_bitdepth(const std::vector<Voxel>& pts, int nominal)
{
  if (nominal < 1)
    nominal = 1;
  std::int32_t max_c = 0;
  for (const Voxel& v : pts)
    max_c = std::max({max_c, v.x, v.y, v.z});
  while (max_c >= (std::int64_t(1) << nominal))
    nominal++;
  return nominal;
}

}  // namespace

VoxelCloud interpolate_base(const VoxelCloud& VK, const LevelKPrior& prior,
                            const Rational& g, const NeighborSet& nbrs)
{
  VoxelSet occupancy(VK);
  std::vector<Voxel> out;
  out.reserve(VK.size() * 2);
  for (const Voxel& p : VK.points) {
    int c = coord_class(p, g);
    if (c != 0) {
      std::uint32_t r = phi(p, occupancy, nbrs);
      auto it = prior.tables[c].find(r);
      if (it != prior.tables[c].end()) {
        std::vector<Voxel> cands = candidates_levelK(p, c, g);
        for (std::size_t m = 0; m < cands.size(); m++)
          if (it->second & (Pattern(1) << m))
            out.push_back(cands[m]);
        continue;
      }
    }
    // Exact one-to-one case, and the defensive fallback for codes the prior
    // never saw: plain rounded upscale.
    out.push_back(scale_round_inverse(p, g));
  }
  int bitdepth = fit_bitdepth(out, VK.bitdepth);
  return VoxelCloud::from_unsorted(std::move(out), bitdepth);
}

VoxelCloud interpolate_intermediate(const VoxelCloud& Vk,
                                    const IntermediatePrior& prior,
                                    const NeighborSet& nbrs)
{
  VoxelSet occupancy(Vk);
  std::vector<Voxel> out;
  out.reserve(Vk.size() * 2);
  for (const Voxel& p : Vk.points) {
    std::uint32_t r = phi(p, occupancy, nbrs);
    auto it = prior.table.find(r);
    if (it == prior.table.end()) {
      out.push_back(Voxel{2 * p.x, 2 * p.y, 2 * p.z});
      continue;
    }
    std::array<Voxel, 8> cands = candidates_intermediate(p);
    for (int m = 0; m < 8; m++)
      if ((it->second & (Pattern(1) << m)) && candidate_valid(cands[m]))
        out.push_back(cands[m]);
  }
  int bitdepth = fit_bitdepth(out, Vk.bitdepth + 1);
  return VoxelCloud::from_unsorted(std::move(out), bitdepth);
}

VoxelCloud extra_sr(const VoxelCloud& V0, const IntermediatePrior& sigma1,
                    int kprime, const NeighborSet& nbrs)
{
  if (kprime < 0)
    throw ArgError("negative K'");
  VoxelCloud out = V0;
  // The table, and with it the set of recognized codes, stays fixed across
  // iterations; unseen codes keep falling back to direct upscale.
  for (int i = 0; i < kprime; i++)
    out = interpolate_intermediate(out, sigma1, nbrs);
  return out;
}

VoxelCloud final_upscale(const VoxelCloud& V0, const PyramidParams& params)
{
  const int exponent = params.L + 1 - params.K - params.Kprime;
  if (exponent < 0)
    throw ArgError("K + K' exceeds L + 1");
  if (exponent == 0)
    return V0;
  std::vector<Voxel> out;
  out.reserve(V0.size());
  for (const Voxel& p : V0.points)
    out.push_back(Voxel{p.x << exponent, p.y << exponent, p.z << exponent});
  return VoxelCloud::from_unsorted(std::move(out), V0.bitdepth + exponent);
}

VoxelCloud decode_reconstruct(const VoxelCloud& VK, const HierPrior& prior,
                              const PyramidParams& params,
                              const NeighborSet& nbrsK,
                              const NeighborSet& nbrsI)
{
  VoxelCloud recon = interpolate_base(VK, prior.levelK, params.g, nbrsK);
  for (const IntermediatePrior& sigma : prior.intermediates)
    recon = interpolate_intermediate(recon, sigma, nbrsI);
  IntermediatePrior sigma1;
  if (!prior.intermediates.empty())
    sigma1 = prior.intermediates.back();
  recon = extra_sr(recon, sigma1, params.Kprime, nbrsI);
  return final_upscale(recon, params);
}

}  // namespace hpsr
