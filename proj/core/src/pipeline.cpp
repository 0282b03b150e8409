// SPDX-License-Identifier: Apache-2.0
#include "hpsr/pipeline.hpp"

#include <algorithm>

#include "hpsr/base_codec.hpp"
#include "hpsr/prior.hpp"
#include "hpsr/superres.hpp"

namespace hpsr {

double EncodeStats::bpp(std::size_t point_count) const
{
  if (point_count == 0)
    throw ArgError("empty cloud");
  return double(total_bits()) / double(point_count);
}

EncodeResult encode(const VoxelCloud& cloud, const EncodeConfig& cfg)
{
  EncodeResult result;
  result.params = derive_params(cfg.q, cfg.k_max, cfg.kprime_max);
  Pyramid pyr = build_pyramid(cloud, result.params);

  const NeighborSet& nbrsK = NeighborSet::get(cfg.nbrK);
  const NeighborSet& nbrsI = NeighborSet::get(cfg.nbrI);
  HierPriorResult hier = build_hier_prior(pyr, nbrsK, nbrsI);

  Container& c = result.container;
  c.base = encode_base(pyr.levels[std::size_t(result.params.K)]);
  c.prior = encode_prior(hier.prior, cfg.prior_mode);
  c.header.bitdepth = std::uint8_t(cloud.bitdepth);
  c.header.q = cfg.q;
  c.header.K = std::uint8_t(result.params.K);
  c.header.Kprime = std::uint8_t(result.params.Kprime);
  c.header.nbrK = cfg.nbrK;
  c.header.nbrI = cfg.nbrI;
  c.header.prior_mode = cfg.prior_mode;
  c.header.base_size = std::uint32_t(c.base.size());
  c.header.prior_size = std::uint32_t(c.prior.size());

  IntermediatePrior sigma1;
  if (!hier.prior.intermediates.empty())
    sigma1 = hier.prior.intermediates.back();
  VoxelCloud recon = extra_sr(hier.recon_v0, sigma1, result.params.Kprime,
                              nbrsI);
  result.recon = final_upscale(recon, result.params);

  result.stats.header_bits = kHeaderSize * 8;
  result.stats.base_bits = c.base.size() * 8;
  result.stats.prior_bits = c.prior.size() * 8;
  return result;
}

namespace {

PyramidParams params_from_header(const ContainerHeader& h, int kprime)
{
  PyramidParams params = derive_params(h.q, h.K, 0);
  params.K = h.K;
  params.Kprime = kprime;
  return params;
}

// Sorted unique neighborhood codes per coordinate class, the level-K cluster
// keys the prior substream is aligned to.
std::array<std::vector<std::uint32_t>, 8> levelK_keys(
  const VoxelCloud& VK, const Rational& g, const NeighborSet& nbrs)
{
  std::vector<std::uint32_t> codes = neighborhood_codes(VK, nbrs);
  std::array<std::vector<std::uint32_t>, 8> keys;
  for (std::size_t i = 0; i < VK.size(); i++) {
    int c = coord_class(VK.points[i], g);
    if (c != 0)
      keys[c].push_back(codes[i]);
  }
  for (auto& k : keys) {
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
  }
  return keys;
}

std::vector<std::uint32_t> observed_keys(const VoxelCloud& cloud,
                                         const NeighborSet& nbrs)
{
  std::vector<std::uint32_t> keys = neighborhood_codes(cloud, nbrs);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace

VoxelCloud decode(const Container& c, const DecodeOptions& opts)
{
  const ContainerHeader& h = c.header;
  const int kprime = opts.skip_kprime ? 0 : h.Kprime;
  PyramidParams params = params_from_header(h, kprime);
  const NeighborSet& nbrsK = NeighborSet::get(h.nbrK);
  const NeighborSet& nbrsI = NeighborSet::get(h.nbrI);

  VoxelCloud VK = decode_base(c.base.data(), c.base.size());

  // The prior substream interleaves with reconstruction: each level's keys
  // only exist once the previous level is interpolated.
  PriorReader reader(c.prior.data(), c.prior.size());
  if (reader.mode() != h.prior_mode)
    throw StreamError("prior mode disagrees with container header");

  LevelKPrior levelK = reader.read_levelK(levelK_keys(VK, params.g, nbrsK));
  VoxelCloud recon = interpolate_base(VK, levelK, params.g, nbrsK);

  IntermediatePrior sigma1;
  for (int k = params.K - 1; k >= 1; k--) {
    sigma1 = reader.read_intermediate(observed_keys(recon, nbrsI));
    recon = interpolate_intermediate(recon, sigma1, nbrsI);
  }
  reader.finish();

  recon = extra_sr(recon, sigma1, kprime, nbrsI);
  return final_upscale(recon, params);
}

VoxelCloud decode_naive(const Container& c)
{
  const ContainerHeader& h = c.header;
  PyramidParams params = params_from_header(h, 0);
  const NeighborSet& nbrsK = NeighborSet::get(h.nbrK);
  const NeighborSet& nbrsI = NeighborSet::get(h.nbrI);

  VoxelCloud VK = decode_base(c.base.data(), c.base.size());
  // Empty prior: every point takes the pattern-free direct-upscale path.
  VoxelCloud recon = interpolate_base(VK, LevelKPrior{}, params.g, nbrsK);
  for (int k = params.K - 1; k >= 1; k--)
    recon = interpolate_intermediate(recon, IntermediatePrior{}, nbrsI);
  return final_upscale(recon, params);
}

}  // namespace hpsr
