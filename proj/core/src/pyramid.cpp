// SPDX-License-Identifier: Apache-2.0
#include "hpsr/pyramid.hpp"

#include <algorithm>

namespace hpsr {

namespace {

// Smallest bitdepth whose grid holds every coordinate, floored at `nominal`.
// Half-up rounding can push a maximal coordinate to exactly 2^nominal, in
// which case the level gets one extra bit.
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

VoxelCloud scaled_level(const VoxelCloud& src, const Rational& factor,
                        int nominal_bitdepth)
{
  std::vector<Voxel> pts;
  pts.reserve(src.size());
  for (const Voxel& v : src.points)
    pts.push_back(scale_round(v, factor));
  int bitdepth = fit_bitdepth(pts, nominal_bitdepth);
  return VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

}  // namespace

PyramidParams derive_params(const Rational& q, int k_max, int kprime_max)
{
  if (q.num >= q.den)
    throw ArgError("q out of range (0, 1): " + q.str());
  if (k_max < 1)
    throw ArgError("K cap must be at least 1");
  if (kprime_max < 0)
    throw ArgError("K' cap must be non-negative");
  // L = ceil(log2(1/q)) - 1: smallest t with num * 2^t >= den, minus one.
  int t = 0;
  while ((std::uint64_t(q.num) << t) < q.den)
    t++;
  PyramidParams params;
  params.q = q;
  params.L = t - 1;
  params.K = std::min(params.L + 1, k_max);
  params.Kprime = std::min(kprime_max, params.L + 1 - params.K);
  params.g = Rational(std::uint64_t(q.num) << params.L, q.den);
  check_fractional_factor(params.g);
  return params;
}

Rational map_s_to_q(const Rational& s)
{
  if (s.num > s.den)
    throw ArgError("s out of range (0, 1]: " + s.str());
  auto f = [](const Rational& v) {
    if (2 * std::uint64_t(v.num) > v.den) {
      if (v.num == 1)
        throw ArgError("s maps to q = 0");
      return Rational(v.num - 1, v.den);
    }
    return Rational(v.num, 2 * std::uint64_t(v.den));
  };
  return f(f(s));
}

Pyramid build_pyramid(const VoxelCloud& cloud, const PyramidParams& params)
{
  if (cloud.empty())
    throw ArgError("empty cloud");
  const int d0 = params.L + 1 - params.K;
  if (cloud.bitdepth <= d0)
    throw ArgError("bitdepth too small for this q and K");

  Pyramid pyr;
  pyr.params = params;
  pyr.levels.reserve(params.K + 1);
  pyr.levels.push_back(scaled_level(cloud, Rational(1, std::uint64_t(1) << d0),
                                    cloud.bitdepth - d0));
  for (int k = 1; k < params.K; k++)
    pyr.levels.push_back(scaled_level(pyr.levels.back(), Rational(1, 2),
                                      pyr.levels.back().bitdepth - 1));
  // The fractional step never enlarges coordinates, so the grid bound of
  // V^(K-1) still holds.
  pyr.levels.push_back(scaled_level(pyr.levels.back(), params.g,
                                    pyr.levels.back().bitdepth));
  return pyr;
}

}  // namespace hpsr
