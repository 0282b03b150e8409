// SPDX-License-Identifier: Apache-2.0
#include "hpsr/geometry.hpp"

#include "hpsr/parallel.hpp"

namespace hpsr {

std::int64_t round_half_up(std::int64_t num, std::int64_t den)
{
  if (num < 0)
    throw ArgError("negative coordinate");
  return (2 * num + den) / (2 * den);
}

Voxel scale_round(const Voxel& v, const Rational& g)
{
  return Voxel{
    std::int32_t(round_half_up(std::int64_t(v.x) * g.num, g.den)),
    std::int32_t(round_half_up(std::int64_t(v.y) * g.num, g.den)),
    std::int32_t(round_half_up(std::int64_t(v.z) * g.num, g.den))};
}

Voxel scale_round_inverse(const Voxel& v, const Rational& g)
{
  return scale_round(v, g.inverse());
}

std::uint32_t phi(const Voxel& p, const VoxelSet& occupancy,
                  const NeighborSet& nbrs)
{
  std::uint32_t r = 0;
  const auto& offs = nbrs.offsets();
  for (std::size_t n = 0; n < offs.size(); n++) {
    Voxel q{p.x + offs[n].dx, p.y + offs[n].dy, p.z + offs[n].dz};
    if (occupancy.contains(q))
      r |= std::uint32_t(1) << n;
  }
  return r;
}

std::uint32_t phi(const Voxel& p, const VoxelCloud& cloud,
                  const NeighborSet& nbrs)
{
  VoxelSet set(cloud);
  return phi(p, set, nbrs);
}

std::vector<std::uint32_t> neighborhood_codes(const VoxelCloud& cloud,
                                              const NeighborSet& nbrs)
{
  VoxelSet set(cloud);
  std::vector<std::uint32_t> codes(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++)
      codes[i] = phi(cloud.points[i], set, nbrs);
  });
  return codes;
}

void check_fractional_factor(const Rational& g)
{
  // 1/2 <= g <= 1, by cross multiplication.
  if (2 * std::uint64_t(g.num) < g.den || g.num > g.den)
    throw ArgError("invalid fractional factor " + g.str());
}

PreimageInterval preimage_interval(std::int32_t X, const Rational& g)
{
  check_fractional_factor(g);
  if (X < 0)
    throw ArgError("negative coordinate");
  // round_half_up(x*g) == X  <=>  X - 1/2 <= x*g < X + 1/2
  //                          <=>  b(2X-1)/(2a) <= x < b(2X+1)/(2a)
  const std::int64_t a = g.num, b = g.den;
  auto ceil_div = [](std::int64_t p, std::int64_t q) {
    return (p + q - 1) / q;  // p >= 0, q > 0
  };
  std::int64_t lo = X == 0 ? 0 : ceil_div(b * (2 * X - 1), 2 * a);
  std::int64_t hi = ceil_div(b * (2 * X + 1), 2 * a) - 1;
  return PreimageInterval{std::int32_t(lo), std::int32_t(hi)};
}

int coord_class(const Voxel& p, const Rational& g)
{
  int c = 0;
  if (preimage_interval(p.x, g).size() == 2)
    c |= 1;
  if (preimage_interval(p.y, g).size() == 2)
    c |= 2;
  if (preimage_interval(p.z, g).size() == 2)
    c |= 4;
  return c;
}

}  // namespace hpsr
