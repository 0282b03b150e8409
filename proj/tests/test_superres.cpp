// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "hpsr/superres.hpp"

#include "testutil.hpp"

using namespace hpsr;

namespace {

const NeighborSet& nbr18()
{
  return NeighborSet::get(NeighborSetId::FACE_EDGE18);
}
const NeighborSet& nbr6()
{
  return NeighborSet::get(NeighborSetId::FACE6);
}

}  // namespace

TEST_CASE("interpolate_base with g = 1 is the identity")
{
  // Under g = 1 every preimage is a singleton, so all points are class 0.
  VoxelCloud cloud = testutil::rng_cloud(500, 5, 7);
  VoxelCloud up = interpolate_base(cloud, LevelKPrior{}, Rational(1, 1),
                                   nbr18());
  CHECK(up.points == cloud.points);
}

TEST_CASE("interpolate_base emits pattern-selected candidates")
{
  // One point of class 7 (all axes doubled under g = 1/2).
  VoxelCloud base = VoxelCloud::from_unsorted({{2, 2, 2}}, 3);
  Rational g(1, 2);
  REQUIRE(coord_class(Voxel{2, 2, 2}, g) == 7);
  std::uint32_t code = phi(Voxel{2, 2, 2}, base, nbr18());
  REQUIRE(code == 0);

  SUBCASE("full mask selects all eight")
  {
    LevelKPrior prior;
    prior.tables[7][0] = 0xff;
    VoxelCloud up = interpolate_base(base, prior, g, nbr18());
    // Preimage of 2 under 1/2 is {3,4}: the 2x2x2 cube [3,4]^3.
    REQUIRE(up.size() == 8);
    std::set<std::uint64_t> got;
    for (const Voxel& v : up.points)
      got.insert(pack_voxel(v));
    for (int x = 3; x <= 4; x++)
      for (int y = 3; y <= 4; y++)
        for (int z = 3; z <= 4; z++)
          CHECK(got.count(pack_voxel(Voxel{x, y, z})));
  }
  SUBCASE("zero mask emits nothing")
  {
    LevelKPrior prior;
    prior.tables[7][0] = 0;
    VoxelCloud up = interpolate_base(base, prior, g, nbr18());
    CHECK(up.empty());
  }
  SUBCASE("unseen code falls back to direct upscale")
  {
    LevelKPrior prior;
    prior.tables[7][12345] = 0xff;  // a different neighborhood
    VoxelCloud up = interpolate_base(base, prior, g, nbr18());
    REQUIRE(up.size() == 1);
    // [p / g] = round(2 * 2) = 4 per axis.
    CHECK(up.points[0] == Voxel{4, 4, 4});
  }
}

TEST_CASE("interpolate_intermediate selects children or upscales")
{
  VoxelCloud lone = VoxelCloud::from_unsorted({{5, 5, 5}}, 4);

  SUBCASE("unseen code: direct upscale to (2x, 2y, 2z)")
  {
    VoxelCloud up = interpolate_intermediate(lone, IntermediatePrior{},
                                             nbr6());
    REQUIRE(up.size() == 1);
    CHECK(up.points[0] == Voxel{10, 10, 10});
  }
  SUBCASE("full mask: all eight children")
  {
    IntermediatePrior prior;
    prior.table[0] = 0xff;
    VoxelCloud up = interpolate_intermediate(lone, prior, nbr6());
    REQUIRE(up.size() == 8);
    // Children span [2x-1, 2x] per axis.
    for (const Voxel& v : up.points) {
      CHECK(v.x >= 9);
      CHECK(v.x <= 10);
      CHECK(v.y >= 9);
      CHECK(v.y <= 10);
      CHECK(v.z >= 9);
      CHECK(v.z <= 10);
    }
  }
  SUBCASE("known zero mask emits nothing")
  {
    IntermediatePrior prior;
    prior.table[0] = 0;
    VoxelCloud up = interpolate_intermediate(lone, prior, nbr6());
    CHECK(up.empty());
  }
  SUBCASE("negative children are dropped, index kept for the rest")
  {
    VoxelCloud origin = VoxelCloud::from_unsorted({{0, 0, 0}}, 2);
    IntermediatePrior prior;
    prior.table[0] = 0xff;
    VoxelCloud up = interpolate_intermediate(origin, prior, nbr6());
    REQUIRE(up.size() == 1);  // only child m = 7 is in the grid
    CHECK(up.points[0] == Voxel{0, 0, 0});
  }
}

TEST_CASE("extra_sr reuses one fixed table")
{
  VoxelCloud cloud = testutil::rng_cloud(300, 5, 17);

  SUBCASE("kprime = 0 is the identity")
  {
    VoxelCloud same = extra_sr(cloud, IntermediatePrior{}, 0, nbr6());
    CHECK(same == cloud);
  }
  SUBCASE("negative kprime is rejected")
  {
    CHECK_THROWS_AS(extra_sr(cloud, IntermediatePrior{}, -1, nbr6()),
                    ArgError);
  }
  SUBCASE("empty table: each pass doubles coordinates")
  {
    VoxelCloud up = extra_sr(cloud, IntermediatePrior{}, 2, nbr6());
    REQUIRE(up.size() == cloud.size());
    for (std::size_t i = 0; i < up.size(); i++) {
      CHECK(up.points[i].x == cloud.points[i].x * 4);
      CHECK(up.points[i].y == cloud.points[i].y * 4);
      CHECK(up.points[i].z == cloud.points[i].z * 4);
    }
  }
  SUBCASE("the table does not adapt between iterations")
  {
    // A lone point keeps code 0 in both passes; with a single-child mask
    // the same entry must apply twice.
    VoxelCloud lone = VoxelCloud::from_unsorted({{3, 3, 3}}, 3);
    IntermediatePrior sigma1;
    sigma1.table[0] = 0x80;  // child m = 7: (2x, 2y, 2z)
    VoxelCloud up = extra_sr(lone, sigma1, 2, nbr6());
    REQUIRE(up.size() == 1);
    CHECK(up.points[0] == Voxel{12, 12, 12});
  }
}

TEST_CASE("final_upscale multiplies by the residual power of two")
{
  VoxelCloud cloud = VoxelCloud::from_unsorted({{1, 2, 3}}, 3);

  PyramidParams p;
  p.L = 2;
  p.K = 2;
  p.Kprime = 0;  // exponent L+1-K-K' = 1
  VoxelCloud up = final_upscale(cloud, p);
  CHECK(up.points[0] == Voxel{2, 4, 6});

  p.Kprime = 1;  // exponent 0: identity
  VoxelCloud same = final_upscale(cloud, p);
  CHECK(same.points == cloud.points);

  p.Kprime = 2;  // exponent -1: invalid
  CHECK_THROWS_AS(final_upscale(cloud, p), ArgError);
}

TEST_CASE("decode_reconstruct replays the encoder loop exactly")
{
  int idx = 0;
  for (std::uint64_t seed : {41ULL, 42ULL, 43ULL, 44ULL, 45ULL}) {
    for (const Rational& q : {Rational(1, 8), Rational(3, 8), Rational(1, 4),
                              Rational(1, 16), Rational(1, 2)}) {
      idx++;
      VoxelCloud cloud = (idx % 2) ? testutil::clustered_cloud(3000, 7, seed)
                                   : testutil::rng_cloud(1500, 6, seed);
      PyramidParams params = derive_params(q);
      Pyramid pyr = build_pyramid(cloud, params);
      HierPriorResult enc =
        build_hier_prior(pyr, nbr18(), nbr6());

      // The decoder sees only the base level, the prior, and the params.
      VoxelCloud recon = decode_reconstruct(pyr.levels[params.K], enc.prior,
                                            params, nbr18(), nbr6());

      // It must land exactly on the encoder's closed-loop reconstruction.
      IntermediatePrior sigma1;
      if (!enc.prior.intermediates.empty())
        sigma1 = enc.prior.intermediates.back();
      VoxelCloud expect = final_upscale(
        extra_sr(enc.recon_v0, sigma1, params.Kprime, nbr6()), params);
      REQUIRE(recon == expect);
    }
  }
}

TEST_CASE("reconstruction stays near the original scale")
{
  VoxelCloud cloud = testutil::surface_cloud(6, 3);
  PyramidParams params = derive_params(Rational(1, 8));
  Pyramid pyr = build_pyramid(cloud, params);
  HierPriorResult enc = build_hier_prior(pyr, nbr18(), nbr6());
  VoxelCloud recon = decode_reconstruct(pyr.levels[params.K], enc.prior,
                                        params, nbr18(), nbr6());
  REQUIRE_FALSE(recon.empty());
  // Rounding can spill one level up, never more.
  CHECK(recon.bitdepth <= cloud.bitdepth + 1);
  for (const Voxel& v : recon.points) {
    CHECK(v.x <= 2 * ((1 << cloud.bitdepth) - 1) + 1);
    CHECK(v.y <= 2 * ((1 << cloud.bitdepth) - 1) + 1);
  }
}
