// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hpsr/base_codec.hpp"
#include "hpsr/geometry.hpp"
#include "hpsr/kdtree.hpp"
#include "hpsr/pipeline.hpp"
#include "hpsr/voxel.hpp"

namespace {

hpsr::VoxelCloud random_cloud(std::size_t n, int bitdepth, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> d(0, (1 << bitdepth) - 1);
  std::vector<hpsr::Voxel> pts(n);
  for (auto& p : pts)
    p = {d(rng), d(rng), d(rng)};
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

void bm_neighborhood_codes(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 7);
  const auto& nbr = hpsr::NeighborSet::get(hpsr::NeighborSetId::FACE_EDGE18);
  for (auto _ : state) {
    auto codes = hpsr::neighborhood_codes(cloud, nbr);
    benchmark::DoNotOptimize(codes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_neighborhood_codes)->Arg(1 << 12)->Arg(1 << 16);

void bm_base_encode(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 11);
  for (auto _ : state) {
    auto bytes = hpsr::encode_base(cloud);
    benchmark::DoNotOptimize(bytes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_base_encode)->Arg(1 << 12)->Arg(1 << 16);

void bm_base_decode(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 13);
  auto bytes = hpsr::encode_base(cloud);
  for (auto _ : state) {
    auto recon = hpsr::decode_base(bytes);
    benchmark::DoNotOptimize(recon.points.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_base_decode)->Arg(1 << 12)->Arg(1 << 16);

void bm_pipeline_encode(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 17);
  hpsr::EncodeConfig cfg;
  for (auto _ : state) {
    auto result = hpsr::encode(cloud, cfg);
    benchmark::DoNotOptimize(result.container.base.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_pipeline_encode)->Arg(1 << 12)->Arg(1 << 15);

void bm_pipeline_decode(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 19);
  hpsr::EncodeConfig cfg;
  auto result = hpsr::encode(cloud, cfg);
  for (auto _ : state) {
    auto recon = hpsr::decode(result.container);
    benchmark::DoNotOptimize(recon.points.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_pipeline_decode)->Arg(1 << 12)->Arg(1 << 15);

void bm_kdtree_nearest(benchmark::State& state)
{
  hpsr::VoxelCloud cloud = random_cloud(std::size_t(state.range(0)), 10, 23);
  hpsr::VoxelCloud queries = random_cloud(1024, 10, 29);
  hpsr::KdTree tree(cloud.points);
  for (auto _ : state) {
    std::size_t acc = 0;
    for (const auto& q : queries.points)
      acc += tree.nearest(q);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(bm_kdtree_nearest)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
