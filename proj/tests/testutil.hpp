// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_TESTS_TESTUTIL_HPP
#define HPSR_TESTS_TESTUTIL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <sys/stat.h>
#include <sys/wait.h>
#include <vector>

#include "hpsr/voxel.hpp"

namespace testutil {

// Uniform random cloud; duplicates collapse in from_unsorted, so the result
// may hold fewer than n points.
inline hpsr::VoxelCloud rng_cloud(std::size_t n, int bitdepth,
                                  std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> d(0, (1 << bitdepth) - 1);
  std::vector<hpsr::Voxel> pts(n);
  for (auto& p : pts)
    p = {d(rng), d(rng), d(rng)};
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

// Gaussian blobs around random centers: locally dense, globally sparse.
inline hpsr::VoxelCloud clustered_cloud(std::size_t n, int bitdepth,
                                        std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::int32_t hi = (1 << bitdepth) - 1;
  std::uniform_int_distribution<std::int32_t> center(0, hi);
  std::normal_distribution<double> jitter(0.0, double(hi) / 40.0 + 1.0);
  std::size_t blobs = std::max<std::size_t>(1, n / 200);
  std::vector<hpsr::Voxel> centers(blobs);
  for (auto& c : centers)
    c = {center(rng), center(rng), center(rng)};
  std::uniform_int_distribution<std::size_t> pick(0, blobs - 1);
  auto clamp = [hi](double v) {
    return std::int32_t(std::min<double>(hi, std::max(0.0, std::round(v))));
  };
  std::vector<hpsr::Voxel> pts(n);
  for (auto& p : pts) {
    const hpsr::Voxel& c = centers[pick(rng)];
    p = {clamp(c.x + jitter(rng)), clamp(c.y + jitter(rng)),
         clamp(c.z + jitter(rng))};
  }
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

// Smooth heightfield: one voxel per (x, y) column, resembling a scanned
// surface. Dense in-plane neighborhoods exercise the prior tables.
inline hpsr::VoxelCloud surface_cloud(int bitdepth, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0.0, 6.28);
  double p1 = ph(rng), p2 = ph(rng);
  std::int32_t hi = (1 << bitdepth) - 1;
  double mid = hi / 2.0, amp = hi / 4.0, freq = 8.0 / (hi + 1);
  std::vector<hpsr::Voxel> pts;
  pts.reserve(std::size_t(hi + 1) * std::size_t(hi + 1));
  for (std::int32_t x = 0; x <= hi; x++)
    for (std::int32_t y = 0; y <= hi; y++) {
      double z = mid + amp * std::sin(freq * x + p1) * std::cos(freq * y + p2);
      pts.push_back({x, y, std::int32_t(std::round(z))});
    }
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

inline hpsr::VoxelCloud solid_box(std::int32_t side, int bitdepth,
                                  std::int32_t origin = 0)
{
  std::vector<hpsr::Voxel> pts;
  pts.reserve(std::size_t(side) * side * side);
  for (std::int32_t x = 0; x < side; x++)
    for (std::int32_t y = 0; y < side; y++)
      for (std::int32_t z = 0; z < side; z++)
        pts.push_back({origin + x, origin + y, origin + z});
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

// Voxelized spherical shell: every grid cell within half a voxel of the
// radius-R sphere around the grid center.
inline hpsr::VoxelCloud sphere_shell(int bitdepth, double radius)
{
  double c = ((1 << bitdepth) - 1) / 2.0;
  std::int32_t lo = std::int32_t(std::floor(c - radius - 1));
  std::int32_t hi = std::int32_t(std::ceil(c + radius + 1));
  lo = std::max(lo, 0);
  hi = std::min(hi, (1 << bitdepth) - 1);
  std::vector<hpsr::Voxel> pts;
  for (std::int32_t x = lo; x <= hi; x++)
    for (std::int32_t y = lo; y <= hi; y++) {
      double dx = x - c, dy = y - c;
      double rxy2 = dx * dx + dy * dy;
      if (rxy2 > (radius + 1) * (radius + 1))
        continue;
      for (std::int32_t z = lo; z <= hi; z++) {
        double dz = z - c;
        double r = std::sqrt(rxy2 + dz * dz);
        if (std::abs(r - radius) <= 0.5)
          pts.push_back({x, y, z});
      }
    }
  return hpsr::VoxelCloud::from_unsorted(std::move(pts), bitdepth);
}

inline std::string temp_dir()
{
  char tmpl[] = "/tmp/hpsr_test_XXXXXX";
  char* dir = mkdtemp(tmpl);
  if (!dir)
    throw std::runtime_error("mkdtemp failed");
  return std::string(dir);
}

inline bool file_exists(const std::string& path)
{
  struct stat st;
  return stat(path.c_str(), &st) == 0;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command, capturing stdout (stderr is folded in).
inline CliResult run_cmd(const std::string& cmd)
{
  CliResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe)
    throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testutil

#endif
