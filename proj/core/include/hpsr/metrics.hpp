// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_METRICS_HPP
#define HPSR_METRICS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hpsr/voxel.hpp"

namespace hpsr {

struct RdPoint {
  double bpp = 0.0;
  double d1_psnr = 0.0;
  double d2_psnr = 0.0;
  std::uint64_t base_bits = 0;
  std::uint64_t prior_bits = 0;
  std::uint64_t header_bits = 0;
};

// Per-point unit normals, index-aligned with the owning cloud.
struct NormalField {
  std::vector<std::array<double, 3>> normals;
  int degenerate_count = 0;  // neighborhoods of rank < 2, forced to (0,0,1)

  std::size_t size() const { return normals.size(); }
};

// Mean squared nearest-neighbor distance in one direction (every a in A to
// its nearest b in B). Exposed for oracle tests; the public metrics below
// take the symmetric max of both directions.
double d1_mse_directional(const VoxelCloud& A, const VoxelCloud& B);

// Symmetric point-to-point MSE: max(mse(A->B), mse(B->A)).
double d1_mse(const VoxelCloud& A, const VoxelCloud& B);

// Point-to-plane: each error vector is projected onto the normal of the
// matched point, so direction A->B consumes normals_B and vice versa.
double d2_mse_directional(const VoxelCloud& A, const VoxelCloud& B,
                          const NormalField& normals_B);
double d2_mse(const VoxelCloud& A, const VoxelCloud& B,
              const NormalField& normals_A, const NormalField& normals_B);

// Smallest-eigenvalue eigenvector of the k-nearest-neighbor covariance,
// sign-fixed to positive z (ties: positive y, then x). Rank-deficient
// neighborhoods fall back to (0,0,1) and bump degenerate_count.
NormalField estimate_normals(const VoxelCloud& cloud, int k = 12);

// 10*log10(3*(2^bitdepth - 1)^2 / mse); mse == 0 maps to +infinity.
double psnr(double mse, int bitdepth);

enum class Distortion { D1, D2 };

// Bjontegaard-delta bitrate of curve B against curve A, in percent.
// Cubic fit of log10(bpp) over PSNR per curve, horizontal gap averaged over
// the overlapping PSNR interval, returned as 100*(10^gap - 1). Negative
// values mean B spends fewer bits at equal quality.
double bd_rate(const std::vector<RdPoint>& curveA,
               const std::vector<RdPoint>& curveB, Distortion which);

}  // namespace hpsr

#endif
