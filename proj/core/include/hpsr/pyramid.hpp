// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PYRAMID_HPP
#define HPSR_PYRAMID_HPP

#include <vector>

#include "hpsr/geometry.hpp"
#include "hpsr/voxel.hpp"

namespace hpsr {

// Scale parameters of one encoding run. L is the deepest power-of-two level
// implied by q, K the number of coded levels, Kprime the number of
// pattern-reuse iterations at the decoder, and g = 2^L * q the fractional
// factor of the last downsampling step.
struct PyramidParams {
  Rational q{1, 2};
  int L = 0;
  int K = 1;
  int Kprime = 0;
  Rational g{1, 2};
};

struct Pyramid {
  std::vector<VoxelCloud> levels;  // V^(0) .. V^(K)
  PyramidParams params;
};

// Derives (L, K, Kprime, g) from q and the user caps. The defaults
// K_max = 2, Kprime_max = 2 reproduce the codec's standard configuration.
PyramidParams derive_params(const Rational& q, int k_max = 2,
                            int kprime_max = 2);

// Maps the octree geometry scale s to the downsampling factor q by applying
// f twice, where f(a/b) = (a-1)/b for coprime a/b > 1/2 and a/b / 2
// otherwise.
Rational map_s_to_q(const Rational& s);

// Successive downsampling:
//   V^(0) = unique([V / 2^(L+1-K)])
//   V^(k) = unique([V^(k-1) / 2])      for k = 1..K-1
//   V^(K) = unique([V^(K-1) * g])
Pyramid build_pyramid(const VoxelCloud& cloud, const PyramidParams& params);

}  // namespace hpsr

#endif
