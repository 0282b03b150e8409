// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_CONTAINER_HPP
#define HPSR_CONTAINER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hpsr/base_codec.hpp"
#include "hpsr/prior_codec.hpp"
#include "hpsr/rational.hpp"
#include "hpsr/voxel.hpp"

namespace hpsr {

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 24;
inline constexpr char kMagic[4] = {'H', 'P', 'S', 'R'};

// Fixed 24-byte header, little-endian multi-byte fields:
//   [0..3]   magic "HPSR"
//   [4]      u8 format version
//   [5]      u8 input bitdepth
//   [6..7]   u16 q numerator
//   [8..9]   u16 q denominator
//   [10]     u8 K
//   [11]     u8 K'
//   [12]     u8 neighborhood id, level-K stage
//   [13]     u8 neighborhood id, intermediate stages
//   [14]     u8 base coder version
//   [15]     u8 prior mode
//   [16..19] u32 base substream length
//   [20..23] u32 prior substream length
struct ContainerHeader {
  std::uint8_t version = kFormatVersion;
  std::uint8_t bitdepth = 0;
  Rational q{1, 2};  // num and den each capped at 16 bits
  std::uint8_t K = 0;
  std::uint8_t Kprime = 0;
  NeighborSetId nbrK = NeighborSetId::FACE_EDGE18;
  NeighborSetId nbrI = NeighborSetId::FACE6;
  std::uint8_t base_coder_version = kBaseCoderVersion;
  PriorMode prior_mode = PriorMode::ENTROPY;
  std::uint32_t base_size = 0;
  std::uint32_t prior_size = 0;
};

struct Container {
  ContainerHeader header;
  std::vector<std::uint8_t> base;
  std::vector<std::uint8_t> prior;

  std::size_t total_size() const {
    return kHeaderSize + base.size() + prior.size();
  }
};

std::vector<std::uint8_t> write_container(const Container& c);

// Validates magic, version, field ranges, and that the substream lengths
// exactly cover the remaining bytes. Violations raise ParseError.
Container read_container(const std::uint8_t* data, std::size_t size);
Container read_container(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> load_file(const std::string& path);
void save_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace hpsr

#endif
