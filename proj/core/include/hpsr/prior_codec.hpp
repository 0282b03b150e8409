// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_PRIOR_CODEC_HPP
#define HPSR_PRIOR_CODEC_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "hpsr/prior.hpp"
#include "hpsr/range_coder.hpp"

namespace hpsr {

enum class PriorMode : std::uint8_t {
  RAW = 0,
  ENTROPY = 1,
};

// The cluster keys the decoder re-derives from its own partitioning. Only
// pattern values travel in the stream; this layout tells the reader how many
// bits belong to each table and which keys to attach them to.
struct PriorLayout {
  std::array<std::vector<std::uint32_t>, 8> levelK_keys;  // index c, 1..7
  std::vector<std::vector<std::uint32_t>> intermediate_keys;

  static PriorLayout of(const HierPrior& prior);

  // Payload bits before padding or entropy coding:
  //   sum_c |R_c| * M_c  +  sum_k |R_k| * 8
  std::size_t payload_bits() const;
};

// Serializes the prior in canonical order: level K (c ascending, r
// ascending, M_c bits per pattern MSB-first, byte-padded per c group), then
// each intermediate table (r ascending, 8 bits per pattern). ENTROPY mode
// codes the same pattern bits with one adaptive model per bit position.
// Substream layout: [u8 mode][payload].
std::vector<std::uint8_t> encode_prior(const HierPrior& prior,
                                       PriorMode mode);

// Exact inverse given the layout the encoder saw. Length mismatches raise
// StreamError("prior/cloud desync ...").
HierPrior decode_prior(const std::uint8_t* data, std::size_t size,
                       const PriorLayout& layout, PriorMode mode);
HierPrior decode_prior(const std::vector<std::uint8_t>& bytes,
                       const PriorLayout& layout, PriorMode mode);

// Incremental reader for the decoder pipeline, where each level's keys only
// become known after the previous level has been interpolated. Tables must
// be read in stream order: level K first, then K-1 down to 1.
class PriorReader {
public:
  PriorReader(const std::uint8_t* data, std::size_t size);

  PriorMode mode() const { return mode_; }

  LevelKPrior read_levelK(const std::array<std::vector<std::uint32_t>, 8>& keys);
  IntermediatePrior read_intermediate(const std::vector<std::uint32_t>& keys);

  // Verifies the whole payload was consumed.
  void finish();

private:
  std::uint32_t read_bits(int n);

  const std::uint8_t* payload_;
  std::size_t payload_size_;
  PriorMode mode_;
  // RAW cursor
  std::size_t byte_pos_ = 0;
  int bit_pos_ = 0;
  // ENTROPY state (created lazily; an empty prior has an empty payload)
  std::unique_ptr<RangeDecoder> rc_;
  std::array<BitModel, 8> models_{};
};

}  // namespace hpsr

#endif
