// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_RANGE_CODER_HPP
#define HPSR_RANGE_CODER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hpsr/error.hpp"

namespace hpsr {

// Context-adaptive binary range coder: 32-bit range, 12-bit probability
// state, exponential update with shift 5, renormalization below 2^24.
// The decoder consumes exactly the bytes the encoder produced, which lets
// callers detect truncation by byte count.

struct BitModel {
  std::uint16_t prob = 2048;  // P(bit == 0) scaled to 12 bits
};

class RangeEncoder {
public:
  void encode_bit(BitModel& model, int bit);
  // Terminates the stream; no bits may be encoded afterwards.
  std::vector<std::uint8_t> finish();

  std::size_t bytes_written() const { return out_.size(); }

private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xffffffffu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
public:
  RangeDecoder(const std::uint8_t* data, std::size_t size);

  int decode_bit(BitModel& model);
  std::size_t bytes_consumed() const { return pos_; }
  std::size_t bytes_total() const { return size_; }

private:
  std::uint8_t read_byte();

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xffffffffu;
  std::uint32_t code_ = 0;
};

}  // namespace hpsr

#endif
