// SPDX-License-Identifier: Apache-2.0
#include "hpsr/range_coder.hpp"

namespace hpsr {

namespace {

constexpr int kProbBits = 12;
constexpr std::uint16_t kProbMax = 1 << kProbBits;  // 4096
constexpr int kUpdateShift = 5;
constexpr std::uint32_t kTopValue = 1u << 24;

}  // namespace

void RangeEncoder::encode_bit(BitModel& model, int bit)
{
  std::uint32_t bound = (range_ >> kProbBits) * model.prob;
  if (bit == 0) {
    range_ = bound;
    model.prob += (kProbMax - model.prob) >> kUpdateShift;
  } else {
    low_ += bound;
    range_ -= bound;
    model.prob -= model.prob >> kUpdateShift;
  }
  while (range_ < kTopValue) {
    shift_low();
    range_ <<= 8;
  }
}

void RangeEncoder::shift_low()
{
  if (std::uint32_t(low_) < 0xff000000u || (low_ >> 32) != 0) {
    std::uint8_t carry = std::uint8_t(low_ >> 32);
    out_.push_back(std::uint8_t(cache_ + carry));
    while (--cache_size_ != 0)
      out_.push_back(std::uint8_t(0xff + carry));
    cache_ = std::uint8_t(low_ >> 24);
  }
  cache_size_++;
  low_ = (low_ & 0x00ffffffu) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish()
{
  for (int i = 0; i < 5; i++)
    shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(const std::uint8_t* data, std::size_t size)
  : data_(data), size_(size)
{
  // The first output byte of the encoder is always zero padding from the
  // initial cache; the next four seed the code register.
  if (read_byte() != 0)
    throw StreamError("malformed range coder stream");
  for (int i = 0; i < 4; i++)
    code_ = (code_ << 8) | read_byte();
}

std::uint8_t RangeDecoder::read_byte()
{
  if (pos_ >= size_)
    throw StreamError("range coder input exhausted");
  return data_[pos_++];
}

int RangeDecoder::decode_bit(BitModel& model)
{
  std::uint32_t bound = (range_ >> kProbBits) * model.prob;
  int bit;
  if (code_ < bound) {
    bit = 0;
    range_ = bound;
    model.prob += (kProbMax - model.prob) >> kUpdateShift;
  } else {
    bit = 1;
    code_ -= bound;
    range_ -= bound;
    model.prob -= model.prob >> kUpdateShift;
  }
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | read_byte();
    range_ <<= 8;
  }
  return bit;
}

}  // namespace hpsr
