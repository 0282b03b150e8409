// SPDX-License-Identifier: Apache-2.0
#include "hpsr/prior_codec.hpp"

namespace hpsr {

namespace {

// One bit per candidate child: 2^popcount(c) bits for class c.
int class_bits(int c)
{
  return class_candidate_count(c);
}

// MSB-first bit sink over a byte vector.
class BitWriter {
public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put_bits(std::uint32_t value, int n)
  {
    for (int i = n - 1; i >= 0; i--)
      put_bit((value >> i) & 1);
  }

  void put_bit(int bit)
  {
    if (fill_ == 0)
      out_.push_back(0);
    out_.back() |= std::uint8_t(bit) << (7 - fill_);
    fill_ = (fill_ + 1) & 7;
  }

  void pad_to_byte() { fill_ = 0; }

private:
  std::vector<std::uint8_t>& out_;
  int fill_ = 0;
};

}  // namespace

PriorLayout PriorLayout::of(const HierPrior& prior)
{
  PriorLayout layout;
  for (int c = 1; c < 8; c++)
    for (const auto& [r, sigma] : prior.levelK.tables[c])
      layout.levelK_keys[c].push_back(r);
  for (const IntermediatePrior& sigma : prior.intermediates) {
    std::vector<std::uint32_t> keys;
    for (const auto& [r, s] : sigma.table)
      keys.push_back(r);
    layout.intermediate_keys.push_back(std::move(keys));
  }
  return layout;
}

std::size_t PriorLayout::payload_bits() const
{
  std::size_t bits = 0;
  for (int c = 1; c < 8; c++)
    bits += levelK_keys[c].size() * std::size_t(class_bits(c));
  for (const auto& keys : intermediate_keys)
    bits += keys.size() * 8;
  return bits;
}

std::vector<std::uint8_t> encode_prior(const HierPrior& prior, PriorMode mode)
{
  std::vector<std::uint8_t> out;
  out.push_back(std::uint8_t(mode));
  // Canonical value order: level K (c ascending, r ascending), then the
  // intermediate tables from level K-1 down to 1, r ascending. Keys are
  // never written; the decoder re-derives them.
  if (mode == PriorMode::RAW) {
    BitWriter bw(out);
    for (int c = 1; c < 8; c++) {
      for (const auto& [r, sigma] : prior.levelK.tables[c])
        bw.put_bits(sigma, class_bits(c));
      bw.pad_to_byte();
    }
    for (const IntermediatePrior& sigma : prior.intermediates)
      for (const auto& [r, s] : sigma.table)
        bw.put_bits(s, 8);
    return out;
  }

  // ENTROPY: same bit sequence without padding, one adaptive model per
  // bit position within sigma.
  RangeEncoder rc;
  std::array<BitModel, 8> models{};
  bool wrote = false;
  auto code_value = [&](Pattern sigma, int bits) {
    for (int m = bits - 1; m >= 0; m--) {
      rc.encode_bit(models[m], (sigma >> m) & 1);
      wrote = true;
    }
  };
  for (int c = 1; c < 8; c++)
    for (const auto& [r, sigma] : prior.levelK.tables[c])
      code_value(sigma, class_bits(c));
  for (const IntermediatePrior& sigma : prior.intermediates)
    for (const auto& [r, s] : sigma.table)
      code_value(s, 8);
  if (wrote) {
    std::vector<std::uint8_t> payload = rc.finish();
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

PriorReader::PriorReader(const std::uint8_t* data, std::size_t size)
{
  if (size < 1)
    throw StreamError("prior/cloud desync: empty prior substream");
  if (data[0] > 1)
    throw StreamError("unknown prior mode " + std::to_string(data[0]));
  mode_ = PriorMode(data[0]);
  payload_ = data + 1;
  payload_size_ = size - 1;
}

std::uint32_t PriorReader::read_bits(int n)
{
  std::uint32_t v = 0;
  if (mode_ == PriorMode::RAW) {
    for (int i = 0; i < n; i++) {
      if (byte_pos_ >= payload_size_)
        throw StreamError("prior/cloud desync: prior substream too short");
      int bit = (payload_[byte_pos_] >> (7 - bit_pos_)) & 1;
      bit_pos_++;
      if (bit_pos_ == 8) {
        bit_pos_ = 0;
        byte_pos_++;
      }
      v = (v << 1) | std::uint32_t(bit);
    }
    return v;
  }
  if (!rc_)
    rc_ = std::make_unique<RangeDecoder>(payload_, payload_size_);
  // Bit position within sigma: the first of n bits is bit n-1.
  for (int i = n - 1; i >= 0; i--)
    v = (v << 1) | std::uint32_t(rc_->decode_bit(models_[i]));
  return v;
}

LevelKPrior PriorReader::read_levelK(
  const std::array<std::vector<std::uint32_t>, 8>& keys)
{
  try {
    LevelKPrior prior;
    for (int c = 1; c < 8; c++) {
      for (std::uint32_t r : keys[c])
        prior.tables[c][r] = Pattern(read_bits(class_bits(c)));
      if (mode_ == PriorMode::RAW && bit_pos_ != 0) {
        bit_pos_ = 0;
        byte_pos_++;
      }
    }
    return prior;
  } catch (const StreamError&) {
    throw;
  } catch (const Error& e) {
    throw StreamError(std::string("prior/cloud desync: ") + e.what());
  }
}

IntermediatePrior PriorReader::read_intermediate(
  const std::vector<std::uint32_t>& keys)
{
  try {
    IntermediatePrior prior;
    for (std::uint32_t r : keys)
      prior.table[r] = Pattern(read_bits(8));
    return prior;
  } catch (const StreamError&) {
    throw;
  } catch (const Error& e) {
    throw StreamError(std::string("prior/cloud desync: ") + e.what());
  }
}

void PriorReader::finish()
{
  if (mode_ == PriorMode::RAW) {
    std::size_t end = byte_pos_ + (bit_pos_ != 0 ? 1 : 0);
    if (end != payload_size_)
      throw StreamError("prior/cloud desync: prior substream length mismatch");
    return;
  }
  if (!rc_) {
    if (payload_size_ != 0)
      throw StreamError("prior/cloud desync: prior substream length mismatch");
    return;
  }
  if (rc_->bytes_consumed() != rc_->bytes_total())
    throw StreamError("prior/cloud desync: prior substream length mismatch");
}

HierPrior decode_prior(const std::uint8_t* data, std::size_t size,
                       const PriorLayout& layout, PriorMode mode)
{
  PriorReader reader(data, size);
  if (reader.mode() != mode)
    throw StreamError("prior mode mismatch");
  HierPrior prior;
  prior.levelK = reader.read_levelK(layout.levelK_keys);
  for (const auto& keys : layout.intermediate_keys)
    prior.intermediates.push_back(reader.read_intermediate(keys));
  reader.finish();
  return prior;
}

HierPrior decode_prior(const std::vector<std::uint8_t>& bytes,
                       const PriorLayout& layout, PriorMode mode)
{
  return decode_prior(bytes.data(), bytes.size(), layout, mode);
}

}  // namespace hpsr
