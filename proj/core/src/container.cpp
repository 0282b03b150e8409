// SPDX-License-Identifier: Apache-2.0
#include "hpsr/container.hpp"

#include <cstring>
#include <fstream>

#include "hpsr/pyramid.hpp"

namespace hpsr {

namespace {

void put_u16_le(std::vector<std::uint8_t>& out, std::uint16_t v)
{
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
}

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v)
{
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 24));
}

std::uint16_t get_u16_le(const std::uint8_t* p)
{
  return std::uint16_t(p[0] | (std::uint16_t(p[1]) << 8));
}

std::uint32_t get_u32_le(const std::uint8_t* p)
{
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8)
    | (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> write_container(const Container& c)
{
  const ContainerHeader& h = c.header;
  if (h.q.num > 0xffff || h.q.den > 0xffff)
    throw ArgError("q exceeds the 16-bit header fields: " + h.q.str());
  if (h.base_size != c.base.size() || h.prior_size != c.prior.size())
    throw ArgError("header substream lengths disagree with payloads");

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + c.base.size() + c.prior.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(h.version);
  out.push_back(h.bitdepth);
  put_u16_le(out, std::uint16_t(h.q.num));
  put_u16_le(out, std::uint16_t(h.q.den));
  out.push_back(h.K);
  out.push_back(h.Kprime);
  out.push_back(std::uint8_t(h.nbrK));
  out.push_back(std::uint8_t(h.nbrI));
  out.push_back(h.base_coder_version);
  out.push_back(std::uint8_t(h.prior_mode));
  put_u32_le(out, h.base_size);
  put_u32_le(out, h.prior_size);
  out.insert(out.end(), c.base.begin(), c.base.end());
  out.insert(out.end(), c.prior.begin(), c.prior.end());
  return out;
}

Container read_container(const std::uint8_t* data, std::size_t size)
{
  if (size < kHeaderSize)
    throw ParseError("truncated header", size);
  if (std::memcmp(data, kMagic, 4) != 0)
    throw ParseError("not an HPSR stream", 0);

  Container c;
  ContainerHeader& h = c.header;
  h.version = data[4];
  if (h.version != kFormatVersion)
    throw ParseError("unsupported format version "
                     + std::to_string(h.version), 4);
  h.bitdepth = data[5];
  if (h.bitdepth < 1 || h.bitdepth > kMaxBitdepth)
    throw ParseError("bitdepth out of range", 5);

  std::uint16_t q_num = get_u16_le(data + 6);
  std::uint16_t q_den = get_u16_le(data + 8);
  if (q_num == 0 || q_den == 0 || q_num >= q_den)
    throw ParseError("q out of range (0, 1)", 6);
  h.q = Rational(q_num, q_den);
  if (h.q.num != q_num || h.q.den != q_den)
    throw ParseError("q not in reduced form", 6);

  h.K = data[10];
  h.Kprime = data[11];
  if (h.K < 1)
    throw ParseError("K out of range", 10);
  PyramidParams params = derive_params(h.q, h.K, 0);
  if (h.K > params.L + 1)
    throw ParseError("K out of range", 10);
  if (h.Kprime > params.L + 1 - h.K)
    throw ParseError("K' out of range", 11);

  try {
    NeighborSet::from_wire(data[12]);
    NeighborSet::from_wire(data[13]);
  } catch (const Error&) {
    throw ParseError("unknown neighborhood id", 12);
  }
  h.nbrK = NeighborSetId(data[12]);
  h.nbrI = NeighborSetId(data[13]);

  h.base_coder_version = data[14];
  if (h.base_coder_version != kBaseCoderVersion)
    throw ParseError("unsupported base coder version "
                     + std::to_string(h.base_coder_version), 14);
  if (data[15] > 1)
    throw ParseError("unknown prior mode " + std::to_string(data[15]), 15);
  h.prior_mode = PriorMode(data[15]);

  h.base_size = get_u32_le(data + 16);
  h.prior_size = get_u32_le(data + 20);
  if (kHeaderSize + std::uint64_t(h.base_size) + h.prior_size != size)
    throw ParseError("substream lengths disagree with file size", 16);

  c.base.assign(data + kHeaderSize, data + kHeaderSize + h.base_size);
  c.prior.assign(data + kHeaderSize + h.base_size,
                 data + kHeaderSize + h.base_size + h.prior_size);
  return c;
}

Container read_container(const std::vector<std::uint8_t>& bytes)
{
  return read_container(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> load_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw StreamError("cannot open file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad())
    throw StreamError("read failure: " + path);
  return bytes;
}

void save_file(const std::string& path, const std::vector<std::uint8_t>& bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw StreamError("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out)
    throw StreamError("write failure: " + path);
}

}  // namespace hpsr
