// SPDX-License-Identifier: Apache-2.0
#include "hpsr/ply_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "hpsr/container.hpp"
#include "hpsr/geometry.hpp"

namespace hpsr {

namespace {

enum class ScalarType { I8, U8, I16, U16, I32, U32, F32, F64 };

std::size_t scalar_size(ScalarType t)
{
  switch (t) {
  case ScalarType::I8:
  case ScalarType::U8: return 1;
  case ScalarType::I16:
  case ScalarType::U16: return 2;
  case ScalarType::I32:
  case ScalarType::U32:
  case ScalarType::F32: return 4;
  case ScalarType::F64: return 8;
  }
  return 0;
}

ScalarType parse_scalar_type(const std::string& word, std::size_t line)
{
  if (word == "char" || word == "int8") return ScalarType::I8;
  if (word == "uchar" || word == "uint8") return ScalarType::U8;
  if (word == "short" || word == "int16") return ScalarType::I16;
  if (word == "ushort" || word == "uint16") return ScalarType::U16;
  if (word == "int" || word == "int32") return ScalarType::I32;
  if (word == "uint" || word == "uint32") return ScalarType::U32;
  if (word == "float" || word == "float32") return ScalarType::F32;
  if (word == "double" || word == "float64") return ScalarType::F64;
  throw ParseError("unknown PLY property type '" + word + "'", line);
}

double read_scalar(const std::uint8_t* p, ScalarType t)
{
  switch (t) {
  case ScalarType::I8: return double(std::int8_t(p[0]));
  case ScalarType::U8: return double(p[0]);
  case ScalarType::I16: {
    std::int16_t v;
    std::memcpy(&v, p, 2);
    return double(v);
  }
  case ScalarType::U16: {
    std::uint16_t v;
    std::memcpy(&v, p, 2);
    return double(v);
  }
  case ScalarType::I32: {
    std::int32_t v;
    std::memcpy(&v, p, 4);
    return double(v);
  }
  case ScalarType::U32: {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return double(v);
  }
  case ScalarType::F32: {
    float v;
    std::memcpy(&v, p, 4);
    return double(v);
  }
  case ScalarType::F64: {
    double v;
    std::memcpy(&v, p, 8);
    return v;
  }
  }
  return 0.0;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::F32;
  bool is_list = false;
  ScalarType count_type = ScalarType::U8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> props;
};

struct PlyHeader {
  PlyFormat format = PlyFormat::ASCII;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
  std::size_t header_lines = 0;
};

std::vector<std::string> split_words(const std::string& line)
{
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      i++;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t')
      i++;
    if (i > start)
      words.push_back(line.substr(start, i - start));
  }
  return words;
}

PlyHeader parse_header(const std::uint8_t* data, std::size_t size)
{
  PlyHeader header;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_format = false;
  bool done = false;
  while (!done) {
    if (pos >= size)
      throw ParseError("PLY header not terminated", line_no);
    std::size_t eol = pos;
    while (eol < size && data[eol] != '\n')
      eol++;
    if (eol >= size)
      throw ParseError("PLY header not terminated", line_no);
    std::string line(reinterpret_cast<const char*>(data + pos), eol - pos);
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    pos = eol + 1;
    line_no++;

    std::vector<std::string> words = split_words(line);
    if (line_no == 1) {
      if (words.size() != 1 || words[0] != "ply")
        throw ParseError("not a PLY file", 1);
      continue;
    }
    if (words.empty())
      continue;
    const std::string& kw = words[0];
    if (kw == "comment" || kw == "obj_info")
      continue;
    if (kw == "format") {
      if (words.size() < 2)
        throw ParseError("malformed format line", line_no);
      if (words[1] == "ascii")
        header.format = PlyFormat::ASCII;
      else if (words[1] == "binary_little_endian")
        header.format = PlyFormat::BINARY;
      else
        throw ParseError("unsupported PLY format '" + words[1] + "'",
                         line_no);
      saw_format = true;
      continue;
    }
    if (kw == "element") {
      if (words.size() != 3)
        throw ParseError("malformed element line", line_no);
      Element e;
      e.name = words[1];
      try {
        e.count = std::stoull(words[2]);
      } catch (const std::exception&) {
        throw ParseError("bad element count '" + words[2] + "'", line_no);
      }
      header.elements.push_back(std::move(e));
      continue;
    }
    if (kw == "property") {
      if (header.elements.empty())
        throw ParseError("property before any element", line_no);
      Property p;
      if (words.size() == 3) {
        p.type = parse_scalar_type(words[1], line_no);
        p.name = words[2];
      } else if (words.size() == 5 && words[1] == "list") {
        p.is_list = true;
        p.count_type = parse_scalar_type(words[2], line_no);
        p.type = parse_scalar_type(words[3], line_no);
        p.name = words[4];
      } else {
        throw ParseError("malformed property line", line_no);
      }
      header.elements.back().props.push_back(std::move(p));
      continue;
    }
    if (kw == "end_header") {
      done = true;
      continue;
    }
    throw ParseError("unknown PLY header keyword '" + kw + "'", line_no);
  }
  if (!saw_format)
    throw ParseError("PLY header lacks a format line", line_no);
  header.body_offset = pos;
  header.header_lines = line_no;
  return header;
}

// Column indices of x/y/z (required) and nx/ny/nz (all three or none).
struct VertexColumns {
  int x = -1, y = -1, z = -1;
  int nx = -1, ny = -1, nz = -1;
  bool has_normals() const { return nx >= 0 && ny >= 0 && nz >= 0; }
};

VertexColumns find_columns(const Element& vertex)
{
  VertexColumns cols;
  for (std::size_t i = 0; i < vertex.props.size(); i++) {
    const Property& p = vertex.props[i];
    if (p.is_list)
      continue;
    if (p.name == "x") cols.x = int(i);
    else if (p.name == "y") cols.y = int(i);
    else if (p.name == "z") cols.z = int(i);
    else if (p.name == "nx") cols.nx = int(i);
    else if (p.name == "ny") cols.ny = int(i);
    else if (p.name == "nz") cols.nz = int(i);
  }
  if (cols.x < 0 || cols.y < 0 || cols.z < 0)
    throw ParseError("vertex element lacks x/y/z properties", 0);
  return cols;
}

double parse_ascii_number(const std::string& word, std::size_t line)
{
  const char* s = word.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end != s + word.size() || word.empty())
    throw ParseError("non-numeric value '" + word + "'", line);
  return v;
}

PlyCloud read_ascii_body(const std::uint8_t* data, std::size_t size,
                         const PlyHeader& header)
{
  PlyCloud cloud;
  std::size_t pos = header.body_offset;
  std::size_t line_no = header.header_lines;
  auto next_line = [&]() -> std::vector<std::string> {
    while (pos < size) {
      std::size_t eol = pos;
      while (eol < size && data[eol] != '\n')
        eol++;
      std::string line(reinterpret_cast<const char*>(data + pos), eol - pos);
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      pos = eol < size ? eol + 1 : size;
      line_no++;
      std::vector<std::string> words = split_words(line);
      if (!words.empty())
        return words;
    }
    throw ParseError("unexpected end of file", line_no);
  };

  for (const Element& elem : header.elements) {
    bool is_vertex = elem.name == "vertex";
    VertexColumns cols;
    if (is_vertex) {
      cols = find_columns(elem);
      cloud.positions.reserve(elem.count);
      if (cols.has_normals())
        cloud.normals.reserve(elem.count);
    }
    for (std::size_t row = 0; row < elem.count; row++) {
      std::vector<std::string> words = next_line();
      std::size_t w = 0;
      std::array<double, 3> xyz{};
      std::array<double, 3> n{};
      for (std::size_t pi = 0; pi < elem.props.size(); pi++) {
        const Property& prop = elem.props[pi];
        if (prop.is_list) {
          if (w >= words.size())
            throw ParseError("truncated row", line_no);
          double cnt = parse_ascii_number(words[w++], line_no);
          if (cnt < 0 || cnt > double(words.size()))
            throw ParseError("bad list length", line_no);
          w += std::size_t(cnt);
          if (w > words.size())
            throw ParseError("truncated row", line_no);
          continue;
        }
        if (w >= words.size())
          throw ParseError("truncated row", line_no);
        if (is_vertex) {
          int idx = int(pi);
          if (idx == cols.x || idx == cols.y || idx == cols.z
              || idx == cols.nx || idx == cols.ny || idx == cols.nz) {
            double v = parse_ascii_number(words[w], line_no);
            if (idx == cols.x) xyz[0] = v;
            else if (idx == cols.y) xyz[1] = v;
            else if (idx == cols.z) xyz[2] = v;
            else if (idx == cols.nx) n[0] = v;
            else if (idx == cols.ny) n[1] = v;
            else n[2] = v;
          }
        }
        w++;
      }
      if (is_vertex) {
        cloud.positions.push_back(xyz);
        if (cols.has_normals())
          cloud.normals.push_back(n);
      }
    }
  }
  return cloud;
}

PlyCloud read_binary_body(const std::uint8_t* data, std::size_t size,
                          const PlyHeader& header)
{
  PlyCloud cloud;
  std::size_t pos = header.body_offset;
  auto need = [&](std::size_t n) {
    if (pos + n > size)
      throw ParseError("unexpected end of file", pos);
  };

  for (const Element& elem : header.elements) {
    bool is_vertex = elem.name == "vertex";
    VertexColumns cols;
    if (is_vertex) {
      cols = find_columns(elem);
      cloud.positions.reserve(elem.count);
      if (cols.has_normals())
        cloud.normals.reserve(elem.count);
    }
    for (std::size_t row = 0; row < elem.count; row++) {
      std::array<double, 3> xyz{};
      std::array<double, 3> n{};
      for (std::size_t pi = 0; pi < elem.props.size(); pi++) {
        const Property& prop = elem.props[pi];
        if (prop.is_list) {
          need(scalar_size(prop.count_type));
          double cnt = read_scalar(data + pos, prop.count_type);
          pos += scalar_size(prop.count_type);
          if (cnt < 0 || cnt > double(size))
            throw ParseError("bad list length", pos);
          need(std::size_t(cnt) * scalar_size(prop.type));
          pos += std::size_t(cnt) * scalar_size(prop.type);
          continue;
        }
        need(scalar_size(prop.type));
        if (is_vertex) {
          int idx = int(pi);
          if (idx == cols.x) xyz[0] = read_scalar(data + pos, prop.type);
          else if (idx == cols.y) xyz[1] = read_scalar(data + pos, prop.type);
          else if (idx == cols.z) xyz[2] = read_scalar(data + pos, prop.type);
          else if (idx == cols.nx) n[0] = read_scalar(data + pos, prop.type);
          else if (idx == cols.ny) n[1] = read_scalar(data + pos, prop.type);
          else if (idx == cols.nz) n[2] = read_scalar(data + pos, prop.type);
        }
        pos += scalar_size(prop.type);
      }
      if (is_vertex) {
        cloud.positions.push_back(xyz);
        if (cols.has_normals())
          cloud.normals.push_back(n);
      }
    }
  }
  return cloud;
}

}  // namespace

PlyCloud read_ply(const std::uint8_t* data, std::size_t size)
{
  PlyHeader header = parse_header(data, size);
  bool has_vertex = false;
  for (const Element& e : header.elements)
    if (e.name == "vertex")
      has_vertex = true;
  if (!has_vertex)
    throw ParseError("missing vertex element", header.header_lines);
  if (header.format == PlyFormat::ASCII)
    return read_ascii_body(data, size, header);
  return read_binary_body(data, size, header);
}

PlyCloud read_ply(const std::vector<std::uint8_t>& bytes)
{
  return read_ply(bytes.data(), bytes.size());
}

PlyCloud read_ply_file(const std::string& path)
{
  return read_ply(load_file(path));
}

std::vector<std::uint8_t> write_ply(const VoxelCloud& cloud, PlyFormat format)
{
  std::string header = "ply\nformat ";
  header += format == PlyFormat::ASCII ? "ascii" : "binary_little_endian";
  header += " 1.0\nelement vertex " + std::to_string(cloud.size())
    + "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";

  std::vector<std::uint8_t> out(header.begin(), header.end());
  if (format == PlyFormat::ASCII) {
    std::string body;
    for (const Voxel& v : cloud.points) {
      body += std::to_string(v.x);
      body += ' ';
      body += std::to_string(v.y);
      body += ' ';
      body += std::to_string(v.z);
      body += '\n';
    }
    out.insert(out.end(), body.begin(), body.end());
    return out;
  }
  out.reserve(out.size() + cloud.size() * 12);
  for (const Voxel& v : cloud.points) {
    float f[3] = {float(v.x), float(v.y), float(v.z)};
    const std::uint8_t* p = reinterpret_cast<const std::uint8_t*>(f);
    out.insert(out.end(), p, p + 12);
  }
  return out;
}

void write_ply_file(const std::string& path, const VoxelCloud& cloud,
                    PlyFormat format)
{
  save_file(path, write_ply(cloud, format));
}

VoxelizeResult voxelize(const std::vector<std::array<double, 3>>& positions,
                        int bitdepth)
{
  if (positions.empty())
    throw ArgError("empty cloud");
  if (bitdepth < 1 || bitdepth > kMaxBitdepth)
    throw ArgError("bitdepth out of range [1, 21]");

  std::array<double, 3> lo = positions[0];
  std::array<double, 3> hi = positions[0];
  for (const auto& p : positions)
    for (int a = 0; a < 3; a++) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  double extent = 0.0;
  for (int a = 0; a < 3; a++)
    extent = std::max(extent, hi[a] - lo[a]);

  VoxelizeResult result;
  result.offset = lo;
  double peak = double((std::int64_t(1) << bitdepth) - 1);
  result.scale = extent > 0 ? peak / extent : 1.0;

  std::vector<Voxel> pts;
  pts.reserve(positions.size());
  for (const auto& p : positions) {
    Voxel v;
    v.x = std::int32_t(std::floor((p[0] - lo[0]) * result.scale + 0.5));
    v.y = std::int32_t(std::floor((p[1] - lo[1]) * result.scale + 0.5));
    v.z = std::int32_t(std::floor((p[2] - lo[2]) * result.scale + 0.5));
    pts.push_back(v);
  }
  result.cloud = VoxelCloud::from_unsorted(std::move(pts), bitdepth);
  return result;
}

}  // namespace hpsr
