// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "hpsr/ply_io.hpp"

#include "testutil.hpp"

using namespace hpsr;

namespace {

std::vector<std::uint8_t> as_bytes(const std::string& s)
{
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("minimal ascii vertex element")
{
  std::string text =
    "ply\n"
    "format ascii 1.0\n"
    "element vertex 2\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "end_header\n"
    "1 2 3\n"
    "-4.5 0 7e1\n";
  PlyCloud cloud = read_ply(as_bytes(text));
  REQUIRE(cloud.positions.size() == 2);
  CHECK(cloud.positions[0] == std::array<double, 3>{1, 2, 3});
  CHECK(cloud.positions[1] == std::array<double, 3>{-4.5, 0, 70});
  CHECK_FALSE(cloud.has_normals());
}

TEST_CASE("unknown properties and elements are skipped")
{
  std::string text =
    "ply\n"
    "comment made by nobody\n"
    "format ascii 1.0\n"
    "element vertex 2\n"
    "property double x\n"
    "property double y\n"
    "property double z\n"
    "property uchar red\n"
    "property uchar green\n"
    "property uchar blue\n"
    "element face 1\n"
    "property list uchar int vertex_indices\n"
    "end_header\n"
    "0 0 0 255 0 0\n"
    "9 9 9 0 255 0\n"
    "3 0 1 0\n";
  PlyCloud cloud = read_ply(as_bytes(text));
  REQUIRE(cloud.positions.size() == 2);
  CHECK(cloud.positions[1] == std::array<double, 3>{9, 9, 9});
}

TEST_CASE("normals are picked up when present")
{
  std::string text =
    "ply\n"
    "format ascii 1.0\n"
    "element vertex 1\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "property float nx\n"
    "property float ny\n"
    "property float nz\n"
    "end_header\n"
    "1 1 1 0 0 1\n";
  PlyCloud cloud = read_ply(as_bytes(text));
  REQUIRE(cloud.has_normals());
  CHECK(cloud.normals[0] == std::array<double, 3>{0, 0, 1});
}

TEST_CASE("binary and ascii writers agree")
{
  VoxelCloud cloud = testutil::rng_cloud(777, 8, 42);
  PlyCloud from_ascii = read_ply(write_ply(cloud, PlyFormat::ASCII));
  PlyCloud from_binary = read_ply(write_ply(cloud, PlyFormat::BINARY));
  REQUIRE(from_ascii.positions.size() == cloud.size());
  REQUIRE(from_binary.positions.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); i++) {
    CHECK(from_ascii.positions[i] == from_binary.positions[i]);
    CHECK(from_binary.positions[i][0] == double(cloud.points[i].x));
    CHECK(from_binary.positions[i][1] == double(cloud.points[i].y));
    CHECK(from_binary.positions[i][2] == double(cloud.points[i].z));
  }
}

TEST_CASE("file round trip")
{
  std::string dir = testutil::temp_dir();
  VoxelCloud cloud = testutil::rng_cloud(500, 7, 9);
  write_ply_file(dir + "/c.ply", cloud, PlyFormat::BINARY);
  PlyCloud back = read_ply_file(dir + "/c.ply");
  REQUIRE(back.positions.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); i++) {
    CHECK(back.positions[i][0] == double(cloud.points[i].x));
    CHECK(back.positions[i][1] == double(cloud.points[i].y));
    CHECK(back.positions[i][2] == double(cloud.points[i].z));
  }
}

TEST_CASE("parser rejects malformed input")
{
  CHECK_THROWS_AS(read_ply(as_bytes("not a ply\n")), ParseError);
  CHECK_THROWS_AS(read_ply(as_bytes("ply\nformat ascii 1.0\n")), ParseError);
  CHECK_THROWS_AS(
    read_ply(as_bytes("ply\nformat binary_big_endian 1.0\n"
                      "element vertex 1\nproperty float x\n"
                      "property float y\nproperty float z\n"
                      "end_header\n")),
    ParseError);
  // No vertex element.
  CHECK_THROWS_AS(
    read_ply(as_bytes("ply\nformat ascii 1.0\nelement face 0\n"
                      "property list uchar int vertex_indices\n"
                      "end_header\n")),
    ParseError);
  // Vertex without coordinates.
  CHECK_THROWS_AS(
    read_ply(as_bytes("ply\nformat ascii 1.0\nelement vertex 1\n"
                      "property float intensity\nend_header\n0.5\n")),
    ParseError);
  // Too few rows.
  CHECK_THROWS_AS(
    read_ply(as_bytes("ply\nformat ascii 1.0\nelement vertex 3\n"
                      "property float x\nproperty float y\n"
                      "property float z\nend_header\n1 1 1\n")),
    ParseError);
  // Garbage number.
  CHECK_THROWS_AS(
    read_ply(as_bytes("ply\nformat ascii 1.0\nelement vertex 1\n"
                      "property float x\nproperty float y\n"
                      "property float z\nend_header\n1 oops 1\n")),
    ParseError);
  // Truncated binary body.
  VoxelCloud cloud = testutil::rng_cloud(100, 6, 77);
  std::vector<std::uint8_t> bin = write_ply(cloud, PlyFormat::BINARY);
  bin.resize(bin.size() - 5);
  CHECK_THROWS_AS(read_ply(bin), ParseError);
}

TEST_CASE("voxelize maps extremes to the grid corners")
{
  std::vector<std::array<double, 3>> pts = {{0, 0, 0}, {10, 20, 40}};
  VoxelizeResult r = voxelize(pts, 3);
  REQUIRE(r.cloud.size() == 2);
  // Scale = 7/40: (1.75, 3.5, 7) rounds to (2, 4, 7).
  CHECK(r.cloud.points[0] == Voxel{0, 0, 0});
  CHECK(r.cloud.points[1] == Voxel{2, 4, 7});
  CHECK(r.scale == doctest::Approx(7.0 / 40.0));

  // Reverse map restores the corners of the original bounding box.
  CHECK(r.cloud.points[1].z / r.scale + r.offset[2] == doctest::Approx(40.0));
}

TEST_CASE("voxelize identity on grid-filling integers")
{
  VoxelCloud cloud = testutil::solid_box(8, 3);  // spans [0,7]^3
  std::vector<std::array<double, 3>> pts;
  for (const Voxel& v : cloud.points)
    pts.push_back({double(v.x), double(v.y), double(v.z)});
  VoxelizeResult r = voxelize(pts, 3);
  CHECK(r.cloud == cloud);
  CHECK(r.scale == doctest::Approx(1.0));
}

TEST_CASE("voxelize collapses duplicates and zero extent")
{
  std::vector<std::array<double, 3>> dup = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  VoxelizeResult r = voxelize(dup, 4);
  CHECK(r.cloud.size() == 1);
  CHECK(r.cloud.points[0] == Voxel{0, 0, 0});
}

TEST_CASE("voxelize is idempotent at fixed bitdepth")
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-50.0, 120.0);
  std::vector<std::array<double, 3>> pts(4000);
  for (auto& p : pts)
    p = {coord(rng), coord(rng), coord(rng)};
  VoxelizeResult once = voxelize(pts, 6);
  std::vector<std::array<double, 3>> again;
  for (const Voxel& v : once.cloud.points)
    again.push_back({double(v.x), double(v.y), double(v.z)});
  VoxelizeResult twice = voxelize(again, 6);
  CHECK(twice.cloud == once.cloud);
}
