// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the installed command line interface. HPSR_BIN is
// injected by the build and points at the freshly built binary.

#include <doctest.h>

#ifdef HPSR_BIN

#include <sstream>
#include <string>

#include "hpsr/container.hpp"
#include "hpsr/pipeline.hpp"
#include "hpsr/ply_io.hpp"

#include "testutil.hpp"

using namespace hpsr;
using testutil::run_cmd;

namespace {

const std::string kBin = HPSR_BIN;

struct CliFixture {
  std::string dir = testutil::temp_dir();
  std::string input = dir + "/input.ply";
  VoxelCloud cloud;

  CliFixture()
  {
    cloud = testutil::surface_cloud(6, 404);
    write_ply_file(input, cloud, PlyFormat::BINARY);
  }
};

int count_lines_starting(const std::string& text, const std::string& prefix)
{
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0)
      n++;
  return n;
}

}  // namespace

TEST_CASE("cli encode and decode round trip")
{
  CliFixture fx;
  std::string stream = fx.dir + "/a.hpsr";
  std::string out_ply = fx.dir + "/a.ply";

  auto enc = run_cmd(kBin + " encode " + fx.input + " " + stream
                     + " --q 1/8 --bitdepth 6");
  REQUIRE(enc.exit_code == 0);
  CHECK(enc.out.find("base_bits=") != std::string::npos);
  CHECK(enc.out.find("prior_bits=") != std::string::npos);
  CHECK(enc.out.find("bpp=") != std::string::npos);
  REQUIRE(testutil::file_exists(stream));

  auto dec = run_cmd(kBin + " decode " + stream + " " + out_ply);
  REQUIRE(dec.exit_code == 0);
  REQUIRE(testutil::file_exists(out_ply));

  // The written cloud equals the library's own decode of the container.
  Container c = read_container(load_file(stream));
  VoxelCloud expect = decode(c);
  PlyCloud got = read_ply_file(out_ply);
  REQUIRE(got.positions.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); i++) {
    CHECK(got.positions[i][0] == double(expect.points[i].x));
    CHECK(got.positions[i][1] == double(expect.points[i].y));
    CHECK(got.positions[i][2] == double(expect.points[i].z));
  }
}

TEST_CASE("cli scale flag maps onto q")
{
  CliFixture fx;
  std::string via_s = fx.dir + "/s.hpsr";
  std::string via_q = fx.dir + "/q.hpsr";
  REQUIRE(run_cmd(kBin + " encode " + fx.input + " " + via_s
                  + " --s 1/2 --bitdepth 6").exit_code == 0);
  REQUIRE(run_cmd(kBin + " encode " + fx.input + " " + via_q
                  + " --q 1/8 --bitdepth 6").exit_code == 0);
  CHECK(load_file(via_s) == load_file(via_q));
}

TEST_CASE("cli usage errors exit with 1")
{
  CliFixture fx;
  std::string out = fx.dir + "/x.hpsr";

  // No rate flag at all.
  CHECK(run_cmd(kBin + " encode " + fx.input + " " + out).exit_code == 1);
  // Conflicting rate flags.
  CHECK(run_cmd(kBin + " encode " + fx.input + " " + out
                + " --q 1/8 --s 1/2").exit_code == 1);
  // Unknown subcommand.
  CHECK(run_cmd(kBin + " transmogrify").exit_code == 1);
  // Missing required positional.
  CHECK(run_cmd(kBin + " encode").exit_code == 1);
  // Bad neighborhood id.
  CHECK(run_cmd(kBin + " encode " + fx.input + " " + out
                + " --q 1/8 --nbrK 7").exit_code == 1);
  // Help succeeds.
  CHECK(run_cmd(kBin + " --help").exit_code == 0);
}

TEST_CASE("cli data errors exit with 2 and write nothing")
{
  CliFixture fx;
  std::string stream = fx.dir + "/b.hpsr";
  REQUIRE(run_cmd(kBin + " encode " + fx.input + " " + stream
                  + " --q 1/8 --bitdepth 6").exit_code == 0);

  // Truncate the container.
  std::vector<std::uint8_t> bytes = load_file(stream);
  bytes.resize(bytes.size() / 2);
  std::string broken = fx.dir + "/broken.hpsr";
  save_file(broken, bytes);

  std::string out_ply = fx.dir + "/broken.ply";
  auto dec = run_cmd(kBin + " decode " + broken + " " + out_ply);
  CHECK(dec.exit_code == 2);
  CHECK_FALSE(testutil::file_exists(out_ply));

  // Unreadable input.
  CHECK(run_cmd(kBin + " encode " + fx.dir + "/absent.ply " + stream
                + " --q 1/8").exit_code == 2);

  // Not a PLY.
  save_file(fx.dir + "/junk.ply", {1, 2, 3, 4});
  CHECK(run_cmd(kBin + " encode " + fx.dir + "/junk.ply " + stream
                + " --q 1/8").exit_code == 2);
}

TEST_CASE("cli eval prints the csv schema")
{
  CliFixture fx;
  auto ev = run_cmd(kBin + " eval " + fx.input + " " + fx.input
                    + " --normals estimate:12");
  REQUIRE(ev.exit_code == 0);
  CHECK(ev.out.find("rate_id,bpp,base_bits,prior_bits,d1_psnr,d2_psnr")
        != std::string::npos);
  // Identical clouds: zero error, infinite PSNR.
  CHECK(ev.out.find("inf") != std::string::npos);

  // D2 without stored or estimated normals is refused.
  CHECK(run_cmd(kBin + " eval " + fx.input + " " + fx.input).exit_code == 2);

  // With a stream, bpp comes from the container size.
  std::string stream = fx.dir + "/c.hpsr";
  REQUIRE(run_cmd(kBin + " encode " + fx.input + " " + stream
                  + " --q 1/8 --bitdepth 6").exit_code == 0);
  auto ev2 = run_cmd(kBin + " eval " + fx.input + " " + fx.input
                     + " --normals estimate:12 --stream " + stream);
  REQUIRE(ev2.exit_code == 0);
  CHECK(ev2.out.find("eval,0.000000,") == std::string::npos);
}

TEST_CASE("cli sweep emits ordered rate rows")
{
  CliFixture fx;
  auto sw = run_cmd(kBin + " sweep " + fx.input
                    + " --bitdepth 6 --s 1/2 3/4 --no-bd");
  REQUIRE(sw.exit_code == 0);
  CHECK(count_lines_starting(sw.out, "rate_id,") == 1);
  CHECK(count_lines_starting(sw.out, "r01.hpsr,") == 1);
  CHECK(count_lines_starting(sw.out, "r01.naive,") == 1);
  CHECK(count_lines_starting(sw.out, "r02.hpsr,") == 1);
  CHECK(count_lines_starting(sw.out, "r02.naive,") == 1);
  // Rate order is preserved in the output.
  CHECK(sw.out.find("r01.hpsr") < sw.out.find("r02.hpsr"));

  // BD-rate needs at least four rate points.
  CHECK(run_cmd(kBin + " sweep " + fx.input
                + " --bitdepth 6 --s 1/2 3/4 --bd").exit_code == 1);

  // CSV lands in a file with --out.
  std::string csv = fx.dir + "/sweep.csv";
  REQUIRE(run_cmd(kBin + " sweep " + fx.input
                  + " --bitdepth 6 --s 1/2 3/4 --no-bd --out " + csv)
            .exit_code == 0);
  REQUIRE(testutil::file_exists(csv));
  std::vector<std::uint8_t> bytes = load_file(csv);
  std::string text(bytes.begin(), bytes.end());
  CHECK(count_lines_starting(text, "r02.naive,") == 1);
}

TEST_CASE("cli respects HPSR_THREADS and stays deterministic")
{
  CliFixture fx;
  std::string one = fx.dir + "/t1.hpsr";
  std::string many = fx.dir + "/t4.hpsr";
  REQUIRE(run_cmd("HPSR_THREADS=1 " + kBin + " encode " + fx.input + " "
                  + one + " --q 1/8 --bitdepth 6").exit_code == 0);
  REQUIRE(run_cmd("HPSR_THREADS=4 " + kBin + " encode " + fx.input + " "
                  + many + " --q 1/8 --bitdepth 6").exit_code == 0);
  CHECK(load_file(one) == load_file(many));
}

#endif  // HPSR_BIN
