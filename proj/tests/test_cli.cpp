#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mvmds_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }

  CliRun run(const std::string& args) {
    const std::string cmd =
        "cd '" + dir_.string() + "' && '" MVMDS_CLI_PATH "' " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
  }

  bool exists(const std::string& name) const { return fs::exists(dir_ / name); }

  fs::path dir_;
};

std::string line_space(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += (j ? "," : "") + std::to_string(std::abs(i - j));
    s += '\n';
  }
  return s;
}

}  // namespace

TEST_F(Cli, GhOnLineSpaces) {
  write("x.csv", "0,1\n1,0\n");
  write("y.csv", "0,2\n2,0\n");
  const CliRun r = run("gh --x x.csv --y y.csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("mgh = 0.5\n"), std::string::npos) << r.out;
}

TEST_F(Cli, SrgwOnTwoPointSpaces) {
  write("x.csv", "0,2\n2,0\n");
  write("y.csv", "0,1\n1,0\n");
  const CliRun r = run("srgw --x x.csv --y y.csv --out c");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("srgw2 0.353553\n"), std::string::npos) << r.out;
  EXPECT_TRUE(exists("c.csv"));
  EXPECT_TRUE(exists("c.json"));
}

TEST_F(Cli, InputErrors) {
  write("bad.csv", "0,1\n1,x\n");
  EXPECT_EQ(run("srgw --x bad.csv --y bad.csv").status, 2);
  EXPECT_EQ(run("srgw --x missing.csv --y missing.csv").status, 2);
  write("d.csv", "0,1\n1,0\n");
  EXPECT_EQ(run("embed --input d.csv --manifold circle:r=1 --out e").status, 2);
  EXPECT_EQ(run("embed --input d.csv --manifold torus --seed 1 --out e").status, 2);
  EXPECT_EQ(run("nosuchcommand").status, 2);
}

TEST_F(Cli, CapacityGuard) {
  write("x.csv", line_space(12));
  const CliRun r = run("gh --x x.csv --y x.csv");
  EXPECT_EQ(r.status, 3);
}

TEST_F(Cli, NumericalFailureWritesTrace) {
  EXPECT_EQ(run("synth circle --n 12 --seed 1 --out c.csv").status, 0);
  const CliRun r = run("embed --input c.csv --manifold circle:r=1 --grid 20 --lr 1e300 "
                    "--seed 1 --out e");
  EXPECT_EQ(r.status, 4);
  EXPECT_TRUE(exists("e_trace.json"));
}

TEST_F(Cli, EmbedCircleOutputs) {
  ASSERT_EQ(run("synth circle --n 20 --seed 3 --out c.csv").status, 0);
  const CliRun r = run("embed --input c.csv --manifold circle:r=1 --learn-scale --grid 100 "
                    "--lr 0.01 --seed 42 --out emb");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("stress "), std::string::npos) << r.out;
  for (const char* f : {"emb.csv", "emb.svg", "emb.json", "emb_hist.csv"}) {
    EXPECT_TRUE(exists(f)) << f;
  }
  std::ifstream hist(dir_ / "emb_hist.csv");
  int lines = 0;
  for (std::string l; std::getline(hist, l);) ++lines;
  EXPECT_EQ(lines, 21);
}

TEST_F(Cli, EmbedSphereHasThreeCoordinates) {
  ASSERT_EQ(run("synth cities --n 10 --seed 2 --out cities.csv").status, 0);
  ASSERT_EQ(run("embed --input cities.csv --manifold sphere:r=6371 --lr 0.1 --grid 50 "
                "--seed 42 --out s")
                .status,
            0);
  std::ifstream in(dir_ / "s.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "id,coord_0,coord_1,coord_2,scale");
  EXPECT_FALSE(exists("s_hist.csv"));
}

TEST_F(Cli, RedistrictOutputs) {
  ASSERT_EQ(run("synth ensemble --side 6 --n 30 --seed 5 --out plans.csv").status, 0);
  ASSERT_EQ(run("redistrict --plans plans.csv --grid 200 --seed 7 --out red").status, 0);
  for (int k = 0; k < 8; ++k) {
    EXPECT_TRUE(exists("red/arc_" + std::to_string(k) + ".csv")) << k;
  }
  EXPECT_TRUE(exists("red/scatter.svg"));
  EXPECT_TRUE(exists("red/histogram.csv"));
}

TEST_F(Cli, SameInvocationSameBytes) {
  ASSERT_EQ(run("synth sphere --n 12 --seed 4 --out s.csv").status, 0);
  const std::string args = "embed --input s.csv --manifold sphere:r=1 --grid 60 --seed 8 --out ";
  ASSERT_EQ(run(args + "a").status, 0);
  ASSERT_EQ(run("--threads 3 " + args + "b").status, 0);
  const auto slurp = [&](const std::string& f) {
    std::ifstream in(dir_ / f, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_EQ(slurp("a.svg"), slurp("b.svg"));
}
