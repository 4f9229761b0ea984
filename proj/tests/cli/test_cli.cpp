#include <gtest/gtest.h>
#include <sys/wait.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "solgas/errors.hpp"

using namespace solgas;
using namespace solgas::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(SOLGAS_SCRATCH) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
  fs::create_directories(dir);
  return dir / name;
}

// Runs the installed binary; returns its exit status and captures stderr.
int tool(const std::string& args, std::string* err = nullptr) {
  const fs::path log = scratch("stderr.txt");
  const std::string cmd = std::string(SOLGAS_TOOL) + " " + args + " > /dev/null 2> " + log.string();
  const int status = std::system(cmd.c_str());
  if (err) {
    std::ifstream in(log);
    *err = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(ComplexText, ParsesAndRoundTrips) {
  EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0));
  EXPECT_EQ(parse_complex("-2i"), Complex(0, -2));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("0.3-0.1i"), Complex(0.3, -0.1));
  EXPECT_EQ(parse_complex("1e-3+2e-2i"), Complex(1e-3, 2e-2));
  EXPECT_EQ(parse_complex("-1e+2-1E-3i"), Complex(-100, -1e-3));
  EXPECT_THROW(parse_complex("1+x"), ValidationError);
  EXPECT_THROW(parse_complex(""), ValidationError);
  for (const Complex z : {Complex(0.1, -0.2), Complex(-1e-300, 3.5e200), Complex(1.0 / 3.0, 2.0 / 7.0)}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(Numbers, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-10), "1e-10");
  for (const double v : {1.0 / 3.0, 2.718281828459045, -1.2345678901234567e-200, 5e-324}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
}

TEST(Config, YamlWithNestedSections) {
  const auto path = scratch("run.yaml");
  std::ofstream(path) << "command: tau\nhierarchy: toda\ngeometry: disc\nradius: 0.5\n"
                         "lattice: [\"1+0.2i\", \"-0.8+0.9i\", [0.1, -1.2]]\n"
                         "times:\n  t1: 0.05+0.01i\n  tbar1: 0.05-0.01i\nm: 2\nseed: 9\n";
  const RunConfig c = load_config(path.string());
  EXPECT_EQ(c.command, "tau");
  ASSERT_EQ(c.lattice.size(), 3u);
  EXPECT_EQ(c.lattice[2], Complex(0.1, -1.2));
  ASSERT_EQ(c.times.size(), 2u);
  EXPECT_EQ(c.times[1].second, Complex(0.05, -0.01));
  EXPECT_EQ(*c.m, 2);
  std::ofstream(path) << "command: tau\nbogus: 1\n";
  EXPECT_THROW(load_config(path.string()), ValidationError);
}

TEST(Config, LatticeCsv) {
  const auto path = scratch("sites.csv");
  std::ofstream(path) << "x,y\n1,0\n0,1\n-1,0\n";
  const auto sites = read_lattice_csv(path.string());
  ASSERT_EQ(sites.size(), 3u);
  EXPECT_EQ(sites[1], Complex(0, 1));
}

TEST(Config, ValidationBeforeComputation) {
  RunConfig c;
  c.command = "limit-study";
  c.n = 4;
  c.m = 7;
  EXPECT_THROW(validate(c), RangeError);
  c.m = 2;
  c.radii = {1e-2};
  EXPECT_THROW(validate(c), RangeError);
  c.radii = {1e-2, 1e-3};
  EXPECT_NO_THROW(validate(c));
  c.beta = -1;
  EXPECT_THROW(validate(c), RangeError);
  c.beta = 2;
  c.points = 100;
  EXPECT_THROW(validate(c), RangeError);
  c.points = 128;
  c.times = {{"t9", 0.1}};
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(Run, SeedDeterminesRandomInputs) {
  RunConfig c;
  c.command = "tau";
  c.n = 5;
  c.seed = 11;
  const auto a = run(c), b = run(c);
  EXPECT_EQ(emit_report(a.report), emit_report(b.report));
  c.seed = 12;
  EXPECT_NE(emit_report(run(c).report), emit_report(a.report));
}

TEST(Run, WorkedLatticeThroughMatrixModel) {
  RunConfig c;
  c.command = "nmm";
  c.lattice = {1.0, Complex(0, 1), -1.0};
  c.confining = 0.0;
  c.time_scale = 0.0;
  c.m = 3;
  const auto out = run(c);
  ASSERT_TRUE(out.table);
  const auto re = out.table->column("re");
  EXPECT_NEAR(parse_double(out.table->rows[2][re]), 8.0, 1e-12);
  EXPECT_NEAR(parse_double(out.table->rows[3][re]), 16.0, 1e-12);
}

TEST(Binary, VerifyTodaChainExitsZero) {
  const auto prefix = scratch("chain");
  ASSERT_EQ(tool("verify --suite toda-chain --n 6 --seed 7 --output " + prefix.string()), 0);
  const YAML::Node report = read_report(prefix.string() + ".yaml");
  EXPECT_EQ(report["failures"].as<int>(), 0);
  const Table t = read_csv(prefix.string() + ".csv");
  EXPECT_EQ(t.rows.size(), 3u * 7u);
  for (const auto& row : t.rows) EXPECT_LE(parse_double(row[t.column("relative")]), 1e-10);
}

TEST(Binary, LimitStudyRatios) {
  const auto prefix = scratch("limit");
  ASSERT_EQ(tool("limit-study --r 1e-2,1e-3,1e-4 --output " + prefix.string()), 0);
  const Table t = read_csv(prefix.string() + ".csv");
  ASSERT_EQ(t.rows.size(), 3u);
  for (std::size_t k = 1; k < 3; ++k) EXPECT_NEAR(parse_double(t.rows[k][t.column("ratio")]), 0.1, 0.01);
}

TEST(Binary, SectorBeyondSitesIsRangeError) {
  std::string err;
  EXPECT_EQ(tool("limit-study --n 4 --m 7", &err), 1);
  EXPECT_NE(err.find("\"error_name\":\"RangeError\""), std::string::npos) << err;
  const auto path = scratch("bad.yaml");
  std::ofstream(path) << "n: 3\nm: 5\n";
  EXPECT_EQ(tool("nmm --config " + path.string(), &err), 1);
  EXPECT_NE(err.find("RangeError"), std::string::npos);
}

TEST(Binary, VerificationFailureExitsTwo) {
  std::string err;
  const auto prefix = scratch("strict");
  EXPECT_EQ(tool("verify --suite kp --tolerance 1e-6 --output " + prefix.string(), &err), 2);
  EXPECT_NE(err.find("VerificationFailure"), std::string::npos);
  const YAML::Node report = read_report(prefix.string() + ".yaml");
  EXPECT_GT(report["failing"].size(), 0u);
  EXPECT_TRUE(report["failing"][0]["relative"]);
}

TEST(Binary, EveryOutputReparses) {
  for (const std::string cmd : {"tau --n 4", "gas --geometry quarter-plane --hierarchy bkp --n 4 --m 2",
                                "correspond --hierarchy kp --n 5", "limit-study", "nmm --n 5",
                                "observables --n 4", "verify --suite boundary"}) {
    const auto prefix = scratch("out");
    ASSERT_EQ(tool(cmd + " --seed 3 --output " + prefix.string()), 0) << cmd;
    const YAML::Node report = read_report(prefix.string() + ".yaml");
    EXPECT_EQ(report["command"].as<std::string>(), cmd.substr(0, cmd.find(' ')));
    const Table t = read_csv(prefix.string() + ".csv");
    for (const auto& row : t.rows) {
      for (const auto& cell : row) {
        // numeric cells survive text and back unchanged
        double v = 0.0;
        if (std::from_chars(cell.data(), cell.data() + cell.size(), v).ec == std::errc() &&
            cell.find_first_not_of("0123456789.e+-") == std::string::npos) {
          EXPECT_EQ(format_double(parse_double(cell)), cell);
        }
      }
    }
    EXPECT_TRUE(fs::exists(prefix.string() + ".meta.json"));
  }
}

TEST(Binary, DeterministicModeIsByteIdentical) {
  const auto prefix = scratch("det");
  const std::string args = "verify --suite all --n 5 --seed 21 --trials 1 --deterministic --output " + prefix.string();
  ASSERT_EQ(tool(args), 0);
  const std::string csv = slurp(prefix.string() + ".csv"), yaml = slurp(prefix.string() + ".yaml");
  ASSERT_EQ(tool(args), 0);
  EXPECT_EQ(slurp(prefix.string() + ".csv"), csv);
  EXPECT_EQ(slurp(prefix.string() + ".yaml"), yaml);
  EXPECT_EQ(yaml.find("unix_time"), std::string::npos);
}
