// Copyright 2026 The gossipsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace gossipsim {
namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(GOSSIPSIM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kConfig =
    "topology.kind = regular\ntopology.n = 60\ntopology.k = 6\n"
    "protocol.kind = broadcast, dandelion\nadversary.ratio = 0.1, 0.2\n"
    "num_msg = 10\nseeds = 1, 2\n";

TEST(CliTest, RunWritesReports) {
  testing::TempDir dir;
  const auto cfg = dir.write("exp.cfg", kConfig);
  const auto out = dir.path() / "out";
  ASSERT_EQ(cli("run --config " + cfg.string() + " --out " + out.string()), 0);
  const std::string report = slurp(out / "report.csv");
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 1 + 2 * 2 * 2);
  EXPECT_FALSE(slurp(out / "aggregate.csv").empty());

  const auto out2 = dir.path() / "out2";
  ASSERT_EQ(cli("run --parallel 2 --config " + cfg.string() + " --out " + out2.string()), 0);
  EXPECT_EQ(report, slurp(out2 / "report.csv"));

  ASSERT_EQ(cli("plot-data --report " + (out / "report.csv").string() + " --figure figure1"), 0);
  EXPECT_FALSE(slurp(out / "plot_figure1.csv").empty());
}

TEST(CliTest, PlotDataConcatenatesReports) {
  testing::TempDir dir;
  const auto a = dir.path() / "a", b = dir.path() / "b";
  ASSERT_EQ(cli("run --config " + dir.write("a.cfg", kConfig).string() + " --out " + a.string()), 0);
  std::string scale_free = kConfig;
  scale_free.replace(scale_free.find("regular"), 7, "scale_free");
  scale_free.replace(scale_free.find("topology.k = 6"), 14, "topology.m = 3");
  ASSERT_EQ(cli("run --config " + dir.write("b.cfg", scale_free).string() + " --out " + b.string()), 0);
  const auto plot = dir.path() / "plot.csv";
  ASSERT_EQ(cli("plot-data --report " + (a / "report.csv").string() + " --report " +
                (b / "report.csv").string() + " --figure figure3 --out " + plot.string()),
            0);
  const std::string text = slurp(plot);
  EXPECT_NE(text.find("topology=regular"), std::string::npos);
  EXPECT_NE(text.find("topology=scale_free"), std::string::npos);
  EXPECT_EQ(cli("plot-data --report " + (a / "report.csv").string() + " --report " +
                (a / "aggregate.csv").string() + " --figure figure3"),
            1);
}

TEST(CliTest, Validate) {
  testing::TempDir dir;
  EXPECT_EQ(cli("validate --config " + dir.write("ok.cfg", kConfig).string()), 0);
  EXPECT_EQ(cli("validate --config " + dir.write("bad.cfg", std::string(kConfig) + "nope = 1\n").string()), 2);
}

TEST(CliTest, ShippedConfigsValidate) {
  std::size_t count = 0;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(GOSSIPSIM_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    ++count;
    EXPECT_EQ(cli("validate --config " + entry.path().string()), 0) << entry.path();
  }
  EXPECT_GE(count, 10u);
}

TEST(CliTest, ExitCodes) {
  testing::TempDir dir;
  EXPECT_EQ(cli("validate --config " + (dir.path() / "absent.cfg").string()), 3);
  EXPECT_EQ(cli("run --config " + dir.write("z.cfg", "topology.kind = regular\ntopology.n = 60\n"
                                                     "topology.k = 6\nadversary.ratio = 0\n"
                                                     "seeds = 1\n").string() +
                " --out " + dir.path().string()),
            2);
  EXPECT_EQ(cli("run --config " + dir.write("nout.cfg", kConfig).string()), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("plot-data --report " + (dir.path() / "none.csv").string() + " --figure figure1"), 3);
  EXPECT_EQ(cli("plot-data --report " + dir.write("r.csv", "a,b\n1,2\n").string() + " --figure figure1"), 1);
  EXPECT_EQ(cli("plot-data --report " + dir.write("r2.csv", "a,b\n1,2\n").string() + " --figure figure9"), 2);
  const auto graph_cfg = dir.write("g.cfg", "topology.kind = file\ntopology.path = missing.txt\n"
                                            "adversary.ratio = 0.1\nseeds = 1\n");
  EXPECT_EQ(cli("run --config " + graph_cfg.string() + " --out " + dir.path().string()), 3);
}

}  // namespace
}  // namespace gossipsim
