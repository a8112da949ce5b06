// Copyright 2026 The gts Authors.
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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gts/chordal.hpp"
#include "gts/graph.hpp"
#include "gts/hardness.hpp"
#include "gts/instance_io.hpp"
#include "gts/oracle.hpp"
#include "test_util.hpp"

namespace gts {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path data(const std::string& name) {
  return fs::path(GTS_TEST_DATA_DIR) / name;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gts_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

const char kPathYes[] =
    "p gts 4 1\n"
    "e 1 2\ne 2 3\ne 3 4\n"
    "s 1 1\nt 4 1\n";

// Two leaves of a claw hold tokens; neither can reach the center.
const char kClawNo[] =
    "p gts 4 2\n"
    "e 1 2\ne 1 3\ne 1 4\n"
    "s 2 1\ns 3 1\nt 3 1\nt 4 1\n";

TEST_F(CliTest, SolveYes) {
  Result r = run_cli({"solve", write("yes.gts", kPathYes).string()});
  EXPECT_EQ(r.code, cli::kYes);
  EXPECT_EQ(r.out.rfind("YES 3\n", 0), 0u) << r.out;
}

TEST_F(CliTest, SolveNo) {
  Result r = run_cli({"solve", write("no.gts", kClawNo).string()});
  EXPECT_EQ(r.code, cli::kNo);
  EXPECT_EQ(r.out.substr(0, 2), "NO");
}

TEST_F(CliTest, SolveReadsStdin) {
  Result r = run_cli({"solve", "-"}, kPathYes);
  EXPECT_EQ(r.code, cli::kYes);
}

TEST_F(CliTest, SolveWitnessReplays) {
  Result r = run_cli({"solve", write("yes.gts", kPathYes).string()});
  ASSERT_EQ(r.code, cli::kYes);
  Instance inst = parse_instance(kPathYes);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<Move> moves;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string word;
    VertexId a = 0, b = 0;
    ls >> word >> a >> b;
    ASSERT_EQ(word, "move") << line;
    moves.push_back({a, b});
  }
  EXPECT_NO_THROW(check_witness(inst, moves));
}

TEST_F(CliTest, MalformedHeaderIsUsageError) {
  Result r = run_cli(
      {"solve", write("bad.gts", "# comment\np gtz 3 1\n").string()});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, BudgetExceeded) {
  Result r = run_cli(
      {"solve", data("bounded_degree.gts").string(), "--budget", "10"});
  EXPECT_EQ(r.code, cli::kLimit);
  EXPECT_EQ(r.out.rfind("LIMIT ", 0), 0u) << r.out;
}

TEST_F(CliTest, MissingFile) {
  Result r = run_cli({"solve", path("absent.gts").string()});
  EXPECT_EQ(r.code, cli::kNoInput);
}

TEST_F(CliTest, UnknownCommand) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
}

TEST_F(CliTest, KernelizeMatchesGolden) {
  fs::path out = path("k.gts"), trace = path("k.trace");
  Result r = run_cli({"kernelize", data("bounded_degree.gts").string(),
                      "--rules", "r1-r5", "--audit", "-o", out.string(),
                      "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), slurp(data("bounded_degree.kernel.gts")));
  EXPECT_EQ(slurp(trace), slurp(data("bounded_degree.trace.txt")));
  EXPECT_NE(slurp(trace).find("audit pass"), std::string::npos);

  Instance before = parse_instance(slurp(data("bounded_degree.gts")));
  Instance after = parse_instance(slurp(out));
  EXPECT_LT(after.graph.num_planets() + after.graph.num_holes(),
            before.graph.num_planets() + before.graph.num_holes());
  EXPECT_EQ(solve(before).reachable, solve(after).reachable);
}

TEST_F(CliTest, KernelizeChordalRejectsCycle) {
  fs::path in = write("c4.gts",
                      "p gts 4 1\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ns 1 1\nt 3 1\n");
  Result r = run_cli({"kernelize", in.string(), "--chordal", "-o",
                      path("out.gts").string()});
  EXPECT_EQ(r.code, cli::kData);
}

TEST_F(CliTest, KernelizeChordalDumpsTree) {
  // Two triangles sharing the edge 2-3, tokens on the far corners.
  fs::path in = write("tt.gts",
                      "p gts 4 1\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\n"
                      "s 1 1\nt 4 1\n");
  fs::path tree = path("tree.txt");
  Result r = run_cli({"kernelize", in.string(), "--chordal", "-o",
                      path("k.gts").string(), "--trace", path("t").string(),
                      "--tree", tree.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  Instance k = parse_instance(slurp(path("k.gts")));
  CliqueTree t = parse_clique_tree(slurp(tree));
  EXPECT_EQ(check_clique_tree(k.graph, t), "");
  EXPECT_EQ(run_cli({"kernelize", in.string(), "--tree", tree.string()}).code,
            cli::kUsage);
}

TEST_F(CliTest, KernelizePlanarRejectsK5) {
  std::string text = "p gts 5 1\n";
  for (int a = 1; a <= 5; ++a) {
    for (int b = a + 1; b <= 5; ++b) {
      text += "e " + std::to_string(a) + " " + std::to_string(b) + "\n";
    }
  }
  text += "s 1 1\nt 2 1\n";
  Result r = run_cli({"kernelize", write("k5.gts", text).string(),
                      "--planar", "-o", path("out.gts").string()});
  EXPECT_EQ(r.code, cli::kData);
}

TEST_F(CliTest, KernelizeFlagConflicts) {
  fs::path in = write("yes.gts", kPathYes);
  EXPECT_EQ(run_cli({"kernelize", in.string(), "--planar", "--chordal"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"kernelize", in.string(), "--unsafe-thresholds"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"kernelize", in.string(), "--rules", "r9"}).code,
            cli::kUsage);
}

TEST_F(CliTest, NoApplicableRuleKeepsBytes) {
  // Odd spacing and a comment survive untouched.
  const std::string text =
      "# two tokens on a triangle with a tail\n"
      "p gts 4 2\n"
      "e 1 2\ne 2 3\ne 1 3\ne 3 4\n"
      "s 1 1\ns 4 1\nt 2  1\nt 4 1\n";
  fs::path in = write("t.gts", text);
  fs::path out = path("out.gts"), trace = path("trace.txt");
  Result r = run_cli({"kernelize", in.string(), "--rules", "r1-r5", "-o",
                      out.string(), "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), text);
  EXPECT_EQ(slurp(trace), "");
}

TEST_F(CliTest, KernelOutputReparses) {
  fs::path out = path("k.gts");
  ASSERT_EQ(run_cli({"kernelize", data("bounded_degree.gts").string(),
                     "--rules", "r1,r3,r5", "-o", out.string(), "--trace",
                     path("t").string()})
                .code,
            0);
  Instance k = parse_instance(slurp(out));
  EXPECT_EQ(parse_instance(serialize_instance(k)), k);
}

TEST_F(CliTest, HarnessZeroTrials) {
  Result r = run_cli({"harness", "--trials", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rule,applications,discrepancies,exhausted,samples\n");
}

TEST_F(CliTest, HarnessSeededRunIsClean) {
  Result r = run_cli({"harness", "--trials", "500", "--seed", "7",
                      "--max-vertices", "9", "--max-k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string rule, apps, disc;
    std::getline(ls, rule, ',');
    std::getline(ls, apps, ',');
    std::getline(ls, disc, ',');
    EXPECT_EQ(apps, "500") << line;
    EXPECT_EQ(disc, "0") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, HarnessIsDeterministic) {
  std::vector<std::string> args = {"harness", "--trials", "20", "--seed",
                                   "99"};
  Result a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  Result c = run_cli({"harness", "--trials", "20", "--seed", "100"});
  EXPECT_NE(a.out, c.out);
}

TEST_F(CliTest, GenHardness) {
  fs::path mis = write("m.mis", "p mis 2 3\ne 1:1 2:1\ne 1:2 2:3\n");
  fs::path out = path("h.gts");
  Result r = run_cli({"gen-hardness", "--k", "2", "--n", "3", "--edges",
                      mis.string(), "-o", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string text = slurp(out);
  // m-bar = 9 - 2 = 7.
  SplitSizes z = expected_split_sizes(2, 3, 7);
  std::string header = "# split graph from p mis 2 3: |C|=" +
                       std::to_string(z.c) + " |U|=" + std::to_string(z.u) +
                       " |D|=" + std::to_string(z.d) +
                       " k'=" + std::to_string(z.k_prime) + "\n";
  EXPECT_EQ(text.rfind(header, 0), 0u) << text.substr(0, 120);
  Instance inst = parse_instance(text);
  EXPECT_EQ(inst.graph.num_planets(), z.c + z.u + z.d);
  EXPECT_EQ(inst.k, static_cast<Weight>(z.k_prime));
  EXPECT_EQ(inst, build_split_instance(parse_mis(slurp(mis))).instance);
}

TEST_F(CliTest, GenHardnessHeaderMismatch) {
  fs::path mis = write("m.mis", "p mis 2 3\n");
  EXPECT_EQ(run_cli({"gen-hardness", "--k", "3", "--n", "3", "--edges",
                     mis.string()})
                .code,
            cli::kData);
  EXPECT_EQ(run_cli({"gen-hardness"}).code, cli::kUsage);
}

TEST_F(CliTest, Signatures) {
  // Star with center 1; X = {1}.
  fs::path in = write("s.gts",
                      "p gts 4 1\ne 1 2\ne 1 3\ne 1 4\ne 3 4\ns 2 1\nt 3 1\n");
  Result r = run_cli({"signatures", in.string(), "--cutset", "1", "--ell",
                      "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    VertexId v = 0;
    std::size_t count = 0;
    ls >> v >> count;
    EXPECT_NE(v, 1u);
    EXPECT_GT(count, 0u);
    ++n;
  }
  EXPECT_EQ(n, 3);
  EXPECT_EQ(run_cli({"signatures", in.string(), "--cutset", "9"}).code,
            cli::kData);
}

TEST_F(CliTest, Stats) {
  Result r = run_cli({"stats", write("yes.gts", kPathYes).string()});
  ASSERT_EQ(r.code, 0);
  for (const char* key :
       {"vertices 4\n", "planets 4\n", "black_holes 0\n", "edges 3\n",
        "k 1\n", "components 1\n", "max_degree 2\n", "planar yes\n",
        "chordal yes\n", "clique_number 2\n"}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, CommandsAreDeterministic) {
  fs::path in = data("bounded_degree.gts");
  std::string first;
  for (int round = 0; round < 2; ++round) {
    fs::path out = path("k" + std::to_string(round));
    fs::path trace = path("t" + std::to_string(round));
    ASSERT_EQ(run_cli({"kernelize", in.string(), "--rules", "r1-r5", "-o",
                       out.string(), "--trace", trace.string()})
                  .code,
              0);
    std::string both = slurp(out) + slurp(trace);
    if (round == 0) {
      first = both;
    } else {
      EXPECT_EQ(both, first);
    }
  }
}

TEST(RuleListTest, Ranges) {
  using V = std::vector<std::string>;
  EXPECT_EQ(cli::parse_rule_list("r1-r5"), (V{"r1", "r2", "r3", "r4", "r5"}));
  EXPECT_EQ(cli::parse_rule_list("r2-4"), (V{"r2", "r3", "r4"}));
  EXPECT_EQ(cli::parse_rule_list("r1,r3"), (V{"r1", "r3"}));
  EXPECT_EQ(cli::parse_rule_list("r6"), (V{"r6"}));
  EXPECT_THROW(cli::parse_rule_list("r0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_rule_list("r5-r2"), std::invalid_argument);
  EXPECT_THROW(cli::parse_rule_list("x1"), std::invalid_argument);
  EXPECT_THROW(cli::parse_rule_list(""), std::invalid_argument);
}

}  // namespace
}  // namespace gts
