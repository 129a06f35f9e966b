#include <gtest/gtest.h>

#include <sstream>

#include "commands.hpp"
#include "wnl/errors.hpp"

using namespace wnl::cli;

namespace {

std::string run(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, int* code = nullptr) {
  std::ostringstream out;
  const int rc = cmd(cfg, out);
  if (code) *code = rc;
  return out.str();
}

}  // namespace

TEST(Cli, ParseLists) {
  EXPECT_EQ(parse_int_list("4..8"), (std::vector<int>{4, 5, 6, 7, 8}));
  EXPECT_EQ(parse_int_list("2, 5,7..8"), (std::vector<int>{2, 5, 7, 8}));
  EXPECT_EQ(parse_int_map("2:14,3:9"), (std::map<int, int>{{2, 14}, {3, 9}}));
  EXPECT_EQ(parse_double_list("0,1.5"), (std::vector<double>{0.0, 1.5}));
  EXPECT_THROW(parse_int_list("8..4"), wnl::ContractViolation);
}

TEST(Cli, FamilyOnlyThreshold) {
  RunConfig cfg;
  cfg.n = {50};
  cfg.family_only = true;
  const std::string csv = run(cmd_pcrit, cfg);
  EXPECT_NE(csv.find("50,2,0.3870967742,family"), std::string::npos) << csv;
}

TEST(Cli, PauliRowsMatchFamily) {
  RunConfig cfg;
  cfg.n = {4, 6};
  cfg.pauli_zx = true;
  const std::string csv = run(cmd_pcrit, cfg);
  EXPECT_NE(csv.find("4,2,0.2222222222,LP"), std::string::npos) << csv;
  EXPECT_NE(csv.find("6,2,0.2857142857,LP"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",true\n"), std::string::npos);
}

TEST(Cli, OddPartyThresholdIsPositive) {
  RunConfig cfg;
  cfg.n = {3};
  const std::string csv = run(cmd_pcrit, cfg);
  const auto row = csv.substr(csv.find("\n3,2,") + 5);
  EXPECT_GT(std::stod(row), 0.0);
}

TEST(Cli, CapacityRowsAreReported) {
  RunConfig cfg;
  cfg.n = {4, 8};
  cfg.pauli_zx = true;
  cfg.vertex_cap = 100;
  int code = 0;
  const std::string csv = run(cmd_pcrit, cfg, &code);
  EXPECT_EQ(code, kExitCapacity);
  EXPECT_NE(csv.find("4,2,0.2222222222,LP"), std::string::npos);
  EXPECT_NE(csv.find("8,2,,capacity"), std::string::npos) << csv;
}

TEST(Cli, Fig4FamilyOnly) {
  RunConfig cfg;
  cfg.N = {4, 50};
  cfg.family_only = true;
  const std::string csv = run(cmd_fig4, cfg);
  EXPECT_NE(csv.find("\n4,1,2,true"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n50,"), std::string::npos);
  EXPECT_NE(csv.find(",25,"), std::string::npos) << csv;
}

TEST(Cli, TableLeavesGapsBlank) {
  RunConfig cfg;
  cfg.N = {4, 7};
  cfg.family_only = true;
  const std::string csv = run(cmd_table, cfg);
  EXPECT_EQ(csv, "N,m=2\n4,\n7,\n");
}

TEST(Cli, SmallTable) {
  RunConfig cfg;
  cfg.N = {2, 3, 4, 5, 6, 7};
  const std::string csv = run(cmd_table, cfg);
  EXPECT_EQ(csv, "N,m=2\n2,1\n3,1\n4,2\n5,2\n6,2\n7,3\n");
}

TEST(Cli, OutputIsDeterministic) {
  RunConfig cfg;
  cfg.n = {5};
  cfg.seed = 9;
  cfg.format = Format::Json;
  EXPECT_EQ(run(cmd_pcrit, cfg), run(cmd_pcrit, cfg));
}

TEST(Cli, FamilyJsonAndChannelCheck) {
  RunConfig cfg;
  cfg.n = {4};
  cfg.format = Format::Json;
  EXPECT_NE(run(cmd_family, cfg).find("\"beta_num\": \"168\""), std::string::npos);
  cfg.n = {3};
  cfg.p = 0.25;
  int code = -1;
  const std::string j = run(cmd_channel_check, cfg, &code);
  EXPECT_EQ(code, kExitOk);
  EXPECT_NE(j.find("\"passed\": true"), std::string::npos) << j;
}
