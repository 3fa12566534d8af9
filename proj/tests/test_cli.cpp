#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>

#include "json.hpp"

using nlohmann::json;

namespace {
struct CliRun {
  int code = -1;
  std::string out;
};

CliRun qmapc(const std::string& args) {
  std::string cmd = std::string(QMAPC_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json qmapc_json(const std::string& args, int want_code = 0) {
  CliRun r = qmapc(args);
  EXPECT_EQ(r.code, want_code) << args;
  return json::parse(r.out);
}
}  // namespace

TEST(Cli, ClassifyFamilyEight) {
  json j = qmapc_json("classify --json -e 'x^2+z^2+2*y' 'y*z+x'");
  EXPECT_EQ(j["schema"], "report.v1");
  EXPECT_EQ(j["affine_class"]["kind"], "Family8");
  EXPECT_EQ(j["topo_class"]["index"], 8);
  EXPECT_EQ(j["verification"]["witness_ok"], true);
}

TEST(Cli, ClassifyZeroMap) {
  json j = qmapc_json("classify --json -e 0 0");
  EXPECT_EQ(j["affine_class"]["kind"], "Discrete");
  EXPECT_EQ(j["affine_class"]["k"], 64);
  EXPECT_EQ(j["topo_class"]["index"], 47);
}

TEST(Cli, ClassifyFamilyTwo) {
  json j = qmapc_json("classify --json -e 'x^2+z^2+y' 'y^2+z^2+4*x+i*z'");
  EXPECT_EQ(j["affine_class"]["kind"], "Family2");
  EXPECT_EQ(j["topo_class"]["index"], 2);
  EXPECT_EQ(j["census"]["cusps"], 4);
  EXPECT_EQ(j["census"]["double_cusps"], 1);
  EXPECT_EQ(j["census"]["nodes"], 3);
}

TEST(Cli, CoefficientInput) {
  std::string coeffs = R"('{"f": [1,0,0,0,0,1,0,2,0,0], "g": [0,0,0,0,1,0,1,0,0,0]}')";
  json j = qmapc_json("classify --json -c " + coeffs);
  EXPECT_EQ(j["affine_class"]["kind"], "Family8");
}

TEST(Cli, ReportRoundTrips) {
  CliRun r = qmapc("classify --json -e 'x*y+z' 'z^2+x'");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_EQ(j["affine_class"]["k"], 18);
  EXPECT_FALSE(j["witness"].empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(qmapc("classify -e 'x^3' 'y'").code, 2);
  EXPECT_EQ(qmapc("classify -e 'x^2+' 'y'").code, 2);
  EXPECT_EQ(qmapc("classify -e 'x' 'w'").code, 2);
  EXPECT_EQ(qmapc("classify").code, 2);
  EXPECT_EQ(qmapc("frobnicate").code, 2);
  EXPECT_EQ(qmapc("fuzz --count 0").code, 2);
  EXPECT_EQ(qmapc("classify --policy no-cubic -e 'x^2+y^2+2*z' 'z^2+x'").code, 3);
  EXPECT_EQ(qmapc("classify --policy full -e 'x^2+y^2+2*z' 'z^2+x'").code, 0);
}

TEST(Cli, CertificateOnlyReport) {
  json j = qmapc_json("classify --json --policy no-cubic -e 'x^2+3*y' 'y^2+2*x'", 3);
  EXPECT_EQ(j["certificate_only"], true);
  EXPECT_EQ(j["affine_class"]["k"], 34);
  EXPECT_EQ(j["field_policy"], "no-cubic");
}

TEST(Cli, CensusAndReduce) {
  CliRun c = qmapc("census -e 'x^2+z^2+2*y' 'y^2+z^2+2*x+2*z'");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("6 cusps"), std::string::npos) << c.out;
  CliRun r = qmapc("reduce -e 'x^2+z^2' 'y*z+x+y'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Discrete(11)"), std::string::npos) << r.out;
}

TEST(Cli, VerifyResultants) {
  json j = qmapc_json("verify-paper --only resultants --json");
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(j["ok"], true);
}

TEST(Cli, Fuzz) {
  json a = qmapc_json("fuzz --seed 1 --count 100 --class 34 --json");
  EXPECT_EQ(a["stable"], 100);
  json b = qmapc_json("fuzz --seed 7 --count 50 --class 1 --json");
  EXPECT_EQ(b["stable"], 50);
}
