#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumprod/cli.hpp"

using namespace sumprod;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sumprod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, SetOps) {
  Result r = run({"setop", "sumset", "--a", "{1,2,4}", "--b", "{10,100}"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "11\n12\n14\n101\n102\n104\n");
  r = run({"setop", "subsetsums", "--a", "{1,2,4}", "--backend", "naive"});
  EXPECT_EQ(r.out, "0\n1\n2\n3\n4\n5\n6\n7\n");
  r = run({"setop", "subsetproducts", "--a", "[-1, 2]"});
  EXPECT_EQ(r.out, "-2\n-1\n1\n2\n");
  r = run({"setop", "gproxy", "--a", "{1,2,3,4}"});
  EXPECT_EQ(r.out, "Aplus=11 Atimes=8 g=19\n");
  r = run({"setop", "diffcombo", "--a", "{0,1}", "--n", "1", "--m", "1"});
  EXPECT_EQ(r.out, "-1\n0\n1\n");
  r = run({"setop", "combo", "--a", "{1,2}", "--k", "1", "--l", "1", "--b", "{10,20}"});
  EXPECT_EQ(r.out, "11\n12\n21\n22\n");
  r = run({"setop", "distinct_h", "--a", "{1,2,4}", "--h", "2"});
  EXPECT_EQ(r.out, "3\n5\n6\n");
}

TEST(Cli, SetFilesAndOutFile) {
  auto in = temp_file("sumprod_cli_a.txt", "1/2\n3\n");
  auto out = std::filesystem::temp_directory_path() / "sumprod_cli_out.txt";
  Result r = run({"setop", "productset", "--a", in.string(), "--b", "{2}", "--out", out.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "1\n6\n");
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"setop", "sumset", "--a", "{1,x}", "--b", "{1}"}).code, kExitParse);
  EXPECT_EQ(run({"setop", "sumset", "--a", "/nonexistent/a.txt", "--b", "{1}"}).code, kExitParse);
  EXPECT_EQ(run({"setop", "frobnicate", "--a", "{1}"}).code, kExitParse);
  EXPECT_EQ(run({"setop", "combo", "--a", "{1,2,3,4,5,6,7,8,9,10}", "--k", "6", "--max-work",
                 "1000"})
                .code,
            kExitBudget);
  EXPECT_EQ(run({"setop", "subsetproducts", "--a", "{1,2,3}", "--max-card", "2"}).code,
            kExitBudget);
  EXPECT_EQ(run({"dim", "--a", "{0}"}).code, kExitEmptyStar);
  EXPECT_EQ(run({"verify", "no_such_claim", "--a", "{1}"}).code, kExitUnknownClaim);
  EXPECT_EQ(run({"verify", "cs_iterated", "--a", "{1,2}"}).code, kExitParse);
  EXPECT_EQ(run({"bogus"}).code, kExitParse);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, Dim) {
  Result r = run({"dim", "--a", "{-2,2}"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("mult_dim: 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("torsion: true"), std::string::npos) << r.out;
  auto j = nlohmann::json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(j["mult_dim"], 2);
  EXPECT_EQ(j["coordinates"].size(), 2u);
}

TEST(Cli, VerifyJson) {
  Result r = run({"verify", "cs_iterated", "--a", "{1,2,3}", "--h", "2"});
  EXPECT_EQ(r.code, kExitOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["claim"], "cs_iterated");
  EXPECT_EQ(j["lhs_exact"], "5");
  EXPECT_EQ(j["rhs_exact"], "81/19");
  EXPECT_EQ(j["holds"], true);
  EXPECT_EQ(j["mode"], "assert");
  EXPECT_EQ(j["elapsed_ms"], 0.0);
  EXPECT_EQ(run({"verify", "--claim", "cs_iterated", "--a", "{1,2,3}", "--h", "2"}).out, r.out);
}

TEST(Cli, VerifyCsvAndLattice) {
  Result r = run({"verify", "ruzsa_rn", "--x", "[[0,0],[1,0],[0,1]]", "--y", "[[0,0],[1,0],[0,1]]",
               "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("claim,params,lhs,rhs,holds,slack_log,mode,elapsed_ms\nruzsa_rn,", 0), 0u)
      << r.out;
  EXPECT_NE(r.out.find(",\"6\",\"6\",true,0,assert,"), std::string::npos) << r.out;
}

TEST(Cli, ReportFailureAndPremiseViolationExitZero) {
  Result r = run({"verify", "multdim_ratio", "--a", "{2,3}"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["holds"], false);
  r = run({"verify", "identity_15", "--a", "{0,1}"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("premise"), std::string::npos);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["holds"], false);
  EXPECT_TRUE(j.contains("error"));
}

TEST(Cli, Count) {
  EXPECT_EQ(run({"count", "energy", "--a", "{1,2,3}", "--h", "2"}).out, "19\n");
  EXPECT_EQ(run({"count", "mixed", "--a", "{0,1}", "--k", "1", "--l", "1"}).out, "6\n");
  EXPECT_EQ(run({"count", "rep", "--a", "{0,1}", "--k", "2"}).out, "0 1\n1 2\n2 1\n");
  EXPECT_EQ(run({"count", "sigma1", "--a", "{1,2}", "--b", "{-1,3}", "--k", "1", "--l", "1"}).out,
            "1\n");
  EXPECT_EQ(run({"count", "nondegenerate", "--a", "{2,-1}", "--coeffs", "1,1", "--target", "1"}).out,
            "nondegenerate=2 total=2\n");
}

TEST(Cli, Sweep) {
  auto man = temp_file("sumprod_cli_manifest.json", R"({
    "families": [{"kind": "range", "N": [3, 4]}],
    "claims": [{"id": "cs_iterated", "params": {"h": 2}}]
  })");
  Result one = run({"sweep", man.string()});
  Result many = run({"sweep", man.string(), "--threads", "3"});
  EXPECT_EQ(one.code, kExitOk);
  EXPECT_EQ(one.out, many.out);
  auto j = nlohmann::json::parse(one.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["params"]["family"], "range(4)");
  Result csv = run({"sweep", man.string(), "--format", "csv"});
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 3);
  std::filesystem::remove(man);
  EXPECT_EQ(run({"sweep", "/nonexistent/m.json"}).code, kExitParse);
}
