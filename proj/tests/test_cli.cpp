#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "possdom/recognize.hpp"
#include "support.hpp"

using namespace possdom;
using namespace testing_support;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "possdom");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(POSSDOM_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("possdom_cli_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, ClassifyFormulaPhi6) {
  const auto r = run_cli({"classify-formula", data("phi6.ecnf")});
  EXPECT_EQ(r.code, cli::kAccept);
  EXPECT_NE(r.out.find("renamable_partially_horn       yes  V0={x4,x5}"), std::string::npos) << r.out;

  const auto j = run_cli({"classify-formula", data("phi6.ecnf"), "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  bool seen = false;
  for (const auto& row : doc["results"]) {
    for (const char* key : {"class", "verdict", "witness", "method", "counterexample"}) EXPECT_TRUE(row.contains(key));
    if (row["class"] == "renamable_partially_horn") {
      seen = true;
      EXPECT_TRUE(row["verdict"].get<bool>());
      EXPECT_EQ(row["witness"]["V0"], nlohmann::json::array({4, 5}));
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, ClassifyDomainPhi7) {
  const auto r = run_cli({"classify-domain", data("mod_phi7.dom")});
  EXPECT_EQ(r.code, cli::kReject);
  EXPECT_NE(r.out.find("possibility                    no"), std::string::npos) << r.out;
}

TEST(Cli, ClassifyDomainWitnessPhi12) {
  const auto r = run_cli({"classify-domain", data("mod_phi12.dom"), "--witness"});
  EXPECT_EQ(r.code, cli::kAccept);
  EXPECT_NE(r.out.find("(and, or, or)"), std::string::npos) << r.out;
}

TEST(Cli, SynthesizeRoundTrip) {
  const auto out = std::filesystem::temp_directory_path() / "possdom_cli_test_phi14.ecnf";
  const auto r = run_cli({"synthesize", data("mod_phi14.dom"), "--out", out.string()});
  ASSERT_EQ(r.code, cli::kAccept) << r.err;
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const Formula f = parse_formula(text);
  EXPECT_TRUE(check_syntactic_class(f).affine);

  const auto m = run_cli({"models", out.string()});
  EXPECT_EQ(m.code, cli::kAccept);
  EXPECT_EQ(parse_domain(m.out), mod(kPhi14));

  const auto l = run_cli({"synthesize", temp_file("phi10.dom", render_domain(mod(kPhi10))), "--lpic"});
  ASSERT_EQ(l.code, cli::kAccept) << l.err;
  EXPECT_EQ(models(parse_formula(l.out)), mod(kPhi10));
  EXPECT_EQ(run_cli({"synthesize", data("mod_phi7.dom")}).code, cli::kReject);
}

TEST(Cli, AggregatorCheckAndFind) {
  const auto r = run_cli({"aggregator", "check", data("mod_phi12.dom"), data("and_or_or.agg")});
  EXPECT_EQ(r.code, cli::kAccept);
  EXPECT_NE(r.out.find("generalized_dictatorship       no"), std::string::npos) << r.out;
  const auto bad = run_cli({"aggregator", "check", data("mod_phi7.dom"), data("minority.agg")});
  EXPECT_EQ(bad.code, cli::kReject);

  const auto f = run_cli({"aggregator", "find", data("mod_phi14.dom"), "--kind", "anonymous"});
  EXPECT_EQ(f.code, cli::kAccept);
  EXPECT_EQ(parse_aggregator(f.out), Aggregator::systematic(named_fn("xor3", 3), 3));
  EXPECT_EQ(run_cli({"aggregator", "find", data("mod_phi14.dom"), "--kind", "strongdem"}).code, cli::kReject);
  EXPECT_EQ(run_cli({"aggregator", "find", data("mod_phi7.dom"), "--kind", "binary"}).code, cli::kReject);
}

TEST(Cli, Census) {
  const auto r = run_cli({"census", "2"});
  EXPECT_EQ(r.code, cli::kAccept);
  EXPECT_NE(r.out.find("mismatches 0"), std::string::npos);
  const auto j = run_cli({"census", "2", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_TRUE(doc.is_array());
  for (const auto& e : doc) EXPECT_TRUE(e["match"].get<bool>());
  EXPECT_EQ(run_cli({"census", "4"}).code, cli::kInputError);
  const auto a = run_cli({"census", "4", "--sample", "20", "--seed", "3"});
  const auto b = run_cli({"census", "4", "--sample", "20", "--seed", "3"});
  EXPECT_EQ(a.code, cli::kAccept);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ErrorsMapToExitCodes) {
  EXPECT_EQ(run_cli({"models", "/nonexistent/file"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"classify-formula", temp_file("bad.ecnf", "p ecnf 2 1\n1 1 0\n")}).code, cli::kInputError);
  EXPECT_EQ(run_cli({}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"classify-domain", temp_file("deg.dom", "d 2\n00\n01\n")}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"classify-domain", temp_file("deg2.dom", "d 2\n00\n01\n"), "--permissive"}).code,
            cli::kAccept);
  const auto cap = run_cli({"models", temp_file("wide.ecnf", "p ecnf 30 1\n1 0\n")});
  EXPECT_EQ(cap.code, cli::kCapExceeded);
  EXPECT_FALSE(cap.err.empty());
  EXPECT_EQ(run_cli({"models", temp_file("wide2.ecnf", "p ecnf 30 1\n1 0\n"), "--enum-cap", "10"}).code,
            cli::kCapExceeded);
}
