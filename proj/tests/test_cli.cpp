#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "solvlie/cli.hpp"
#include "solvlie/io.hpp"

using namespace solvlie;
using json = nlohmann::json;

namespace {

const std::string kCat = SOLVLIE_CATALOG_DIR;
const std::string kEx = kCat + "/examples/";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "solvlie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string cat(const std::string& key) { return kCat + "/" + key + ".json"; }

}  // namespace

TEST(Cli, CatalogDocumentsValidateAndMatchLibrary) {
  for (const auto& key : catalog_keys()) {
    CliRun r = cli({"validate", cat(key)});
    EXPECT_EQ(r.code, 0) << key << r.err;
    LieAlgebra parsed = parse_algebra(read_text_file(cat(key)));
    EXPECT_EQ(parsed, catalog_algebra(key)) << key;
  }
}

TEST(Cli, ValidateFailures) {
  CliRun bad = cli({"validate", kEx + "bad_rational.json"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("brackets[0].coeffs.1"), std::string::npos);
  CliRun jac = cli({"validate", kEx + "jacobi_violation.json"});
  EXPECT_EQ(jac.code, 2);
  EXPECT_NE(jac.err.find("(1,2,3)"), std::string::npos);
  // Default loading of the same document refuses it as well.
  EXPECT_EQ(cli({"der", kEx + "jacobi_violation.json"}).code, 2);
  // Forced through, ad(L) is no longer inside Der(L) and the consistency trap fires.
  CliRun forced = cli({"--skip-jacobi", "der", kEx + "jacobi_violation.json"});
  EXPECT_EQ(forced.code, 3);
  EXPECT_NE(forced.err.find("internal error"), std::string::npos);
  EXPECT_EQ(cli({"validate", kCat + "/missing.json"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
}

TEST(Cli, DerivationDims) {
  struct Row {
    std::string key;
    std::size_t der, inner, h1;
  };
  for (const Row& row : {Row{"h3", 6, 2, 4}, Row{"r3", 9, 0, 9}, Row{"g4", 7, 3, 4}}) {
    CliRun r = cli({"der", cat(row.key), "--h1"});
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["dim_der"], row.der) << row.key;
    EXPECT_EQ(j["dim_inner"], row.inner) << row.key;
    EXPECT_EQ(j["dim_h1"], row.h1) << row.key;
    EXPECT_EQ(j["h1_basis"].size(), row.h1);
    DerivationSpace s = derivation_space(catalog_algebra(row.key));
    EXPECT_EQ(s.full.dim(), row.der);
  }
}

TEST(Cli, ExtendVerdictsEqualLibrary) {
  CliRun a = cli({"extend", cat("h3"), "--derivation", kEx + "h3_diag211.json"});
  ASSERT_EQ(a.code, 0) << a.err;
  json j = json::parse(a.out);
  EXPECT_TRUE(j["verdicts"]["member"].get<bool>());
  LieAlgebra h3 = catalog_algebra("h3");
  Matrix d = parse_matrix(read_text_file(kEx + "h3_diag211.json"));
  EXPECT_EQ(parse_algebra(j["algebra"].dump()), extend_by_derivation(h3, d));
  EXPECT_EQ(j["verdicts"]["member"].get<bool>(), check_codim1_condition(h3, d).member());

  CliRun inner = cli({"extend", cat("h3"), "--derivation", kEx + "h3_ad_x2.json"});
  EXPECT_EQ(inner.code, 2);
  EXPECT_FALSE(json::parse(inner.out)["verdicts"]["member"].get<bool>());

  CliRun dbl = cli({"extend", cat("r2"), "--derivation", kEx + "r2_zero.json", "--second", kEx + "r2_diag10.json",
                 "--zy", "0,1"});
  ASSERT_EQ(dbl.code, 0) << dbl.err;
  json v = json::parse(dbl.out)["verdicts"];
  EXPECT_TRUE(v["member"].get<bool>());
  EXPECT_FALSE(v["decomposable"].get<bool>());
  EXPECT_EQ(json::parse(dbl.out)["algebra"]["dim"], 4);

  // x1 -> x2 breaks Leibniz on h3; a wrongly sized matrix is a parse error.
  CliRun nd = cli({"extend", cat("h3"), "--derivation", kEx + "h3_not_derivation.json"});
  EXPECT_EQ(nd.code, 2);
  EXPECT_NE(nd.err.find("Leibniz fails on pair"), std::string::npos);
  EXPECT_EQ(cli({"extend", cat("h3"), "--derivation", kEx + "r2_diag10.json"}).code, 1);
  EXPECT_EQ(cli({"extend", cat("r2"), "--derivation", kEx + "r2_zero.json", "--zy", "1,0"}).code, 1);
}

TEST(Cli, VerifyWitness) {
  EXPECT_EQ(cli({"verify-witness", kEx + "h3_A1.json", kEx + "h3_A1_inner.json", "--witness",
                 kEx + "h3_A1_witness.json"}).code, 0);
  EXPECT_EQ(cli({"verify-witness", kEx + "g_1_1.json", kEx + "g_m1_m1.json", "--witness",
                 kEx + "g_sign_flip.json"}).code, 0);
  EXPECT_EQ(cli({"verify-witness", kEx + "g_1_1.json", kEx + "g_m1_m1.json", "--witness",
                 kEx + "identity5.json"}).code, 2);
  EXPECT_EQ(cli({"verify-witness", kEx + "g_1_1.json", cat("h3"), "--witness", kEx + "identity5.json"}).code, 1);
}

TEST(Cli, ClassifyReports) {
  CliRun r = cli({"classify", "--base", "h3"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["found"], json({"A", "B", "C"}));
  EXPECT_EQ(j["members"], classify_ext1("h3").members);
  CliRun ad = cli({"classify", "--base", "h3", "--mode", "ext2ad", "--jobs", "2"});
  ASSERT_EQ(ad.code, 0);
  EXPECT_EQ(json::parse(ad.out)["found"], json({"F", "G"}));
  // A coarse grid misses J: golden mismatch is a negative verdict.
  EXPECT_EQ(cli({"classify", "--base", "g4", "--grid", "values=1"}).code, 2);
  EXPECT_EQ(cli({"classify", "--base", "sl2"}).code, 1);
  EXPECT_EQ(cli({"classify", "--base", "h3", "--mode", "ext3"}).code, 1);
  EXPECT_EQ(cli({"classify", "--base", "h3", "--grid", "values=1/0"}).code, 1);
}

TEST(Cli, CanonicalRoundTrip) {
  std::vector<std::string> docs;
  for (const auto& key : catalog_keys()) docs.push_back(read_text_file(cat(key)));
  docs.push_back(cli({"der", cat("g4"), "--h1"}).out);
  docs.push_back(cli({"extend", cat("h3"), "--derivation", kEx + "h3_diag211.json"}).out);
  docs.push_back(cli({"classify", "--base", "r2"}).out);
  for (const auto& d : docs) EXPECT_EQ(canonicalize_document(d), d);
  for (const auto& key : catalog_keys()) {
    const std::string text = read_text_file(cat(key));
    EXPECT_EQ(serialize_algebra(parse_algebra(text)), text);
  }
  Matrix m = parse_matrix(read_text_file(kEx + "g_sign_flip.json"));
  EXPECT_EQ(serialize_matrix(m), read_text_file(kEx + "g_sign_flip.json"));
  EXPECT_THROW(parse_matrix(R"({"rows": 2, "cols": 2, "entries": ["1"]})"), ParseError);
  EXPECT_THROW(parse_algebra(R"({"dim": 3, "brackets": [{"i": 2, "j": 1, "coeffs": {}}]})"), ParseError);
  EXPECT_THROW(parse_algebra(R"({"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"4": "1"}}]})"), ParseError);
  EXPECT_THROW(parse_algebra(R"({"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 0.5}}]})"), ParseError);
  EXPECT_THROW(parse_algebra("{"), ParseError);
}
