#include <gtest/gtest.h>

#include "solvlie/classify.hpp"

using namespace solvlie;

namespace {

std::vector<std::string> v(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

void expect_consistent(const ClassificationReport& r) {
  EXPECT_EQ(r.points, r.members + r.rejected);
  std::size_t hits = 0;
  for (const auto& f : r.families) {
    hits += f.hits;
    EXPECT_EQ(f.hits, f.witnessed + f.formal);
  }
  EXPECT_EQ(r.members, hits + r.out_of_field + r.unmatched);
}

}  // namespace

TEST(Sweep, GoldenNonAbelian) {
  auto h3 = classify_ext1("h3");
  EXPECT_EQ(h3.names(), v({"A", "B", "C"}));
  EXPECT_TRUE(h3.golden_match);
  expect_consistent(h3);
  auto g4 = classify_ext1("g4");
  EXPECT_EQ(g4.names(), v({"I", "J"}));
  EXPECT_EQ(g4.out_of_field, 0u);
  expect_consistent(g4);
  auto ad = classify_ext2_ad("h3");
  EXPECT_EQ(ad.names(), v({"F", "G"}));
  expect_consistent(ad);
}

TEST(Sweep, GoldenAbelian) {
  EXPECT_EQ(classify_ext1("r1").names(), v({"A"}));
  EXPECT_EQ(classify_ext1("r2").names(), v({"A", "B", "C"}));
  auto r3 = classify_ext1("r3");
  EXPECT_EQ(r3.names(), v({"A", "B", "C", "D"}));
  expect_consistent(r3);
  EXPECT_EQ(classify_ext2_ad("r2").names(), v({"A", "B"}));
  auto r3ad = classify_ext2_ad("r3");
  EXPECT_EQ(r3ad.names(), v({"A", "B", "C", "D", "E"}));
  expect_consistent(r3ad);
}

TEST(Sweep, SampledLargeBases) {
  GridSpec g = GridSpec::parse("values=-1,0,1,2;sample=6000;seed=3");
  auto rh = classify_ext1("r_plus_h3", &g);
  EXPECT_EQ(rh.names(), v({"A", "B", "C", "D", "E", "F", "G", "H"}));
  EXPECT_EQ(rh.points, 6000u);
  expect_consistent(rh);
}

TEST(Sweep, JobsAreDeterministic) {
  GridSpec g = GridSpec::parse("values=0,1,-1,2,1/2");
  auto a = classify_ext1("h3", &g, {1, false});
  auto b = classify_ext1("h3", &g, {3, false});
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.out_of_field, b.out_of_field);
  ASSERT_EQ(a.families.size(), b.families.size());
  for (std::size_t i = 0; i < a.families.size(); ++i) {
    EXPECT_EQ(a.families[i].hits, b.families[i].hits);
    EXPECT_EQ(a.families[i].samples, b.families[i].samples);
  }
}

TEST(Sweep, DenseGridFindsNothingNew) {
  const BaseModel& b = base_model("h3", Mode::Ext1);
  auto dense = classify(b, dense_grid(b));
  EXPECT_EQ(dense.names(), b.golden);
  EXPECT_EQ(dense.unmatched, 0u);
  const BaseModel& g4 = base_model("g4", Mode::Ext1);
  EXPECT_EQ(classify(g4, dense_grid(g4)).names(), g4.golden);
}

TEST(Sweep, GoldenMismatchIsReported) {
  BaseModel b = make_g4_ext1();
  b.golden = {"J"};
  GridSpec g = GridSpec::parse("values=0,1,2");
  EXPECT_FALSE(classify(b, g).golden_match);
  EXPECT_THROW(classify(b, g, {1, true}), GoldenMismatch);
  // A grid too coarse to reach J is a mismatch too, never a silent pass.
  BaseModel c = make_g4_ext1();
  GridSpec diag = GridSpec::parse("values=1");
  EXPECT_THROW(classify(c, diag, {1, true}), GoldenMismatch);
}

TEST(Sweep, GridSpecText) {
  GridSpec g = GridSpec::parse("values=0,1/2,-3;sample=10;seed=4");
  EXPECT_EQ(g.values.size(), 3u);
  EXPECT_EQ(GridSpec::parse(g.str()).str(), g.str());
  EXPECT_THROW(GridSpec::parse("sample=3"), std::invalid_argument);
  EXPECT_THROW(GridSpec::parse("values=1;step=2"), std::invalid_argument);
  EXPECT_THROW(GridSpec::parse("values=1/0"), std::invalid_argument);
}

TEST(Sweep, DistinctnessEvidence) {
  for (const char* key : {"h3", "g4", "r3"}) {
    const BaseModel& b = base_model(key, Mode::Ext1);
    auto rep = classify(b, default_grid(b));
    auto rows = distinctness_evidence(b, rep);
    const std::size_t k = rep.names().size();
    EXPECT_EQ(rows.size(), k * (k - 1) / 2);
    for (const auto& r : rows) EXPECT_NE(r.evidence, "UNRESOLVED") << key << " " << r.a << "/" << r.b;
  }
}
