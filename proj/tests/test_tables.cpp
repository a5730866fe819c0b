#include <gtest/gtest.h>

#include "twistkl/tables.hpp"

using namespace twistkl;

namespace {

Group make(const std::string& type, std::vector<int> star = {}, std::optional<int> bound = {}) {
  CoxeterMatrix m = parse_named_type(type);
  StarMap s = star.empty() ? StarMap::identity(m.rank()) : StarMap::from_one_based(star);
  GroupOptions opt;
  opt.max_length = bound;
  return Group(std::move(m), std::move(s), opt);
}

}  // namespace

TEST(Tables, ParseKind) {
  EXPECT_EQ(parse_table_kind("kl"), TableKind::kl);
  EXPECT_EQ(parse_table_kind("skl"), TableKind::skl);
  EXPECT_EQ(parse_table_kind("mu"), TableKind::mu);
  EXPECT_EQ(parse_table_kind("bar"), TableKind::bar);
  EXPECT_FALSE(parse_table_kind("foo").has_value());
  EXPECT_EQ(to_string(TableKind::skl), "skl");
}

TEST(Tables, Involutions) {
  const Group g = make("A1");
  const json t = involutions_table(g, std::nullopt);
  EXPECT_EQ(t["kind"], "involutions");
  ASSERT_EQ(t["rows"].size(), 2u);
  EXPECT_EQ(t["rows"][1]["w"], "s1");
  EXPECT_EQ(t["rows"][1]["length"], 1);
  EXPECT_EQ(t["rows"][1]["epsilon"], -1);
  EXPECT_EQ(make("A3").twisted_involutions().size(),
            involutions_table(make("A3"), std::nullopt)["rows"].size());
}

TEST(Tables, KlRows) {
  const Group g = make("A3");
  const Hecke h(g);
  const InvolutionModule m(h);
  const json t = polynomial_table(m, TableKind::kl, std::nullopt, 1);
  bool found = false;
  for (const auto& row : t["rows"])
    if (row["w"] == "s2s1s3s2" && row["y"] == "s2") {
      EXPECT_EQ(row["poly"], "1 + 1*q^1");
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Tables, SklMuAndBarRows) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const json skl = polynomial_table(m, TableKind::skl, std::nullopt, 1);
  ASSERT_EQ(skl["rows"].size(), 3u);
  EXPECT_EQ(skl["rows"][1]["w"], "s1");
  EXPECT_EQ(skl["rows"][1]["poly"], "1");
  const json mu = polynomial_table(m, TableKind::mu, std::nullopt, 1);
  ASSERT_EQ(mu["rows"].size(), 1u);
  EXPECT_EQ(mu["rows"][0]["mu_prime"], "1");
  EXPECT_EQ(mu["rows"][0]["mu_dprime"], "0");
  const json bar = polynomial_table(m, TableKind::bar, std::nullopt, 1);
  EXPECT_EQ(table_to_csv(bar), "w,y,poly\n1,1,1\ns1,1,1*v^-2 + -1\ns1,s1,1*v^-2\n");
}

TEST(Tables, CsvJoinsArrays) {
  const Group g = make("A1xA1", {2, 1});
  const std::string csv = table_to_csv(involutions_table(g, std::nullopt));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,length,w,epsilon,cases");
  EXPECT_NE(csv.find("I'_n;I'_n"), std::string::npos) << csv;
}

TEST(Tables, DeterministicAcrossThreadCounts) {
  for (TableKind kind : {TableKind::kl, TableKind::skl, TableKind::mu, TableKind::bar}) {
    const Group g = make("B3");
    const Hecke h1(g), h4(g);
    const InvolutionModule m1(h1), m4(h4);
    EXPECT_EQ(polynomial_table(m1, kind, std::nullopt, 1).dump(),
              polynomial_table(m4, kind, std::nullopt, 4).dump());
  }
}

TEST(Tables, BoundedInfiniteGroup) {
  const Group g = make("A2~", {}, 6);
  const Hecke h(g);
  const InvolutionModule m(h);
  const json t = polynomial_table(m, TableKind::skl, 4, 2);
  for (const auto& row : t["rows"]) EXPECT_LE(row["w"].get<std::string>().size(), 8u);
  EXPECT_FALSE(t["rows"].empty());
}
