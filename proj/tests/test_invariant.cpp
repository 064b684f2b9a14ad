#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "malle/error.hpp"
#include "malle/invariant.hpp"

using namespace malle;

namespace {

PermGroup group(const char* text) { return PermGroup::build(parse_group_expr(text)); }

std::vector<PermGroup::Element> all_elements(const PermGroup& g) {
  std::vector<PermGroup::Element> out(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    out[i] = static_cast<PermGroup::Element>(i);
  return out;
}

} // namespace

TEST(ExpSpec, Parse) {
  EXPECT_EQ(ExpSpec::parse("disc").kind, ExpKind::Disc);
  EXPECT_EQ(ExpSpec::parse("rad").kind, ExpKind::Rad);
  EXPECT_THROW(ExpSpec::parse("cond"), ParseError);
  EXPECT_THROW(ExpSpec::parse("table:/nonexistent/file"), ParseError);
  EXPECT_EQ(normalize_cycle_type("1^9 3"), "3 1^9");
  EXPECT_EQ(normalize_cycle_type("2 2 1"), "2^2 1");
}

TEST(ExpSpec, TableText) {
  const auto t = ExpSpec::parse_table("# comment\n2 1:1\n3:2\n");
  ASSERT_EQ(t.table.size(), 2u);
  EXPECT_THROW(ExpSpec::parse_table("2 1:1\n1 2:3\n"), ParseError);
  EXPECT_THROW(ExpSpec::parse_table("2 1\n"), ParseError);
  EXPECT_THROW(ExpSpec::parse_table("2 1:0\n"), ParseError);
}

TEST(ExpFunction, DiscIsIndex) {
  const auto g = group("wr(C3,C4)");
  const auto cp = conjugacy_classes(g);
  const auto f = make_exp(g, cp, ExpSpec::disc());
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    EXPECT_EQ(f.value(e), g.index(e));
  EXPECT_EQ(a_of(all_elements(g), f), 2u);
  EXPECT_EQ(d_of(g, f), 3u);
}

TEST(ExpFunction, RadExamples) {
  const auto g = group("wr(C3,C4)");
  const auto cp = conjugacy_classes(g);
  const auto f = make_exp(g, cp, ExpSpec::rad());
  EXPECT_EQ(a_of(all_elements(g), f), 1u);
  // the minimizers are the nonidentity base elements and products of them
  // with shifts: orders 3, 2, 4, 6, 12 all appear
  EXPECT_EQ(d_of(g, f), 12u);
  const auto s3 = group("S3");
  const auto fs = make_exp(s3, conjugacy_classes(s3), ExpSpec::rad());
  EXPECT_EQ(d_of(s3, fs), 6u);
}

TEST(ExpFunction, MinimizersOfS4) {
  const auto g = group("S4");
  const auto f = make_exp(g, conjugacy_classes(g), ExpSpec::disc());
  const auto m = s_min(all_elements(g), f);
  EXPECT_EQ(m.value, 1u);
  EXPECT_EQ(m.members.size(), 6u); // transpositions
  EXPECT_EQ(d_of(g, f), 2u);
  const std::vector<PermGroup::Element> id{0};
  EXPECT_THROW(a_of(id, f), UndefinedMinimumError);
}

TEST(ExpFunction, TableFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "malle_test_s3.table";
  {
    std::ofstream out(path);
    out << "2 1:3\n3:2\n";
  }
  const auto spec = ExpSpec::parse("table:" + path.string());
  std::filesystem::remove(path);
  const auto g = group("S3");
  const auto f = make_exp(g, conjugacy_classes(g), spec);
  const auto m = s_min(all_elements(g), f);
  EXPECT_EQ(m.value, 2u);
  EXPECT_EQ(m.members.size(), 2u);
  EXPECT_EQ(d_of(g, f), 3u);
}

TEST(ExpFunction, TableMissingClass) {
  const auto g = group("S3");
  EXPECT_THROW(make_exp(g, conjugacy_classes(g), ExpSpec::parse_table("3:2\n")), ValidationError);
}

TEST(ExpFunction, RejectsPowerUnstableValues) {
  const auto g = group("C5");
  const auto cp = conjugacy_classes(g);
  std::vector<std::uint64_t> values(cp.classes.size(), 1);
  values[0] = 0;
  EXPECT_NO_THROW(make_exp_from_classes(g, cp, values));
  values[1] = 2;
  EXPECT_THROW(make_exp_from_classes(g, cp, values), ValidationError);
  values[1] = 0;
  EXPECT_THROW(make_exp_from_classes(g, cp, values), ValidationError);
}
