#include <gtest/gtest.h>

#include <numeric>

#include "malle/embed.hpp"
#include "support/brute_embed.hpp"

using namespace malle;

namespace {

Setting setting(const char* g, ExpSpec spec = ExpSpec::rad(), BaseField base = BaseField::rationals()) {
  return Setting::make(PermGroup::build(parse_group_expr(g)), spec, base);
}

const PiPhiPair& find(const std::vector<PiPhiPair>& pairs, const std::string& name) {
  for (const auto& p : pairs)
    if (p.subfield.name == name)
      return p;
  throw std::runtime_error("no pair for " + name);
}

} // namespace

TEST(EmbedCyclic, Examples) {
  EXPECT_EQ(describe(embed_cyclic(3, 2, 4)), "obstructed: 3, infinity");
  EXPECT_EQ(embed_cyclic(5, 4, 4).verdict, Verdict::Liftable);
  EXPECT_EQ(embed_cyclic(5, 2, 4).verdict, Verdict::Liftable);
  const auto s = embed_cyclic(7, 3, 9);
  EXPECT_EQ(s.verdict, Verdict::Obstructed);
  EXPECT_EQ(s.places, (std::vector<Place>{{7}}));
}

TEST(EmbedCyclic, DegreeOneAlwaysLifts) {
  for (std::uint64_t ell : {3, 5, 7, 11, 13})
    for (std::uint64_t d = 1; d <= 12; ++d)
      EXPECT_EQ(embed_cyclic(ell, 1, d).verdict, Verdict::Liftable);
}

TEST(EmbedCyclic, MatchesEnumeration) {
  for (std::uint64_t ell : {3, 5, 7, 11, 13, 17}) {
    for (std::uint64_t d = 1; d <= 36; ++d) {
      const auto g = std::gcd(d, ell - 1);
      for (std::uint64_t n = 1; n <= g; ++n) {
        if (g % n)
          continue;
        const auto b = brute::embed_cyclic(ell, n, d);
        const auto e = embed_cyclic(ell, n, d);
        std::vector<Place> expected;
        if (b.at_ell)
          expected.push_back({ell});
        if (b.at_infinity)
          expected.push_back({0});
        EXPECT_EQ(e.places, expected) << ell << " " << n << " " << d;
        EXPECT_EQ(e.verdict == Verdict::Liftable, expected.empty());
      }
    }
  }
}

TEST(LiftStatus, C3WrC4) {
  const auto s = setting("wr(C3,C4)");
  const auto pairs = enumerate_pairs(s);
  const auto mu3 = lift_status(s, find(pairs, "Q(μ3)"));
  EXPECT_EQ(describe(mu3), "obstructed: 3, infinity");
  EXPECT_EQ(mu3.rule, LiftRule::WreathReduction);
  const auto qi = lift_status(s, find(pairs, "Q(i)"));
  EXPECT_EQ(qi.verdict, Verdict::Obstructed);
  EXPECT_EQ(qi.places, (std::vector<Place>{{0}}));
  const auto r3 = lift_status(s, find(pairs, "Q(√3)"));
  EXPECT_EQ(r3.places, (std::vector<Place>{{3}}));
  EXPECT_EQ(lift_status(s, find(pairs, "Q")).verdict, Verdict::Liftable);
}

TEST(LiftStatus, C5WrC4) {
  const auto s = setting("wr(C5,C4)");
  const auto pairs = enumerate_pairs(s);
  EXPECT_EQ(lift_status(s, find(pairs, "Q(μ5)")).verdict, Verdict::Liftable);
  EXPECT_EQ(lift_status(s, find(pairs, "Q(√5)")).verdict, Verdict::Liftable);
}

TEST(LiftStatus, WildPrimeIsUnknown) {
  const auto s = setting("wr(C5,C4)");
  bool seen = false;
  for (const auto& p : enumerate_pairs(s))
    if (p.subfield.conductor % 4 == 0 && p.subfield.conductor != 4) {
      const auto st = lift_status(s, p);
      if (st.verdict == Verdict::Unknown)
        seen = true;
      EXPECT_NE(st.verdict, Verdict::Liftable) << p.subfield.name;
    }
  EXPECT_TRUE(seen);
}

TEST(LiftStatus, NecessaryFilterNeverCertifies) {
  for (const char* g : {"S4", "x(S3,C2)", "wr(S3,C2)"}) {
    const auto s = setting(g, ExpSpec::disc());
    for (const auto& p : enumerate_pairs(s)) {
      const auto st = lift_status(s, p);
      if (st.rule == LiftRule::AbelianQuotientNecessary)
        EXPECT_NE(st.verdict, Verdict::Liftable);
    }
  }
}

TEST(LiftStatus, FunctionFieldSolvableKernelLifts) {
  const auto s = setting("wr(C3,C4)", ExpSpec::rad(), BaseField::function_field(5));
  for (const auto& p : enumerate_pairs(s)) {
    const auto st = lift_status(s, p);
    EXPECT_NE(st.verdict, Verdict::Obstructed);
    EXPECT_EQ(st.verdict, Verdict::Liftable);
    EXPECT_EQ(st.rule, p.trivial() ? LiftRule::None : LiftRule::FunctionField);
  }
}

TEST(LiftStatus, Describe) {
  LiftStatus u;
  u.reason = "wild prime 2";
  EXPECT_EQ(describe(u), "unknown (wild prime 2)");
  EXPECT_EQ(to_string(Verdict::Liftable), "liftable");
  EXPECT_EQ(Place{0}.to_string(), "infinity");
}
