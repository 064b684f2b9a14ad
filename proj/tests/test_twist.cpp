#include <gtest/gtest.h>

#include <map>

#include "malle/error.hpp"
#include "malle/twist.hpp"

using namespace malle;

namespace {

Setting setting(const char* g, ExpSpec spec = ExpSpec::rad(), BaseField base = BaseField::rationals(),
                std::uint64_t modulus = 0) {
  return Setting::make(PermGroup::build(parse_group_expr(g)), spec, base, modulus);
}

std::map<std::string, std::uint64_t> rows(const Setting& s) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& p : enumerate_pairs(s))
    out[p.subfield.name + "/" + std::to_string(p.n().order())] = b_pair(s, p).b;
  return out;
}

} // namespace

TEST(Setting, Invariants) {
  const auto s = setting("wr(C3,C4)");
  EXPECT_EQ(s.a, 1u);
  EXPECT_EQ(s.d, 12u);
  EXPECT_EQ(s.gamma.order(), 4u);
  EXPECT_EQ(s.lattice.size(), 6u);
  const auto t = setting("wr(C3,C4)", ExpSpec::disc());
  EXPECT_EQ(t.a, 2u);
  EXPECT_EQ(t.d, 3u);
  EXPECT_THROW(setting("wr(C3,C4)", ExpSpec::rad(), BaseField::rationals(), 18), ModulusError);
}

TEST(Pairs, C3WrC4Rad) {
  const auto s = setting("wr(C3,C4)");
  const auto pairs = enumerate_pairs(s);
  ASSERT_EQ(pairs.size(), 4u);
  EXPECT_TRUE(pairs.front().trivial());
  const auto r = rows(s);
  EXPECT_EQ(r.at("Q/324"), 19u);
  EXPECT_EQ(r.at("Q(i)/162"), 17u);
  EXPECT_EQ(r.at("Q(√3)/162"), 17u);
  EXPECT_EQ(r.at("Q(μ3)/162"), 29u);
  EXPECT_EQ(b_M(s), 19u);
  EXPECT_EQ(b_T(s).value, 29u);
}

TEST(Pairs, C3WrC4Disc) {
  const auto s = setting("wr(C3,C4)", ExpSpec::disc());
  const auto pairs = enumerate_pairs(s);
  EXPECT_EQ(pairs.size(), 2u);
  EXPECT_EQ(b_M(s), 1u);
  EXPECT_EQ(b_T(s).value, 2u);
}

TEST(Pairs, C4WrC4Rad) {
  const auto s = setting("wr(C4,C4)");
  EXPECT_EQ(enumerate_pairs(s).size(), 26u);
  EXPECT_EQ(b_M(s), 50u);
  EXPECT_EQ(b_T(s).value, 79u);
}

TEST(Pairs, EveryPhiIsSurjective) {
  const auto s = setting("wr(C4,C4)");
  for (const auto& p : enumerate_pairs(s))
    for (const auto& phi : p.phis)
      EXPECT_EQ(phi.image().size(), p.quotient().order());
}

TEST(Pairs, MergedPhisShareKernel) {
  const auto s = setting("wr(C4,C4)");
  for (const auto& p : enumerate_pairs(s))
    for (const auto& phi : p.phis)
      EXPECT_EQ(kernel_residues(p.gamma, phi), p.subfield.kernel_residues);
}

TEST(Methods, AgreeOnAllPairs) {
  for (const char* g : {"wr(C3,C4)", "wr(C2,C3)", "wr(C4,C4)", "S4", "x(C3,C3)"}) {
    for (const auto& spec : {ExpSpec::disc(), ExpSpec::rad()}) {
      const auto s = setting(g, spec);
      for (const auto& p : enumerate_pairs(s)) {
        const auto r = cross_checked(s, p, TwistOptions{std::size_t{1} << 22});
        EXPECT_TRUE(r.agree) << g << " " << spec.tag() << " " << p.subfield.name;
        EXPECT_EQ(r.count, b_pair(s, p).per_phi.front());
      }
    }
  }
}

TEST(Methods, BurnsideCap) {
  const auto s = setting("wr(C3,C4)");
  const auto p = trivial_pair(s);
  EXPECT_FALSE(burnside_count(s, *p.kernel, p.gamma, p.phi(), TwistOptions{10}).has_value());
  EXPECT_EQ(burnside_count(s, *p.kernel, p.gamma, p.phi()), 19u);
}

TEST(Methods, OrbitRepresentativesAreMinimal) {
  const auto s = setting("wr(C3,C4)");
  for (const auto& p : enumerate_pairs(s)) {
    const auto r = orbit_partition(s, *p.kernel, p.gamma, p.phi());
    EXPECT_EQ(r.representatives.size(), r.count);
    EXPECT_TRUE(std::is_sorted(r.representatives.begin(), r.representatives.end()));
  }
}

TEST(Invariants, BMAtMostBT) {
  for (const char* g : {"wr(C3,C4)", "wr(C2,C4)", "wr(C4,C4)", "S3", "wr(C2,C2)", "x(C2,C4)"}) {
    for (const auto& spec : {ExpSpec::disc(), ExpSpec::rad()}) {
      const auto s = setting(g, spec);
      EXPECT_LE(b_M(s), b_T(s).value) << g << " " << spec.tag();
      EXPECT_GE(b_M(s), 1u);
    }
  }
}

TEST(Invariants, TrivialPairGivesBM) {
  const auto s = setting("wr(C4,C4)");
  EXPECT_EQ(b_pair(s, trivial_pair(s)).b, b_M(s));
}

TEST(Invariants, ModulusDoesNotChangeBT) {
  const auto s = setting("wr(C3,C4)");
  const auto big = setting("wr(C3,C4)", ExpSpec::rad(), BaseField::rationals(), 24);
  EXPECT_EQ(b_M(big), b_M(s));
  EXPECT_EQ(b_T(big).value, b_T(s).value);
  const auto disc = setting("wr(C3,C2)", ExpSpec::disc());
  const auto disc9 = setting("wr(C3,C2)", ExpSpec::disc(), BaseField::rationals(), 9);
  EXPECT_EQ(b_T(disc9).value, b_T(disc).value);
}

TEST(Invariants, ReductionDoesNotDecreaseCount) {
  const auto s = setting("wr(C3,C4)");
  const auto big_gamma = units_mod(60);
  for (const auto& entry : s.lattice) {
    if (entry->kernel.order() != 162 && entry->kernel.order() != 324)
      continue;
    for (const auto& phi : surjections(big_gamma, entry->quotient.group)) {
      const auto red = reduce_pair(s, *entry, big_gamma, phi);
      const auto before = orbit_partition(s, *entry, big_gamma, phi).count;
      const auto after = orbit_partition(s, *red.kernel, s.gamma, red.phi).count;
      EXPECT_LE(before, after);
      if (red.kernel->kernel.order() == entry->kernel.order())
        EXPECT_EQ(before, after);
    }
  }
}

TEST(FunctionField, SmallGamma) {
  // F_5(t) sees only Gamma = <5 mod 12> = {1, 5}
  const auto s = setting("wr(C3,C4)", ExpSpec::rad(), BaseField::function_field(5));
  EXPECT_EQ(s.gamma.order(), 2u);
  const auto q = setting("wr(C3,C4)");
  EXPECT_GE(b_M(s), b_M(q));
  EXPECT_LE(b_M(s), b_T(s).value);
}

TEST(Modulus, RejectsShortModulus) {
  const auto s = setting("wr(C3,C4)");
  const auto p = trivial_pair(s);
  EXPECT_THROW(orbit_partition(s, *p.kernel, units_mod(6), surjections(units_mod(6), AbelianGroup())[0]),
               ModulusError);
}
