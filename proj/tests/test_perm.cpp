#include <gtest/gtest.h>

#include <random>

#include "malle/error.hpp"
#include "malle/perm.hpp"
#include "support/brute_groups.hpp"
#include "support/brute_orbits.hpp"

using namespace malle;

namespace {

PermGroup group(const char* text) { return PermGroup::build(parse_group_expr(text)); }

bool in_base(const PermGroup& g, PermGroup::Element e, std::size_t block) {
  const auto im = g.images(e);
  for (std::size_t b = 0; b < g.degree() / block; ++b)
    if (im[b * block] / block != b)
      return false;
  return true;
}

} // namespace

TEST(Permutation, ParseAndCompose) {
  const auto a = Permutation::parse(5, "(0 1 2)(3 4)");
  EXPECT_EQ(a.to_string(), "(0 1 2)(3 4)");
  EXPECT_EQ(a.order(), 6u);
  EXPECT_EQ(a.cycle_count(), 2u);
  EXPECT_EQ(a.then(a.inverse()), Permutation::identity(5));
  EXPECT_EQ(a.pow(6), Permutation::identity(5));
  EXPECT_EQ(a.pow(-1), a.inverse());
  EXPECT_EQ(Permutation::identity(3).to_string(), "()");
  EXPECT_EQ(cycle_type_string(Permutation::parse(12, "(0 1 2)").cycle_type()), "3 1^9");
}

TEST(Permutation, ThenAppliesLeftFirst) {
  const auto a = Permutation::parse(3, "(0 1)");
  const auto b = Permutation::parse(3, "(1 2)");
  // 0 -> 1 -> 2
  EXPECT_EQ(a.then(b)[0], 2);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), ValidationError);
  EXPECT_THROW(Permutation::parse(3, "(0 1 1)"), Error);
  EXPECT_THROW(Permutation::parse(3, "(0 5)"), Error);
  EXPECT_THROW(Permutation::parse(3, "(0 1"), ParseError);
}

TEST(IndexOf, Examples) {
  EXPECT_EQ(index_of(Permutation::parse(3, "(0 1 2)")), 2u);
  EXPECT_EQ(index_of(Permutation::parse(2, "(0 1)")), 1u);
  EXPECT_EQ(index_of(Permutation::identity(7)), 0u);
  // (t, e, e, e) in C3 wr C4: one 3-cycle and nine fixed points
  EXPECT_EQ(index_of(Permutation::parse(12, "(0 1 2)")), 2u);
}

TEST(IndexOf, WreathBaseCopyKeepsIndex) {
  const auto t = group("S3");
  const auto g = group("wr(S3,C4)");
  for (PermGroup::Element e = 0; e < t.order(); ++e) {
    auto images = g.element(0).images();
    const auto te = t.images(e);
    for (std::size_t i = 0; i < 3; ++i)
      images[i] = te[i];
    const auto embedded = g.find(images);
    ASSERT_TRUE(embedded.has_value());
    EXPECT_EQ(g.index(*embedded), index_of(t.element(e)));
  }
}

TEST(GroupExpr, ParseAndPrint) {
  EXPECT_EQ(parse_group_expr("wr(C3, C4)").to_string(), "wr(C3,C4)");
  EXPECT_EQ(parse_group_expr("x(C2,S3)").degree(), 6u);
  EXPECT_EQ(parse_group_expr("gens:n=4;(0 1 2 3)").degree(), 4u);
  EXPECT_THROW(parse_group_expr("wr(C3"), ParseError);
  EXPECT_THROW(parse_group_expr("D4"), ParseError);
  EXPECT_THROW(parse_group_expr("gens:n=4;(0 1)"), ValidationError); // not transitive
}

TEST(BuildGroup, Orders) {
  const auto g = group("wr(C3,C4)");
  EXPECT_EQ(g.degree(), 12u);
  EXPECT_EQ(g.order(), 324u);
  const auto c5 = group("C5");
  EXPECT_EQ(c5.degree(), 5u);
  EXPECT_EQ(c5.order(), 5u);
  // regular: only the identity fixes a point
  for (PermGroup::Element e = 1; e < c5.order(); ++e)
    EXPECT_NE(c5.images(e)[0], 0);
  EXPECT_EQ(group("wr(C4,C4)").order(), 1024u);
  EXPECT_EQ(group("S4").order(), 24u);
  EXPECT_EQ(group("x(C3,C4)").order(), 12u);
}

TEST(BuildGroup, CapNamesConstructor) {
  try {
    PermGroup::build(parse_group_expr("wr(C5,C9)"));
    FAIL() << "expected SizeError";
  } catch (const SizeError& e) {
    EXPECT_NE(std::string(e.what()).find("wr(C5,C9)"), std::string::npos);
  }
  BuildOptions small;
  small.element_cap = 100;
  EXPECT_THROW(PermGroup::build(parse_group_expr("wr(C3,C4)"), small), SizeError);
  EXPECT_THROW(PermGroup::generate(6, {Permutation::parse(6, "(0 1)"), Permutation::parse(6, "(0 1 2 3 4 5)")},
                                   small),
               SizeError);
}

TEST(BuildGroup, ClosedUnderProducts) {
  const auto g = group("wr(C2,S3)");
  for (PermGroup::Element a = 0; a < g.order(); ++a) {
    EXPECT_EQ(g.mul(a, g.inv(a)), g.identity());
    for (PermGroup::Element b = 0; b < g.order(); ++b)
      ASSERT_EQ(g.element(g.mul(a, b)), g.element(a).then(g.element(b)));
  }
}

TEST(GroupOps, ConjAndProductsEqual) {
  const auto g = group("S4");
  for (PermGroup::Element a = 0; a < g.order(); ++a)
    for (PermGroup::Element x = 0; x < g.order(); ++x) {
      const auto c = g.conj(a, x);
      EXPECT_EQ(c, g.mul(g.mul(g.inv(x), a), x));
      EXPECT_TRUE(g.products_equal(x, c, a, x));
    }
}

TEST(ConjugacyClasses, Counts) {
  EXPECT_EQ(conjugacy_classes(group("S3")).classes.size(), 3u);
  EXPECT_EQ(conjugacy_classes(group("C4")).classes.size(), 4u);
  EXPECT_EQ(conjugacy_classes(group("S5")).classes.size(), 7u);
}

namespace {

std::size_t outside_base(const char* expr, std::size_t block) {
  const auto g = group(expr);
  std::size_t outside = 0;
  for (const auto& c : conjugacy_classes(g).classes)
    if (!in_base(g, c.representative, block))
      ++outside;
  return outside;
}

} // namespace

TEST(ConjugacyClasses, OutsideBaseMatchesBruteForce) {
  // (m-1) * ell needs every nontrivial shift to be a single m-cycle; for m = 4
  // the shift by 2 adds necklaces of length 2, so C5 wr C4 has 5 + 5 + 15
  EXPECT_EQ(outside_base("wr(C5,C4)", 5), brute::classes_outside_base(brute::cyclic_wreath(5, 4)));
  EXPECT_EQ(outside_base("wr(C5,C4)", 5), 25u);
  EXPECT_EQ(outside_base("wr(C7,C3)", 7), brute::classes_outside_base(brute::cyclic_wreath(7, 3)));
  EXPECT_EQ(outside_base("wr(C7,C3)", 7), 14u);
  EXPECT_EQ(outside_base("wr(C5,C2)", 5), 5u);
  EXPECT_EQ(outside_base("wr(C3,C4)", 3), brute::classes_outside_base(brute::cyclic_wreath(3, 4)));
}

TEST(ConjugacyClasses, PartitionAndOrdering) {
  const auto g = group("wr(C3,C4)");
  const auto cp = conjugacy_classes(g);
  std::size_t total = 0;
  for (std::size_t i = 0; i < cp.classes.size(); ++i) {
    const auto& c = cp.classes[i];
    total += c.members.size();
    EXPECT_EQ(c.representative, c.members.front());
    for (auto m : c.members) {
      EXPECT_EQ(cp.class_of[m], i);
      EXPECT_EQ(g.cycle_type(m), g.cycle_type(c.representative));
      EXPECT_EQ(g.order_of(m), g.order_of(c.representative));
    }
    if (i > 0) {
      const auto& p = cp.classes[i - 1];
      EXPECT_TRUE(p.members.size() < c.members.size() ||
                  (p.members.size() == c.members.size() && p.representative < c.representative));
    }
  }
  EXPECT_EQ(total, g.order());
}

TEST(Lattice, S3) {
  const auto g = group("S3");
  const auto lat = abelian_normal_lattice(g);
  ASSERT_EQ(lat.size(), 2u);
  EXPECT_EQ(lat[0].kernel.order(), 3u);
  EXPECT_EQ(lat[1].kernel.order(), 6u);
}

TEST(Lattice, CountsMatchSubgroupsOfAbelianization) {
  EXPECT_EQ(abelian_normal_lattice(group("wr(C3,C4)")).size(), brute::subgroup_count(3, 4));
  EXPECT_EQ(brute::subgroup_count(3, 4), 6u);
  EXPECT_EQ(abelian_normal_lattice(group("wr(C4,C4)")).size(), brute::subgroup_count(4, 4));
  EXPECT_EQ(brute::subgroup_count(4, 4), 15u);
}

TEST(Lattice, EntriesAreNormalWithAbelianQuotient) {
  const auto g = group("wr(C4,C4)");
  const auto lat = abelian_normal_lattice(g);
  EXPECT_EQ(lat.front().kernel.members, commutator_subgroup(g).members);
  EXPECT_EQ(lat.back().kernel.order(), g.order());
  for (const auto& e : lat) {
    for (auto n : e.kernel.members)
      for (auto s : g.generators())
        ASSERT_TRUE(e.kernel.has(g.conj(n, s)));
    EXPECT_EQ(e.kernel.order() * e.quotient.group.order(), g.order());
    EXPECT_EQ(generated_subgroup(g, e.kernel.generators).members, e.kernel.members);
  }
}

TEST(Quotient, Examples) {
  const auto g = group("wr(C3,C4)");
  const auto lat = abelian_normal_lattice(g);
  std::size_t c2 = 0;
  for (const auto& e : lat)
    if (e.quotient.group.order() == 2)
      ++c2;
  EXPECT_EQ(c2, 1u);
  const auto whole = quotient(g, whole_group(g));
  EXPECT_TRUE(whole.group.trivial());

  const auto h = group("wr(C4,C4)");
  const auto ab = quotient(h, commutator_subgroup(h));
  EXPECT_TRUE(ab.group.isomorphic_to(AbelianGroup({4, 4})));
}

TEST(Quotient, RejectsNonNormal) {
  const auto g = group("S3");
  PermGroup::Element t = 0;
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    if (g.order_of(e) == 2)
      t = e;
  EXPECT_THROW(quotient(g, generated_subgroup(g, {t})), ContractError);
  EXPECT_THROW(quotient(group("S4"), trivial_subgroup(group("S4"))), ContractError);
}

TEST(Quotient, ProjectionIsHomomorphism) {
  const auto g = group("wr(C3,C4)");
  for (const auto& e : abelian_normal_lattice(g)) {
    const auto& q = e.quotient;
    for (PermGroup::Element a = 0; a < g.order(); ++a)
      for (PermGroup::Element b = 0; b < g.order(); ++b)
        ASSERT_EQ(q.projection[g.mul(a, b)], q.group.add(q.projection[a], q.projection[b]));
  }
  // sampled on a larger group
  const auto h = group("wr(C4,C4)");
  const auto q = quotient(h, commutator_subgroup(h));
  std::mt19937 rng(7);
  std::uniform_int_distribution<PermGroup::Element> pick(0, static_cast<PermGroup::Element>(h.order() - 1));
  for (int i = 0; i < 10000; ++i) {
    const auto a = pick(rng), b = pick(rng);
    ASSERT_EQ(q.projection[h.mul(a, b)], q.group.add(q.projection[a], q.projection[b]));
  }
}

TEST(Solvable, Examples) {
  const auto g = group("wr(C3,C4)");
  for (const auto& e : abelian_normal_lattice(g))
    if (e.kernel.order() == 162)
      EXPECT_TRUE(solvable(g, e.kernel));
  const auto s3 = group("S3");
  EXPECT_TRUE(solvable(s3, whole_group(s3)));
  EXPECT_TRUE(solvable(s3, trivial_subgroup(s3)));
  const auto s5 = group("S5");
  EXPECT_FALSE(solvable(s5, whole_group(s5)));
}
