#include <gtest/gtest.h>

#include <algorithm>

#include "malle/abelian.hpp"
#include "malle/arith.hpp"
#include "malle/error.hpp"

using namespace malle;

TEST(Arith, Basics) {
  EXPECT_EQ(arith::gcd(12, 18), 6u);
  EXPECT_EQ(arith::lcm(4, 6), 12u);
  EXPECT_EQ(arith::valuation(48, 2), 4u);
  EXPECT_EQ(arith::totient(20), 8u);
  EXPECT_TRUE(arith::is_prime(97));
  EXPECT_FALSE(arith::is_prime(91));
  EXPECT_EQ(arith::primitive_root_prime_power(5, 1), 2u);
  EXPECT_EQ(arith::primitive_root_prime_power(3, 2), 2u);
  EXPECT_EQ(arith::crt(2, 3, 3, 5), 8u);
  EXPECT_THROW(arith::ipow(10, 30), SizeError);
  const auto f = arith::factor(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], std::make_pair(std::uint64_t{2}, 3u));
}

TEST(AbelianGroup, Arithmetic) {
  const AbelianGroup g({2, 4});
  EXPECT_EQ(g.order(), 8u);
  for (AbelianGroup::Element a = 0; a < g.order(); ++a) {
    EXPECT_EQ(g.add(a, g.neg(a)), g.zero());
    EXPECT_EQ(g.scale(a, g.order_of(a)), g.zero());
    EXPECT_EQ(g.encode(g.coordinates(a)), a);
    for (AbelianGroup::Element b = 0; b < g.order(); ++b)
      EXPECT_EQ(g.add(a, b), g.add(b, a));
  }
  EXPECT_EQ(g.to_string(), "C2 x C4");
  EXPECT_EQ(AbelianGroup().to_string(), "1");
}

TEST(AbelianGroup, InvariantFactors) {
  EXPECT_EQ(AbelianGroup({2, 3}).invariant_factors(), (std::vector<std::uint32_t>{6}));
  EXPECT_TRUE(AbelianGroup({4, 3}).isomorphic_to(AbelianGroup({12})));
  EXPECT_FALSE(AbelianGroup({2, 2}).isomorphic_to(AbelianGroup({4})));
  EXPECT_EQ(AbelianGroup({4, 4}).generated(std::vector<AbelianGroup::Element>{1}).size(), 4u);
}

TEST(Units, Shapes) {
  const auto u12 = units_mod(12);
  EXPECT_EQ(u12.order(), 4u);
  EXPECT_TRUE(u12.shape().isomorphic_to(AbelianGroup({2, 2})));
  EXPECT_EQ(u12.residues(), (std::vector<std::uint64_t>{1, 5, 7, 11}));
  EXPECT_TRUE(units_mod(9).shape().isomorphic_to(AbelianGroup({6})));
  EXPECT_TRUE(units_mod(16).shape().isomorphic_to(AbelianGroup({2, 4})));
  EXPECT_EQ(units_mod(1).order(), 1u);
  EXPECT_EQ(units_mod(2).order(), 1u);
}

TEST(Units, ResidueElementRoundTrip) {
  const auto u = units_mod(20);
  for (auto r : u.residues()) {
    EXPECT_TRUE(u.contains(r));
    EXPECT_EQ(u.residue(u.element(r)), r);
  }
  EXPECT_FALSE(u.contains(5));
  EXPECT_THROW(u.element(4), ContractError);
  // the encoding is a homomorphism
  for (auto a : u.residues())
    for (auto b : u.residues())
      EXPECT_EQ(u.element(a * b % 20), u.shape().add(u.element(a), u.element(b)));
}

TEST(Units, FunctionFieldGamma) {
  // F_5(t), modulus 4: Gamma = <5 mod 4> = 1
  const auto g = CycloGamma::make(4, BaseField::function_field(5));
  EXPECT_EQ(g.order(), 1u);
  // F_2(t), modulus 9: 2 generates (Z/9)^x
  EXPECT_EQ(CycloGamma::make(9, BaseField::function_field(2)).order(), 6u);
  // F_4(t), modulus 9: <4> has order 3
  EXPECT_EQ(CycloGamma::make(9, BaseField::function_field(4)).order(), 3u);
  EXPECT_THROW(CycloGamma::make(9, BaseField::function_field(3)), ValidationError);
}

TEST(Homomorphisms, CountsAndSurjections) {
  const AbelianGroup c4({4}), c2({2});
  EXPECT_EQ(homomorphisms(c4, c2).size(), 2u);
  EXPECT_EQ(surjections(c4, c2).size(), 1u);
  EXPECT_EQ(surjections(c4, c4).size(), 2u);
  EXPECT_EQ(surjections(AbelianGroup({2, 2}), c2).size(), 3u);
  EXPECT_EQ(surjections(units_mod(5), c4).size(), 2u);
  EXPECT_EQ(surjections(c2, c4).size(), 0u);
  EXPECT_THROW(hom_from_images(c2, c4, {1}), ContractError);
}

TEST(Homomorphisms, KernelAndImage) {
  const AbelianGroup c4({4}), c2({2});
  const auto h = hom_from_images(c4, c2, {1});
  EXPECT_EQ(h.kernel(), (std::vector<AbelianGroup::Element>{0, 2}));
  EXPECT_EQ(h.image().size(), 2u);
  for (AbelianGroup::Element a = 0; a < 4; ++a)
    for (AbelianGroup::Element b = 0; b < 4; ++b)
      EXPECT_EQ(h(c4.add(a, b)), c2.add(h(a), h(b)));
}

TEST(Subfields, Labels) {
  const std::vector<std::uint64_t> all{1, 5, 7, 11};
  const auto q = label_subfield(12, all);
  EXPECT_EQ(q.conductor, 1u);
  EXPECT_EQ(q.degree, 1u);
  EXPECT_EQ(q.name, "Q");

  const std::vector<std::uint64_t> h_i{1, 5};
  const auto qi = label_subfield(12, h_i);
  EXPECT_EQ(qi.conductor, 4u);
  EXPECT_EQ(qi.degree, 2u);
  EXPECT_EQ(qi.name, "Q(i)");

  const std::vector<std::uint64_t> h_3{1, 7};
  const auto q3 = label_subfield(12, h_3);
  EXPECT_EQ(q3.conductor, 3u);
  EXPECT_EQ(q3.name, "Q(μ3)");

  const std::vector<std::uint64_t> h_r3{1, 11};
  const auto r3 = label_subfield(12, h_r3);
  EXPECT_EQ(r3.conductor, 12u);
  EXPECT_EQ(r3.name, "Q(√3)");

  const std::vector<std::uint64_t> h_5{1, 4};
  const auto r5 = label_subfield(5, h_5);
  EXPECT_EQ(r5.conductor, 5u);
  EXPECT_EQ(r5.degree, 2u);
  EXPECT_EQ(r5.name, "Q(√5)");
}

TEST(Subfields, ConductorDividesModulus) {
  const auto u = units_mod(36);
  for (const auto& phi : surjections(u, AbelianGroup({6}))) {
    std::vector<std::uint64_t> ker;
    for (auto e : phi.kernel())
      ker.push_back(u.residue(e));
    std::sort(ker.begin(), ker.end());
    const auto f = conductor(36, ker);
    EXPECT_EQ(36 % f, 0u);
    EXPECT_EQ(label_subfield(36, ker).degree, 6u);
  }
}
