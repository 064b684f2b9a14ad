#ifndef MALLE_ABELIAN_HPP
#define MALLE_ABELIAN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace malle {

/// Finite abelian group C_{o_1} x ... x C_{o_k} in basis form.
///
/// Elements are encoded as mixed-radix integers over the factor orders, so
/// the group is {0, ..., order()-1} with 0 the identity. The factors are the
/// orders of an independent generating set; they need not be invariant
/// factors.
class AbelianGroup {
public:
  using Element = std::uint32_t;

  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::uint32_t> factor_orders);

  const std::vector<std::uint32_t>& factor_orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t order() const { return size_; }
  bool trivial() const { return size_ == 1; }

  Element zero() const { return 0; }
  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element scale(Element a, std::uint64_t k) const;
  std::uint64_t order_of(Element a) const;

  std::vector<std::uint32_t> coordinates(Element a) const;
  Element encode(std::span<const std::uint32_t> coords) const;
  Element basis_element(std::size_t i) const;

  /// Members of the subgroup generated by gens, ascending.
  std::vector<Element> generated(std::span<const Element> gens) const;

  std::vector<std::uint32_t> invariant_factors() const;
  bool isomorphic_to(const AbelianGroup& other) const;

  /// "1", "C4", "C2 x C4" (factors as stored).
  std::string to_string() const;

private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> strides_;
  std::size_t size_ = 1;
};

/// A concrete finite abelian group on the ids 0..size-1.
struct AbelianTable {
  std::size_t size = 1;
  std::uint32_t identity = 0;
  std::function<std::uint32_t(std::uint32_t, std::uint32_t)> op;
};

/// Independent generating set of a concrete abelian group together with the
/// induced isomorphism onto basis form.
struct AbelianBasis {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> generators; // (id, order)
  AbelianGroup group;
  std::vector<AbelianGroup::Element> encode; // id -> basis form
  std::vector<std::uint32_t> decode;         // basis form -> id
};

/// Primary-decomposition basis: each Sylow part is split greedily by
/// repeatedly taking an element of maximal order modulo the span of the
/// generators chosen so far. Generators are ordered by prime, then by
/// decreasing order.
AbelianBasis basis(const AbelianTable& table);

enum class BaseKind { Rationals, FunctionField, Custom };

/// Base-field data consumed by the engine: only the image of the cyclotomic
/// character in (Z/dZ)^x matters.
struct BaseField {
  BaseKind kind = BaseKind::Rationals;
  std::uint64_t q = 0;                            // FunctionField
  std::vector<std::uint64_t> custom_generators;   // Custom

  static BaseField rationals() { return {}; }
  static BaseField function_field(std::uint64_t q) { return {BaseKind::FunctionField, q, {}}; }

  /// "Q", "Fq:q=5", "custom:<g1>,<g2>"
  std::string tag() const;
};

/// A subgroup Gamma of (Z/dZ)^x: everything for Q, <q mod d> for F_q(t).
class CycloGamma {
public:
  static CycloGamma make(std::uint64_t modulus, const BaseField& base);

  std::uint64_t modulus() const { return modulus_; }
  const BaseField& base() const { return base_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  const AbelianGroup& shape() const { return basis_.group; }
  std::size_t order() const { return residues_.size(); }

  bool contains(std::uint64_t residue) const;
  std::uint64_t residue(AbelianGroup::Element e) const;
  AbelianGroup::Element element(std::uint64_t residue) const;
  /// Residues of the basis generators, matching shape().factor_orders().
  std::vector<std::uint64_t> basis_residues() const;

private:
  std::uint64_t modulus_ = 1;
  BaseField base_;
  std::vector<std::uint64_t> residues_;
  AbelianBasis basis_;
};

/// (Z/dZ)^x with a computed basis, tagged as the base field Q.
CycloGamma units_mod(std::uint64_t d);

/// Homomorphism between groups in basis form, tabulated on the source.
struct Hom {
  std::vector<AbelianGroup::Element> basis_images;
  std::vector<AbelianGroup::Element> table;

  AbelianGroup::Element operator()(AbelianGroup::Element x) const { return table[x]; }
  std::vector<AbelianGroup::Element> kernel() const;
  std::vector<AbelianGroup::Element> image() const;
};

/// The homomorphism sending basis element i of source to images[i]; throws
/// ContractError if an image order does not divide the generator order.
Hom hom_from_images(const AbelianGroup& source, const AbelianGroup& target,
                    std::vector<AbelianGroup::Element> images);

/// All homomorphisms, by basis-image tuples in lexicographic order.
std::vector<Hom> homomorphisms(const AbelianGroup& source, const AbelianGroup& target);
/// Homomorphisms with image equal to target, same order.
std::vector<Hom> surjections(const AbelianGroup& source, const AbelianGroup& target);
std::vector<Hom> surjections(const CycloGamma& gamma, const AbelianGroup& target);

/// The fixed field of a subgroup H of Gamma <= (Z/dZ)^x.
struct SubfieldLabel {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> kernel_residues; // sorted
  std::uint64_t conductor = 1;                // 1 for function-field constant extensions
  std::uint64_t degree = 1;                   // [Gamma : H]
  std::string name;
};

/// Smallest f | d such that H contains every unit = 1 mod f.
std::uint64_t conductor(std::uint64_t d, std::span<const std::uint64_t> kernel_residues);

/// Label of the subfield of Q(mu_d) fixed by H <= (Z/dZ)^x.
SubfieldLabel label_subfield(std::uint64_t d, std::span<const std::uint64_t> kernel_residues);
/// Label relative to an arbitrary base; constant extensions for F_q(t).
SubfieldLabel label_subfield(const CycloGamma& gamma, std::span<const std::uint64_t> kernel_residues);

} // namespace malle

#endif // MALLE_ABELIAN_HPP
