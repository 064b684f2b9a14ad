#ifndef MALLE_PERM_HPP
#define MALLE_PERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "malle/abelian.hpp"

namespace malle {

using Point = std::uint8_t;
inline constexpr std::size_t kMaxDegree = 256;

/// Bijection of {0, ..., n-1} stored as an image array.
class Permutation {
public:
  Permutation() = default;
  /// Throws ValidationError unless images is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n);
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles);
  /// Cycle notation such as "(0 1 2)(3 4)"; "()" or "" is the identity.
  static Permutation parse(std::size_t n, std::string_view text);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  /// Apply *this first, then other.
  Permutation then(const Permutation& other) const;
  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;
  std::uint64_t order() const;
  std::size_t cycle_count() const;
  /// Cycle lengths in decreasing order, fixed points included.
  std::vector<std::size_t> cycle_type() const;
  bool is_identity() const;

  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

private:
  std::vector<Point> images_;
};

/// n minus the number of cycles, fixed points counted as cycles.
std::size_t index_of(const Permutation& g);

/// "3 1^9" style rendering of a cycle type.
std::string cycle_type_string(const std::vector<std::size_t>& type);

struct GroupExpr {
  enum class Kind { Cyclic, Symmetric, Wreath, Direct, Explicit };

  Kind kind = Kind::Cyclic;
  std::size_t m = 1; // Cyclic/Symmetric order parameter, Explicit degree
  std::vector<std::shared_ptr<const GroupExpr>> children;
  std::vector<Permutation> generators; // Explicit only

  static GroupExpr cyclic(std::size_t m);
  static GroupExpr symmetric(std::size_t m);
  static GroupExpr wreath(GroupExpr t, GroupExpr b);
  static GroupExpr direct(GroupExpr a, GroupExpr b);
  static GroupExpr explicit_gens(std::size_t degree, std::vector<Permutation> gens);

  std::size_t degree() const;
  /// Generators of the permutation action in degree().
  std::vector<Permutation> action_generators() const;
  /// Group order when it follows from the constructor, saturating at UINT64_MAX.
  std::optional<std::uint64_t> known_order() const;
  /// Canonical text in the input grammar.
  std::string to_string() const;
};

/// Grammar: C<m> | S<m> | wr(<e>,<e>) | x(<e>,<e>) | gens:n=<deg>;<cycles>;...
GroupExpr parse_group_expr(std::string_view text);

struct BuildOptions {
  std::size_t element_cap = std::size_t{1} << 21;
};

struct Subgroup;

/// Fully materialized permutation group.
///
/// Elements are indexed 0..order()-1 in breadth-first discovery order; 0 is
/// the identity. Products are looked up through an open-addressing hash of
/// the image arrays. All members are const and safe to share across threads.
class PermGroup {
public:
  using Element = std::uint32_t;

  static PermGroup build(const GroupExpr& expr, const BuildOptions& options = {});
  /// Closure of arbitrary generators; name is used in error messages.
  static PermGroup generate(std::size_t degree, const std::vector<Permutation>& gens,
                            const BuildOptions& options = {}, std::string name = "gens");

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return order_; }
  const GroupExpr& expr() const { return expr_; }
  const std::vector<Element>& generators() const { return gens_; }

  Element identity() const { return 0; }
  std::span<const Point> images(Element a) const {
    return {data_.data() + std::size_t{a} * degree_, degree_};
  }
  Permutation element(Element a) const;
  std::optional<Element> find(std::span<const Point> images) const;
  std::optional<Element> find(const Permutation& p) const { return find(p.images()); }

  /// a then b.
  Element mul(Element a, Element b) const;
  Element inv(Element a) const { return inverse_[a]; }
  Element pow(Element a, std::int64_t k) const;
  /// x^-1 g x.
  Element conj(Element g, Element x) const;
  /// True iff a then b equals c then d, without a lookup.
  bool products_equal(Element a, Element b, Element c, Element d) const;

  std::uint64_t order_of(Element a) const;
  std::size_t index(Element a) const;
  std::vector<std::size_t> cycle_type(Element a) const;

  bool is_abelian() const;
  std::uint64_t exponent() const;

private:
  std::size_t degree_ = 1;
  std::size_t order_ = 1;
  GroupExpr expr_;
  std::vector<Point> data_;
  std::vector<Element> slots_; // element + 1, 0 = empty
  std::size_t mask_ = 0;
  std::vector<Element> gens_;
  std::vector<Element> inverse_;

  std::size_t hash(std::span<const Point> images) const;
  Element lookup(const Point* images) const;
};

/// A subgroup of a materialized group, as flags over the parent's elements.
struct Subgroup {
  std::vector<char> contains;
  std::vector<PermGroup::Element> members; // ascending
  std::vector<PermGroup::Element> generators;

  std::size_t order() const { return members.size(); }
  bool has(PermGroup::Element e) const { return contains[e] != 0; }
};
using NormalSubgroup = Subgroup;

Subgroup whole_group(const PermGroup& g);
Subgroup trivial_subgroup(const PermGroup& g);
Subgroup generated_subgroup(const PermGroup& g, const std::vector<PermGroup::Element>& gens);
/// Smallest subgroup containing gens and normalized by every element of by.
Subgroup normal_closure(const PermGroup& g, const std::vector<PermGroup::Element>& gens,
                        const std::vector<PermGroup::Element>& by);
Subgroup commutator_subgroup(const PermGroup& g);
/// [H, H] for a subgroup H.
Subgroup derived_subgroup(const PermGroup& g, const Subgroup& h);
bool is_normal(const PermGroup& g, const Subgroup& h);
bool solvable(const PermGroup& g, const Subgroup& h);

struct ConjugacyClass {
  PermGroup::Element representative; // minimal member
  std::vector<PermGroup::Element> members;
};

/// Classes ordered by (size, minimal member).
struct ClassPartition {
  std::vector<ConjugacyClass> classes;
  std::vector<std::uint32_t> class_of; // element -> class index
};
ClassPartition conjugacy_classes(const PermGroup& g);

/// Abelian quotient G/N with a total projection from element indices.
struct Quotient {
  AbelianGroup group;
  std::vector<AbelianGroup::Element> projection;
};

/// Throws ContractError unless h is normal with abelian quotient.
Quotient quotient(const PermGroup& g, const Subgroup& h);

struct LatticeEntry {
  NormalSubgroup kernel;
  Quotient quotient;
};

/// Normal subgroups containing [G,G], ordered by order then member set.
std::vector<LatticeEntry> abelian_normal_lattice(const PermGroup& g);

} // namespace malle

#endif // MALLE_PERM_HPP
