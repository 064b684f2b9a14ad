#ifndef MALLE_INVARIANT_HPP
#define MALLE_INVARIANT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "malle/perm.hpp"

namespace malle {

enum class ExpKind { Disc, Rad, Table };

/// How to assign exponents to conjugacy classes.
struct ExpSpec {
  ExpKind kind = ExpKind::Disc;
  /// Table entries keyed by canonical cycle type ("3 1^9").
  std::vector<std::pair<std::string, std::uint64_t>> table;
  std::string source; // file name for tables, for display

  static ExpSpec disc() { return {ExpKind::Disc, {}, {}}; }
  static ExpSpec rad() { return {ExpKind::Rad, {}, {}}; }
  /// Lines "<cycle type>:<value>", '#' starts a comment.
  static ExpSpec parse_table(std::string_view text, std::string source = {});
  /// "disc", "rad" or "table:<file>".
  static ExpSpec parse(std::string_view text);

  std::string tag() const;
};

/// Canonical form of a cycle-type key such as "1^9 3" -> "3 1^9".
std::string normalize_cycle_type(std::string_view text);

/// Exponent values on the nonidentity elements of a group.
class ExpFunction {
public:
  ExpKind kind() const { return kind_; }
  const std::string& tag() const { return tag_; }
  std::uint64_t value(PermGroup::Element e) const { return element_values_[e]; }
  const std::vector<std::uint64_t>& class_values() const { return class_values_; }

private:
  ExpKind kind_ = ExpKind::Disc;
  std::string tag_;
  std::vector<std::uint64_t> class_values_;   // class 0 is the identity, value 0
  std::vector<std::uint64_t> element_values_; // identity 0

  friend ExpFunction make_exp_from_classes(const PermGroup&, const ClassPartition&, std::vector<std::uint64_t>,
                                           ExpKind, std::string);
};

ExpFunction make_exp(const PermGroup& g, const ClassPartition& classes, const ExpSpec& spec);

/// Per-class values (index matches classes.classes). Throws ValidationError
/// naming the class and power k when exp(g^k) != exp(g) for some k coprime to
/// ord(g), or when a nonidentity class has no positive value.
ExpFunction make_exp_from_classes(const PermGroup& g, const ClassPartition& classes,
                                  std::vector<std::uint64_t> class_values, ExpKind kind = ExpKind::Table,
                                  std::string tag = "table");

struct MinSet {
  std::vector<PermGroup::Element> members; // ascending
  std::uint64_t value = 0;
};

/// Minimum exponent over the nonidentity members of subset.
std::uint64_t a_of(std::span<const PermGroup::Element> subset, const ExpFunction& f);
MinSet s_min(std::span<const PermGroup::Element> subset, const ExpFunction& f);

/// lcm of element orders over the minimizers of subset.
std::uint64_t d_of(const PermGroup& g, const ExpFunction& f, std::span<const PermGroup::Element> subset);
std::uint64_t d_of(const PermGroup& g, const ExpFunction& f);

} // namespace malle

#endif // MALLE_INVARIANT_HPP
