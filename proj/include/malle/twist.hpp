#ifndef MALLE_TWIST_HPP
#define MALLE_TWIST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malle/abelian.hpp"
#include "malle/invariant.hpp"
#include "malle/perm.hpp"

namespace malle {

/// A group with an exponent function and base-field data, plus everything
/// derived from them that pair computations share.
struct Setting {
  std::shared_ptr<const PermGroup> group;
  ClassPartition classes;
  ExpFunction exp;
  std::uint64_t a = 0; // a(G)
  std::uint64_t d = 1; // lcm of orders of the minimizers in G
  CycloGamma gamma;    // modulus d
  std::vector<std::shared_ptr<const LatticeEntry>> lattice;

  /// modulus = 0 uses d; otherwise it must be a multiple of d.
  static Setting make(PermGroup g, const ExpSpec& spec, const BaseField& base, std::uint64_t modulus = 0);
};

/// A projection pi: G -> B = G/N together with surjections phi: Gamma -> B.
///
/// Surjections with the same kernel H <= Gamma cut out the same subfield;
/// they are kept together in phis and the pair reports the largest b among
/// them. phis.front() is the representative.
struct PiPhiPair {
  std::shared_ptr<const LatticeEntry> kernel;
  CycloGamma gamma;
  std::vector<Hom> phis;
  SubfieldLabel subfield;

  const Subgroup& n() const { return kernel->kernel; }
  const AbelianGroup& quotient() const { return kernel->quotient.group; }
  const Hom& phi() const { return phis.front(); }
  std::uint64_t modulus() const { return gamma.modulus(); }
  bool trivial() const { return quotient().trivial(); }
};

/// Residues of ker(phi), ascending.
std::vector<std::uint64_t> kernel_residues(const CycloGamma& gamma, const Hom& phi);

/// Generators of G(pi, phi) = {(x, y) : pi(x) = phi(y)}: (n, 1) for each
/// generator n of N, then one lift (x_i, y_i) per basis element y_i of Gamma.
struct FiberedGenSet {
  std::vector<std::pair<PermGroup::Element, std::uint64_t>> gens;
};
FiberedGenSet fibered_generators(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                 const Hom& phi);

struct TwistOptions {
  std::size_t burnside_cap = std::size_t{1} << 20; // max |G(pi, phi)| for full-sum methods
};

struct MethodCount {
  std::string method;                 // partition | burnside | class-fusion | variant-action | pole-order
  std::optional<std::uint64_t> count; // empty when the method was not run
};

struct OrbitReport {
  std::uint64_t count = 0;
  std::vector<PermGroup::Element> representatives; // minimal member per orbit, ascending
  std::vector<MethodCount> methods;
  bool agree = true;
};

/// Orbits of the twisted action (x, y) . g = x^-1 g^y x on the minimizers of
/// N, by union-find over the fibered generators. Throws ModulusError when a
/// minimizer's order does not divide the modulus of gamma.
OrbitReport orbit_partition(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma, const Hom& phi);

/// Burnside average over G(pi, phi), summing class by class. Empty when
/// |G(pi, phi)| exceeds the cap.
std::optional<std::uint64_t> burnside_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                            const Hom& phi, const TwistOptions& options = {});

/// Orbits of the lifted cyclotomic action on N-conjugacy classes of minimizers.
std::uint64_t class_fusion_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                 const Hom& phi);

/// Orbits of (x, a): y -> x y^(a^-1) x^-1.
std::uint64_t variant_action_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                   const Hom& phi);

/// Orbits of the fibered product acting on minimizers of N, for the
/// representative phi and for every merged phi; the count is the maximum.
struct PairValue {
  std::uint64_t b = 0;
  std::vector<std::uint64_t> per_phi; // matches pair.phis
  bool uniform() const;
};
PairValue b_pair(const Setting& s, const PiPhiPair& pair);

/// All methods on the representative phi, with the agreement flag.
OrbitReport cross_checked(const Setting& s, const PiPhiPair& pair, const TwistOptions& options = {});

/// Every N in the abelian normal lattice with a(N) = a(G), every surjection
/// Gamma -> G/N, grouped by (N, ker phi). Trivial pair first, then kernels by
/// decreasing order.
std::vector<PiPhiPair> enumerate_pairs(const Setting& s);

/// The pair with N = G.
PiPhiPair trivial_pair(const Setting& s);

std::uint64_t b_M(const Setting& s);

struct BT {
  std::uint64_t value = 0;
  std::size_t witness = 0; // index into the pair list
};
BT b_T(const Setting& s, const std::vector<PiPhiPair>& pairs, const std::vector<PairValue>& values);
BT b_T(const Setting& s);

/// Pair (pi', phi') obtained from a pair over a larger modulus D: B0 is the
/// image under phi of the units = 1 mod d, N' = pi^-1(B0), and phi' is the
/// induced map (Z/d)^x -> G/N'. The result uses s.gamma.
struct ReducedPair {
  std::shared_ptr<const LatticeEntry> kernel;
  Hom phi;
};
ReducedPair reduce_pair(const Setting& s, const LatticeEntry& kernel, const CycloGamma& big_gamma, const Hom& phi);

} // namespace malle

#endif // MALLE_TWIST_HPP
