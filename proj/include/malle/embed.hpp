#ifndef MALLE_EMBED_HPP
#define MALLE_EMBED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "malle/twist.hpp"

namespace malle {

enum class Verdict { Liftable, Obstructed, Unknown };
enum class LiftRule { None, FunctionField, AbelianLocal, WreathReduction, AbelianQuotientNecessary };

/// A place of Q: a prime, or 0 for the infinite place.
struct Place {
  std::uint64_t prime = 0;
  bool infinite() const { return prime == 0; }
  std::string to_string() const { return infinite() ? "infinity" : std::to_string(prime); }
  bool operator==(const Place&) const = default;
  auto operator<=>(const Place&) const = default;
};

struct LiftStatus {
  Verdict verdict = Verdict::Unknown;
  std::vector<Place> places; // obstructed places, primes ascending then infinity
  LiftRule rule = LiftRule::None;
  std::string reason;
};

std::string to_string(Verdict v);
std::string to_string(LiftRule r);
/// "liftable", "obstructed: 3, infinity", "unknown (<reason>)"
std::string describe(const LiftStatus& s);

/// Whether the degree-n subfield M_n of Q(mu_ell) embeds into a C_d-extension
/// of Q. Requires ell an odd prime and n | gcd(d, ell - 1).
LiftStatus embed_cyclic(std::uint64_t ell, std::uint64_t n, std::uint64_t d);

/// Local solvability over Q of lifting phi: (Z/m)^x -> B through a surjection
/// pibar: A -> B of abelian groups, at the infinite place and at the tame
/// primes of the conductor of ker(phi). Wild primes are listed separately.
struct LocalCheck {
  std::vector<Place> obstructed;
  std::vector<std::uint64_t> wild;
};
LocalCheck abelian_local_check(const AbelianGroup& a, const std::vector<AbelianGroup::Element>& pibar,
                               const CycloGamma& gamma, const Hom& phi);

/// Dispatch over the rules: function-field base with solvable kernel,
/// abelian G over Q, wreath products T wr C_d with phi inside Q(mu_ell), and a
/// necessary-condition filter through G^ab for everything else.
LiftStatus lift_status(const Setting& s, const PiPhiPair& pair, const Hom& phi);
LiftStatus lift_status(const Setting& s, const PiPhiPair& pair);

} // namespace malle

#endif // MALLE_EMBED_HPP
