#ifndef MALLE_PREDICT_HPP
#define MALLE_PREDICT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "malle/embed.hpp"
#include "malle/twist.hpp"

namespace malle {

enum class Relation { Equal, AtLeast, Info };

/// One compared quantity of an oracle: the closed-form value as text (it may
/// be a fraction such as "854/18") against the engine's count.
struct OracleValue {
  std::string label;
  std::string expected;
  std::optional<std::uint64_t> engine;
  Relation relation = Relation::Equal;
  bool agree = false;
};

struct OracleFlag {
  std::string code;
  std::string note;
};

struct OracleResult {
  std::string name;    // thm1 | rad-wreath | cl2 | wreath-bm
  std::string params;  // "ell=5 d=8"
  std::string formula; // the closed form being checked
  std::vector<OracleValue> values;
  std::vector<OracleFlag> flags;

  bool has_flag(const std::string& code) const;
};

struct OracleOptions {
  std::size_t element_cap = std::size_t{1} << 22;
};

/// b_T = gcd(d, ell-1) and b = prod_{r_i = s_i} p_i^{s_i} * 2^s for
/// C_ell wr C_d with the discriminant over Q, against the engine's b_T, b_M
/// and certified b_new.
OracleResult oracle_thm1(std::uint64_t ell, std::uint64_t d, const OracleOptions& options = {});

/// (1/(ell-1)) sum_{r in C_m} (ell^{m/ord r} - 1) for C_ell wr C_m with rad,
/// against b(pi, phi) at N = C_ell^m and the degree-m subfield of Q(mu_ell).
OracleResult oracle_rad_wreath(std::uint64_t ell, std::uint64_t m, const OracleOptions& options = {});

/// C_{ell^2} wr C_ell with rad: the printed and corrected Burnside sums for
/// the orbits inside N = C_{ell^2}^ell, and the lower bound for b(pi, phi) at
/// the degree-ell subfield of Q(mu_{ell^2}).
OracleResult oracle_cl2(std::uint64_t ell, const OracleOptions& options = {});

/// b_M(T wr B) = b_M(T) for the discriminant over Q.
OracleResult oracle_wreath_bM(const GroupExpr& t, const GroupExpr& b, const OracleOptions& options = {});

/// Orbits of S_min(G) inside n under conjugation by G and powering by Gamma.
std::uint64_t within_kernel_orbits(const Setting& s, const Subgroup& n);

/// The lattice entry whose kernel is the base group of a wreath product
/// (elements fixing every block), or null.
std::shared_ptr<const LatticeEntry> wreath_base_entry(const Setting& s);

/// Average over (x, a) in G(pi, phi) of #{y in S_min(N) : x y x^-1 = y^a},
/// element by element. Empty when |G(pi, phi)| exceeds the cap.
std::optional<std::uint64_t> pole_order(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                        const Hom& phi, const TwistOptions& options = {});

struct PredictOptions {
  TwistOptions twist;
  unsigned jobs = 1;
  bool cross_check = false; // run every counting method on each pair
  bool oracles = true;      // attach closed-form checks that apply to the group
};

struct PairRow {
  SubfieldLabel subfield;
  std::uint64_t kernel_order = 0;
  std::string quotient;
  PairValue value;
  std::vector<LiftStatus> lifts; // one per merged phi
  LiftStatus lift;               // the status shown for the row
  std::vector<MethodCount> methods;
  bool methods_agree = true;
};

struct BNew {
  std::uint64_t certified = 0;
  std::optional<std::uint64_t> optimistic; // set when an Unknown phi has a larger b
};

struct PredictionReport {
  std::string group;
  std::string invariant;
  std::string base;
  std::uint64_t a = 0;
  std::uint64_t d = 0;
  std::uint64_t b_M = 0;
  std::uint64_t b_T = 0;
  std::size_t b_T_witness = 0;
  std::vector<PairRow> pairs;
  BNew b_new;
  std::vector<OracleResult> oracles;
};

PredictionReport predict(const Setting& s, const PredictOptions& options = {});

} // namespace malle

#endif // MALLE_PREDICT_HPP
