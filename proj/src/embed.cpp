#include "malle/embed.hpp"

#include <algorithm>

#include "malle/arith.hpp"
#include "malle/error.hpp"

namespace malle {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Liftable:
    return "liftable";
  case Verdict::Obstructed:
    return "obstructed";
  case Verdict::Unknown:
    return "unknown";
  }
  return "?";
}

std::string to_string(LiftRule r) {
  switch (r) {
  case LiftRule::None:
    return "none";
  case LiftRule::FunctionField:
    return "function-field";
  case LiftRule::AbelianLocal:
    return "abelian-local";
  case LiftRule::WreathReduction:
    return "wreath-reduction";
  case LiftRule::AbelianQuotientNecessary:
    return "abelian-quotient-necessary";
  }
  return "?";
}

std::string describe(const LiftStatus& s) {
  switch (s.verdict) {
  case Verdict::Liftable:
    return "liftable";
  case Verdict::Obstructed: {
    std::string out = "obstructed: ";
    for (std::size_t i = 0; i < s.places.size(); ++i)
      out += (i ? ", " : "") + s.places[i].to_string();
    return out;
  }
  case Verdict::Unknown:
    return "unknown (" + s.reason + ")";
  }
  return "?";
}

namespace {

void sort_places(std::vector<Place>& places) {
  std::sort(places.begin(), places.end(), [](const Place& x, const Place& y) {
    if (x.infinite() != y.infinite())
      return y.infinite();
    return x.prime < y.prime;
  });
}

} // namespace

LiftStatus embed_cyclic(std::uint64_t ell, std::uint64_t n, std::uint64_t d) {
  if (ell < 3 || !arith::is_prime(ell))
    throw ContractError("embed_cyclic needs an odd prime, got " + std::to_string(ell));
  if (n == 0 || d == 0 || arith::gcd(d, ell - 1) % n != 0)
    throw ContractError("embed_cyclic needs n | gcd(d, ell-1); got ell=" + std::to_string(ell) +
                        " n=" + std::to_string(n) + " d=" + std::to_string(d));
  LiftStatus st;
  st.rule = LiftRule::AbelianLocal;

  // at ell: the inertia generator must land on a generator of C_n through an
  // element of C_d whose order divides ell - 1
  for (auto [p, e] : arith::factor(n)) {
    const auto need = arith::ipow(p, arith::valuation(d, p));
    if ((ell - 1) % need != 0) {
      st.places.push_back({ell});
      break;
    }
  }
  // at infinity: M_n is imaginary iff n does not divide (ell-1)/2
  if (((ell - 1) / 2) % n != 0 && arith::valuation(d, 2) != arith::valuation(n, 2))
    st.places.push_back({0});

  st.verdict = st.places.empty() ? Verdict::Liftable : Verdict::Obstructed;
  return st;
}

LocalCheck abelian_local_check(const AbelianGroup& a, const std::vector<AbelianGroup::Element>& pibar,
                               const CycloGamma& gamma, const Hom& phi) {
  if (gamma.base().kind != BaseKind::Rationals)
    throw ContractError("abelian local check is implemented over Q only");
  const auto m = gamma.modulus();
  std::vector<std::uint64_t> h;
  for (auto e : phi.kernel())
    h.push_back(gamma.residue(e));
  std::sort(h.begin(), h.end());
  const auto f = conductor(m, h);

  LocalCheck out;
  auto exists = [&](AbelianGroup::Element target, std::uint64_t order_divides) {
    for (AbelianGroup::Element x = 0; x < a.order(); ++x)
      if (pibar[x] == target && order_divides % a.order_of(x) == 0)
        return true;
    return false;
  };

  for (auto [p, v] : arith::factor(f)) {
    if (p == 2 || v >= 2) {
      out.wild.push_back(p);
      continue;
    }
    const auto k = arith::valuation(m, p);
    const auto pk = arith::ipow(p, k);
    const auto rest = m / pk;
    const auto gen = arith::crt(arith::primitive_root_prime_power(p, k), pk, 1, rest);
    const auto target = phi(gamma.element(gen));
    if (!exists(target, p - 1))
      out.obstructed.push_back({p});
  }
  if (m > 2) {
    const auto c = phi(gamma.element(m - 1));
    if (c != 0 && !exists(c, 2))
      out.obstructed.push_back({0});
  }
  sort_places(out.obstructed);
  return out;
}

namespace {

// pibar: A -> B through G, where A = G/M for some M <= N.
std::vector<AbelianGroup::Element> factor_projection(const PermGroup& g, const Quotient& a, const Quotient& b) {
  std::vector<AbelianGroup::Element> out(a.group.order(), 0);
  std::vector<char> set(a.group.order(), 0);
  for (PermGroup::Element e = 0; e < g.order(); ++e) {
    const auto x = a.projection[e];
    if (!set[x]) {
      set[x] = 1;
      out[x] = b.projection[e];
    } else if (out[x] != b.projection[e]) {
      throw ContractError("projection does not factor through the abelian quotient");
    }
  }
  return out;
}

bool contains_wreath_base(const PermGroup& g, const Subgroup& n, std::size_t block) {
  const auto blocks = g.degree() / block;
  for (PermGroup::Element e = 0; e < g.order(); ++e) {
    const auto im = g.images(e);
    bool base = true;
    for (std::size_t b = 0; b < blocks && base; ++b)
      base = im[b * block] / block == b;
    if (base && !n.has(e))
      return false;
  }
  return true;
}

LiftStatus from_local(const LocalCheck& lc, LiftRule rule, bool may_certify) {
  LiftStatus st;
  st.rule = rule;
  if (!lc.obstructed.empty()) {
    st.verdict = Verdict::Obstructed;
    st.places = lc.obstructed;
    return st;
  }
  st.verdict = Verdict::Unknown;
  if (!lc.wild.empty()) {
    st.reason = "wild case out of scope (p =";
    for (auto p : lc.wild)
      st.reason += " " + std::to_string(p);
    st.reason += ")";
    return st;
  }
  if (may_certify) {
    st.verdict = Verdict::Liftable;
    return st;
  }
  st.reason = "abelian necessary conditions hold; existence not certified";
  return st;
}

} // namespace

LiftStatus lift_status(const Setting& s, const PiPhiPair& pair, const Hom& phi) {
  const auto& g = *s.group;
  LiftStatus st;
  if (pair.trivial()) {
    st.verdict = Verdict::Liftable;
    st.rule = LiftRule::None;
    return st;
  }

  switch (pair.gamma.base().kind) {
  case BaseKind::FunctionField:
    st.rule = LiftRule::FunctionField;
    if (solvable(g, pair.n())) {
      st.verdict = Verdict::Liftable;
    } else {
      st.verdict = Verdict::Unknown;
      st.reason = "kernel is not solvable";
    }
    return st;
  case BaseKind::Custom:
    st.verdict = Verdict::Unknown;
    st.reason = "no liftability policy for a custom base";
    return st;
  case BaseKind::Rationals:
    break;
  }

  const auto& bq = pair.kernel->quotient;
  // the first lattice entry is [G,G]
  const auto& ab = s.lattice.front()->quotient;

  if (g.is_abelian()) {
    const auto lc = abelian_local_check(ab.group, factor_projection(g, ab, bq), pair.gamma, phi);
    return from_local(lc, LiftRule::AbelianLocal, true);
  }

  const auto& expr = g.expr();
  if (expr.kind == GroupExpr::Kind::Wreath && expr.children[1]->kind == GroupExpr::Kind::Cyclic) {
    const auto block = expr.children[0]->degree();
    const auto top = expr.children[1]->m;
    const auto ell = pair.subfield.conductor;
    const auto n = pair.quotient().order();
    if (ell > 2 && arith::is_prime(ell) && contains_wreath_base(g, pair.n(), block) &&
        arith::gcd(top, ell - 1) % n == 0) {
      st = embed_cyclic(ell, n, top);
      st.rule = LiftRule::WreathReduction;
      return st;
    }
  }

  const auto lc = abelian_local_check(ab.group, factor_projection(g, ab, bq), pair.gamma, phi);
  return from_local(lc, LiftRule::AbelianQuotientNecessary, false);
}

LiftStatus lift_status(const Setting& s, const PiPhiPair& pair) { return lift_status(s, pair, pair.phi()); }

} // namespace malle
