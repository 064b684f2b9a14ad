#include "malle/twist.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "malle/arith.hpp"
#include "malle/error.hpp"
#include "malle/union_find.hpp"

namespace malle {

Setting Setting::make(PermGroup g, const ExpSpec& spec, const BaseField& base, std::uint64_t modulus) {
  if (g.order() < 2)
    throw ValidationError("the trivial group has no minimal exponent");
  Setting s;
  s.group = std::make_shared<const PermGroup>(std::move(g));
  const auto& grp = *s.group;
  s.classes = conjugacy_classes(grp);
  s.exp = make_exp(grp, s.classes, spec);
  std::vector<PermGroup::Element> all(grp.order());
  std::iota(all.begin(), all.end(), 0u);
  s.a = a_of(all, s.exp);
  s.d = d_of(grp, s.exp, all);
  if (modulus == 0)
    modulus = s.d;
  if (modulus % s.d != 0)
    throw ModulusError("modulus " + std::to_string(modulus) + " is not a multiple of d = " + std::to_string(s.d));
  s.gamma = CycloGamma::make(modulus, base);
  for (auto& e : abelian_normal_lattice(grp))
    s.lattice.push_back(std::make_shared<const LatticeEntry>(std::move(e)));
  return s;
}

std::vector<std::uint64_t> kernel_residues(const CycloGamma& gamma, const Hom& phi) {
  std::vector<std::uint64_t> out;
  for (auto e : phi.kernel())
    out.push_back(gamma.residue(e));
  std::sort(out.begin(), out.end());
  return out;
}

FiberedGenSet fibered_generators(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                 const Hom& phi) {
  const auto& g = *s.group;
  const auto& proj = kernel.quotient.projection;
  const auto& b = kernel.quotient.group;
  std::vector<std::int64_t> lift(b.order(), -1);
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    if (lift[proj[e]] < 0)
      lift[proj[e]] = e;

  FiberedGenSet out;
  for (auto n : kernel.kernel.generators)
    out.gens.emplace_back(n, 1 % gamma.modulus());
  const auto residues = gamma.basis_residues();
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto target = phi(gamma.shape().basis_element(i));
    out.gens.emplace_back(static_cast<PermGroup::Element>(lift[target]), residues[i]);
  }
  return out;
}

namespace {

// Minimizers of N with a local index, after checking their orders divide the modulus.
struct Domain {
  std::vector<PermGroup::Element> members;
  std::vector<std::int32_t> local; // element -> position in members, -1 outside
};

Domain minimizer_domain(const Setting& s, const LatticeEntry& kernel, std::uint64_t modulus) {
  const auto& g = *s.group;
  Domain dom;
  dom.members = s_min(kernel.kernel.members, s.exp).members;
  dom.local.assign(g.order(), -1);
  for (std::size_t i = 0; i < dom.members.size(); ++i) {
    const auto o = g.order_of(dom.members[i]);
    if (modulus % o != 0)
      throw ModulusError("element " + g.element(dom.members[i]).to_string() + " of order " + std::to_string(o) +
                         " does not have order dividing the modulus " + std::to_string(modulus));
    dom.local[dom.members[i]] = static_cast<std::int32_t>(i);
  }
  return dom;
}

std::uint32_t position(const Domain& dom, PermGroup::Element e) {
  const auto i = dom.local[e];
  if (i < 0)
    throw ContractError("twisted action left the set of minimizers");
  return static_cast<std::uint32_t>(i);
}

std::uint64_t inverse_mod(std::uint64_t r, std::uint64_t m) {
  if (m == 1)
    return 0;
  for (std::uint64_t t = 1; t < m; ++t)
    if (r * t % m == 1)
      return t;
  throw ContractError(std::to_string(r) + " is not a unit mod " + std::to_string(m));
}

} // namespace

OrbitReport orbit_partition(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                            const Hom& phi) {
  const auto& g = *s.group;
  const auto dom = minimizer_domain(s, kernel, gamma.modulus());
  const auto gens = fibered_generators(s, kernel, gamma, phi);

  UnionFind uf(dom.members.size());
  for (std::size_t i = 0; i < dom.members.size(); ++i) {
    for (auto [x, r] : gens.gens) {
      const auto t = g.conj(g.pow(dom.members[i], static_cast<std::int64_t>(r)), x);
      uf.unite(static_cast<std::uint32_t>(i), position(dom, t));
    }
  }

  OrbitReport rep;
  rep.count = uf.components();
  std::vector<char> seen(dom.members.size(), 0);
  for (std::size_t i = 0; i < dom.members.size(); ++i) {
    const auto root = uf.find(static_cast<std::uint32_t>(i));
    if (!seen[root]) {
      seen[root] = 1;
      rep.representatives.push_back(dom.members[i]); // members ascending, so this is the orbit minimum
    }
  }
  rep.methods.push_back({"partition", rep.count});
  return rep;
}

std::optional<std::uint64_t> burnside_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                            const Hom& phi, const TwistOptions& options) {
  const auto& g = *s.group;
  const std::uint64_t fibered_order = kernel.kernel.order() * gamma.order();
  if (fibered_order > options.burnside_cap)
    return std::nullopt;
  const auto dom = minimizer_domain(s, kernel, gamma.modulus());
  const auto& proj = kernel.quotient.projection;

  // Fixed-point counts are constant on G-classes of x: S is G-stable and pi
  // is constant on classes since B is abelian.
  unsigned __int128 total = 0;
  std::vector<PermGroup::Element> powered(dom.members.size());
  for (AbelianGroup::Element y = 0; y < gamma.order(); ++y) {
    const auto r = gamma.residue(y);
    for (std::size_t i = 0; i < dom.members.size(); ++i)
      powered[i] = g.pow(dom.members[i], static_cast<std::int64_t>(r));
    const auto target = phi(y);
    for (const auto& cls : s.classes.classes) {
      const auto x = cls.representative;
      if (proj[x] != target)
        continue;
      std::uint64_t fix = 0;
      for (std::size_t i = 0; i < dom.members.size(); ++i)
        if (g.products_equal(powered[i], x, x, dom.members[i]))
          ++fix;
      total += static_cast<unsigned __int128>(fix) * cls.members.size();
    }
  }
  if (total % fibered_order != 0)
    throw ContractError("Burnside sum is not divisible by |G(pi, phi)|");
  return static_cast<std::uint64_t>(total / fibered_order);
}

std::uint64_t class_fusion_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                 const Hom& phi) {
  const auto& g = *s.group;
  const auto dom = minimizer_domain(s, kernel, gamma.modulus());
  const auto gens = fibered_generators(s, kernel, gamma, phi);

  // N-conjugacy classes inside the minimizers
  UnionFind within(dom.members.size());
  for (std::size_t i = 0; i < dom.members.size(); ++i)
    for (auto n : kernel.kernel.generators)
      within.unite(static_cast<std::uint32_t>(i), position(dom, g.conj(dom.members[i], n)));

  std::vector<std::int32_t> class_id(dom.members.size(), -1);
  std::vector<PermGroup::Element> class_rep;
  for (std::size_t i = 0; i < dom.members.size(); ++i) {
    const auto root = within.find(static_cast<std::uint32_t>(i));
    if (class_id[root] < 0) {
      class_id[root] = static_cast<std::int32_t>(class_rep.size());
      class_rep.push_back(dom.members[i]);
    }
  }
  auto class_of = [&](PermGroup::Element e) {
    return static_cast<std::uint32_t>(class_id[within.find(position(dom, e))]);
  };

  // sigma(c) = xbar^-1 c^chi xbar for the lifted basis of Gamma
  UnionFind fused(class_rep.size());
  for (std::size_t c = 0; c < class_rep.size(); ++c) {
    for (std::size_t k = kernel.kernel.generators.size(); k < gens.gens.size(); ++k) {
      const auto [x, r] = gens.gens[k];
      const auto t = g.conj(g.pow(class_rep[c], static_cast<std::int64_t>(r)), x);
      fused.unite(static_cast<std::uint32_t>(c), class_of(t));
    }
  }
  return fused.components();
}

std::uint64_t variant_action_count(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                   const Hom& phi) {
  const auto& g = *s.group;
  const auto dom = minimizer_domain(s, kernel, gamma.modulus());
  const auto gens = fibered_generators(s, kernel, gamma, phi);

  UnionFind uf(dom.members.size());
  for (auto [x, r] : gens.gens) {
    const auto rinv = static_cast<std::int64_t>(inverse_mod(r, gamma.modulus()));
    const auto xinv = g.inv(x);
    for (std::size_t i = 0; i < dom.members.size(); ++i) {
      // conj(h, xinv) = x h x^-1
      const auto t = g.conj(g.pow(dom.members[i], rinv), xinv);
      uf.unite(static_cast<std::uint32_t>(i), position(dom, t));
    }
  }
  return uf.components();
}

bool PairValue::uniform() const {
  return std::all_of(per_phi.begin(), per_phi.end(), [&](std::uint64_t v) { return v == per_phi.front(); });
}

PairValue b_pair(const Setting& s, const PiPhiPair& pair) {
  PairValue v;
  for (const auto& phi : pair.phis) {
    const auto c = orbit_partition(s, *pair.kernel, pair.gamma, phi).count;
    v.per_phi.push_back(c);
    v.b = std::max(v.b, c);
  }
  return v;
}

OrbitReport cross_checked(const Setting& s, const PiPhiPair& pair, const TwistOptions& options) {
  auto rep = orbit_partition(s, *pair.kernel, pair.gamma, pair.phi());
  rep.methods.push_back({"burnside", burnside_count(s, *pair.kernel, pair.gamma, pair.phi(), options)});
  rep.methods.push_back({"class-fusion", class_fusion_count(s, *pair.kernel, pair.gamma, pair.phi())});
  rep.methods.push_back({"variant-action", variant_action_count(s, *pair.kernel, pair.gamma, pair.phi())});
  for (const auto& m : rep.methods)
    if (m.count && *m.count != rep.count)
      rep.agree = false;
  return rep;
}

std::vector<PiPhiPair> enumerate_pairs(const Setting& s) {
  std::vector<std::size_t> order(s.lattice.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return s.lattice[x]->kernel.order() > s.lattice[y]->kernel.order();
  });

  std::vector<PiPhiPair> out;
  for (auto idx : order) {
    const auto& entry = s.lattice[idx];
    if (entry->kernel.order() < 2 || a_of(entry->kernel.members, s.exp) != s.a)
      continue;
    std::vector<PiPhiPair> rows;
    for (auto& phi : surjections(s.gamma, entry->quotient.group)) {
      auto residues = kernel_residues(s.gamma, phi);
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const PiPhiPair& p) { return p.subfield.kernel_residues == residues; });
      if (it != rows.end()) {
        it->phis.push_back(std::move(phi));
        continue;
      }
      PiPhiPair p;
      p.kernel = entry;
      p.gamma = s.gamma;
      p.subfield = label_subfield(s.gamma, residues);
      p.subfield.kernel_residues = residues;
      p.phis.push_back(std::move(phi));
      rows.push_back(std::move(p));
    }
    for (auto& r : rows)
      out.push_back(std::move(r));
  }
  return out;
}

PiPhiPair trivial_pair(const Setting& s) {
  const auto& top = s.lattice.back();
  if (top->kernel.order() != s.group->order())
    throw ContractError("lattice does not end with the whole group");
  PiPhiPair p;
  p.kernel = top;
  p.gamma = s.gamma;
  auto phis = surjections(s.gamma, top->quotient.group);
  p.phis.push_back(std::move(phis.front()));
  p.subfield = label_subfield(s.gamma, s.gamma.residues());
  return p;
}

std::uint64_t b_M(const Setting& s) {
  const auto p = trivial_pair(s);
  return orbit_partition(s, *p.kernel, p.gamma, p.phi()).count;
}

BT b_T(const Setting&, const std::vector<PiPhiPair>& pairs, const std::vector<PairValue>& values) {
  BT bt;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (values[i].b > bt.value) {
      bt.value = values[i].b;
      bt.witness = i;
    }
  }
  return bt;
}

BT b_T(const Setting& s) {
  const auto pairs = enumerate_pairs(s);
  std::vector<PairValue> values;
  for (const auto& p : pairs)
    values.push_back(b_pair(s, p));
  return b_T(s, pairs, values);
}

ReducedPair reduce_pair(const Setting& s, const LatticeEntry& kernel, const CycloGamma& big_gamma, const Hom& phi) {
  const auto& g = *s.group;
  const auto big = big_gamma.modulus();
  const auto d = s.gamma.modulus();
  if (big % d != 0)
    throw ModulusError("modulus " + std::to_string(big) + " is not a multiple of " + std::to_string(d));
  const auto& b = kernel.quotient.group;
  const auto& proj = kernel.quotient.projection;

  std::vector<AbelianGroup::Element> b0_gens;
  for (auto u : big_gamma.residues())
    if (u % d == 1 % d)
      b0_gens.push_back(phi(big_gamma.element(u)));
  const auto b0 = b.generated(b0_gens);
  std::vector<char> in_b0(b.order(), 0);
  for (auto x : b0)
    in_b0[x] = 1;

  std::vector<PermGroup::Element> members;
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    if (in_b0[proj[e]])
      members.push_back(e);
  std::shared_ptr<const LatticeEntry> target;
  for (const auto& entry : s.lattice)
    if (entry->kernel.members == members)
      target = entry;
  if (!target)
    throw ContractError("reduced kernel is not in the abelian normal lattice");

  std::vector<std::int64_t> lift(b.order(), -1);
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    if (lift[proj[e]] < 0)
      lift[proj[e]] = e;

  std::vector<AbelianGroup::Element> images;
  for (auto r : s.gamma.basis_residues()) {
    std::uint64_t big_r = 0;
    bool found = false;
    for (auto u : big_gamma.residues())
      if (u % d == r) {
        big_r = u;
        found = true;
        break;
      }
    if (!found)
      throw ContractError("unit " + std::to_string(r) + " mod " + std::to_string(d) + " has no lift in Gamma");
    const auto x = lift[phi(big_gamma.element(big_r))];
    images.push_back(target->quotient.projection[x]);
  }
  ReducedPair out;
  out.kernel = target;
  out.phi = hom_from_images(s.gamma.shape(), target->quotient.group, std::move(images));
  return out;
}

} // namespace malle
