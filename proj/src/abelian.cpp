#include "malle/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "malle/arith.hpp"
#include "malle/error.hpp"

namespace malle {

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup(std::vector<std::uint32_t> factor_orders) : orders_(std::move(factor_orders)) {
  strides_.reserve(orders_.size());
  std::size_t stride = 1;
  for (auto o : orders_) {
    if (o == 0)
      throw ContractError("cyclic factor of order 0");
    strides_.push_back(static_cast<std::uint32_t>(stride));
    stride *= o;
  }
  size_ = stride;
}

AbelianGroup::Element AbelianGroup::add(Element a, Element b) const {
  Element out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto o = orders_[i];
    const auto ca = (a / strides_[i]) % o;
    const auto cb = (b / strides_[i]) % o;
    out += ((ca + cb) % o) * strides_[i];
  }
  return out;
}

AbelianGroup::Element AbelianGroup::neg(Element a) const {
  Element out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto o = orders_[i];
    const auto c = (a / strides_[i]) % o;
    out += ((o - c) % o) * strides_[i];
  }
  return out;
}

AbelianGroup::Element AbelianGroup::scale(Element a, std::uint64_t k) const {
  Element out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::uint64_t o = orders_[i];
    const std::uint64_t c = (a / strides_[i]) % o;
    out += static_cast<Element>((c * (k % o)) % o) * strides_[i];
  }
  return out;
}

std::uint64_t AbelianGroup::order_of(Element a) const {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::uint64_t o = orders_[i];
    const std::uint64_t c = (a / strides_[i]) % o;
    result = arith::lcm(result, o / arith::gcd(o, c));
  }
  return result;
}

std::vector<std::uint32_t> AbelianGroup::coordinates(Element a) const {
  std::vector<std::uint32_t> out(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i)
    out[i] = (a / strides_[i]) % orders_[i];
  return out;
}

AbelianGroup::Element AbelianGroup::encode(std::span<const std::uint32_t> coords) const {
  if (coords.size() != orders_.size())
    throw ContractError("coordinate vector has wrong length");
  Element out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    out += (coords[i] % orders_[i]) * strides_[i];
  return out;
}

AbelianGroup::Element AbelianGroup::basis_element(std::size_t i) const {
  return orders_[i] == 1 ? 0 : strides_[i];
}

std::vector<AbelianGroup::Element> AbelianGroup::generated(std::span<const Element> gens) const {
  std::vector<char> seen(size_, 0);
  std::vector<Element> members{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (auto g : gens) {
      const auto y = add(members[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::uint32_t> AbelianGroup::invariant_factors() const {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (auto o : orders_)
    for (auto [p, e] : arith::factor(o))
      by_prime[p].push_back(arith::ipow(p, e));
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  std::vector<std::uint32_t> out(len, 1);
  for (auto& [p, powers] : by_prime)
    for (std::size_t i = 0; i < powers.size(); ++i)
      out[i] *= static_cast<std::uint32_t>(powers[i]);
  std::reverse(out.begin(), out.end());
  return out;
}

bool AbelianGroup::isomorphic_to(const AbelianGroup& other) const {
  return invariant_factors() == other.invariant_factors();
}

std::string AbelianGroup::to_string() const {
  std::vector<std::uint32_t> shown;
  for (auto o : orders_)
    if (o > 1)
      shown.push_back(o);
  if (shown.empty())
    return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < shown.size(); ++i)
    os << (i ? " x C" : "C") << shown[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// basis

namespace {

std::uint64_t table_order(const AbelianTable& t, std::uint32_t g) {
  std::uint64_t k = 1;
  std::uint32_t x = g;
  while (x != t.identity) {
    x = t.op(x, g);
    ++k;
  }
  return k;
}

} // namespace

AbelianBasis basis(const AbelianTable& table) {
  const std::size_t n = table.size;
  std::vector<std::uint64_t> orders(n);
  for (std::uint32_t g = 0; g < n; ++g)
    orders[g] = table_order(table, g);

  AbelianBasis out;
  std::vector<std::uint32_t> factor_orders;

  for (auto [p, e] : arith::factor(n)) {
    std::vector<std::uint32_t> sylow;
    for (std::uint32_t g = 0; g < n; ++g)
      if (arith::factor(orders[g]).size() <= 1 && (orders[g] == 1 || orders[g] % p == 0))
        sylow.push_back(g);

    std::vector<char> in_span(n, 0);
    std::vector<std::uint32_t> span{table.identity};
    in_span[table.identity] = 1;

    while (span.size() < sylow.size()) {
      std::uint64_t best_q = 0;
      std::uint32_t best = table.identity;
      bool best_lifts = false;
      for (auto g : sylow) {
        if (in_span[g])
          continue;
        std::uint64_t q = 1;
        std::uint32_t x = g;
        while (!in_span[x]) {
          x = table.op(x, g);
          ++q;
        }
        const bool lifts = (q == orders[g]);
        if (q > best_q || (q == best_q && lifts && !best_lifts)) {
          best_q = q;
          best = g;
          best_lifts = lifts;
        }
      }
      if (!best_lifts)
        throw ContractError("table is not an abelian group");
      out.generators.emplace_back(best, static_cast<std::uint32_t>(best_q));
      factor_orders.push_back(static_cast<std::uint32_t>(best_q));

      const std::size_t old = span.size();
      std::uint32_t power = best;
      for (std::uint64_t j = 1; j < best_q; ++j) {
        for (std::size_t s = 0; s < old; ++s) {
          const auto y = table.op(span[s], power);
          if (!in_span[y]) {
            in_span[y] = 1;
            span.push_back(y);
          }
        }
        power = table.op(power, best);
      }
    }
  }

  out.group = AbelianGroup(factor_orders);
  out.decode.assign(out.group.order(), table.identity);
  out.encode.assign(n, 0);
  std::vector<char> hit(n, 0);
  for (AbelianGroup::Element e = 0; e < out.group.order(); ++e) {
    const auto coords = out.group.coordinates(e);
    std::uint32_t id = table.identity;
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::uint32_t k = 0; k < coords[i]; ++k)
        id = table.op(id, out.generators[i].first);
    if (hit[id])
      throw ContractError("basis generators are not independent");
    hit[id] = 1;
    out.decode[e] = id;
    out.encode[id] = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// CycloGamma

std::string BaseField::tag() const {
  switch (kind) {
  case BaseKind::Rationals:
    return "Q";
  case BaseKind::FunctionField:
    return "Fq:q=" + std::to_string(q);
  case BaseKind::Custom: {
    std::string s = "custom:";
    for (std::size_t i = 0; i < custom_generators.size(); ++i)
      s += (i ? "," : "") + std::to_string(custom_generators[i]);
    return s;
  }
  }
  return "?";
}

CycloGamma CycloGamma::make(std::uint64_t modulus, const BaseField& base) {
  if (modulus == 0)
    throw ContractError("cyclotomic modulus must be positive");
  CycloGamma g;
  g.modulus_ = modulus;
  g.base_ = base;

  auto closure = [modulus](const std::vector<std::uint64_t>& gens) {
    std::vector<std::uint64_t> members{1 % modulus};
    std::vector<char> seen(modulus, 0);
    seen[1 % modulus] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto s : gens) {
        const auto y = members[i] * (s % modulus) % modulus;
        if (!seen[y]) {
          seen[y] = 1;
          members.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  };

  switch (base.kind) {
  case BaseKind::Rationals:
    for (std::uint64_t r = 0; r < modulus; ++r)
      if (arith::gcd(r, modulus) == 1)
        g.residues_.push_back(r);
    if (modulus == 1)
      g.residues_ = {0};
    break;
  case BaseKind::FunctionField:
    if (base.q < 2)
      throw ValidationError("function-field base needs q >= 2");
    if (arith::gcd(base.q, modulus) != 1)
      throw ValidationError("q=" + std::to_string(base.q) + " is not coprime to the cyclotomic modulus " +
                            std::to_string(modulus));
    g.residues_ = closure({base.q});
    break;
  case BaseKind::Custom:
    for (auto s : base.custom_generators)
      if (arith::gcd(s, modulus) != 1)
        throw ValidationError("custom generator " + std::to_string(s) + " is not a unit mod " +
                              std::to_string(modulus));
    g.residues_ = closure(base.custom_generators);
    break;
  }

  std::vector<std::int64_t> id_of(modulus, -1);
  for (std::size_t i = 0; i < g.residues_.size(); ++i)
    id_of[g.residues_[i]] = static_cast<std::int64_t>(i);
  const auto& res = g.residues_;
  AbelianTable table;
  table.size = res.size();
  table.identity = static_cast<std::uint32_t>(id_of[1 % modulus]);
  table.op = [&res, &id_of, modulus](std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(id_of[res[a] * res[b] % modulus]);
  };
  g.basis_ = basis(table);
  return g;
}

bool CycloGamma::contains(std::uint64_t residue) const {
  return std::binary_search(residues_.begin(), residues_.end(), residue % modulus_);
}

std::uint64_t CycloGamma::residue(AbelianGroup::Element e) const {
  return residues_[basis_.decode.at(e)];
}

AbelianGroup::Element CycloGamma::element(std::uint64_t residue) const {
  const auto r = residue % modulus_;
  auto it = std::lower_bound(residues_.begin(), residues_.end(), r);
  if (it == residues_.end() || *it != r)
    throw ContractError(std::to_string(residue) + " is not in Gamma mod " + std::to_string(modulus_));
  return basis_.encode[static_cast<std::size_t>(it - residues_.begin())];
}

std::vector<std::uint64_t> CycloGamma::basis_residues() const {
  std::vector<std::uint64_t> out;
  for (auto [id, ord] : basis_.generators)
    out.push_back(residues_[id]);
  return out;
}

CycloGamma units_mod(std::uint64_t d) { return CycloGamma::make(d, BaseField::rationals()); }

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<AbelianGroup::Element> Hom::kernel() const {
  std::vector<AbelianGroup::Element> out;
  for (AbelianGroup::Element x = 0; x < table.size(); ++x)
    if (table[x] == 0)
      out.push_back(x);
  return out;
}

std::vector<AbelianGroup::Element> Hom::image() const {
  std::vector<AbelianGroup::Element> out(table.begin(), table.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void tabulate(const AbelianGroup& source, const AbelianGroup& target, Hom& h) {
  h.table.resize(source.order());
  for (AbelianGroup::Element x = 0; x < source.order(); ++x) {
    const auto c = source.coordinates(x);
    AbelianGroup::Element y = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      y = target.add(y, target.scale(h.basis_images[i], c[i]));
    h.table[x] = y;
  }
}

std::vector<Hom> enumerate_homs(const AbelianGroup& source, const AbelianGroup& target, bool surjective_only) {
  const auto& orders = source.factor_orders();
  std::vector<std::vector<AbelianGroup::Element>> candidates(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (AbelianGroup::Element b = 0; b < target.order(); ++b)
      if (orders[i] % target.order_of(b) == 0)
        candidates[i].push_back(b);

  std::vector<Hom> out;
  std::vector<std::size_t> pick(orders.size(), 0);
  while (true) {
    Hom h;
    h.basis_images.resize(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
      h.basis_images[i] = candidates[i][pick[i]];
    bool keep = true;
    if (surjective_only)
      keep = target.generated(h.basis_images).size() == target.order();
    if (keep) {
      tabulate(source, target, h);
      out.push_back(std::move(h));
    }
    // odometer, last generator fastest
    std::size_t i = orders.size();
    while (i > 0) {
      --i;
      if (++pick[i] < candidates[i].size())
        break;
      pick[i] = 0;
      if (i == 0)
        return out;
    }
    if (orders.empty())
      return out;
  }
}

} // namespace

Hom hom_from_images(const AbelianGroup& source, const AbelianGroup& target,
                    std::vector<AbelianGroup::Element> images) {
  if (images.size() != source.rank())
    throw ContractError("one image per basis element is required");
  for (std::size_t i = 0; i < images.size(); ++i)
    if (source.factor_orders()[i] % target.order_of(images[i]) != 0)
      throw ContractError("image order does not divide the generator order");
  Hom h;
  h.basis_images = std::move(images);
  tabulate(source, target, h);
  return h;
}

std::vector<Hom> homomorphisms(const AbelianGroup& source, const AbelianGroup& target) {
  return enumerate_homs(source, target, false);
}

std::vector<Hom> surjections(const AbelianGroup& source, const AbelianGroup& target) {
  return enumerate_homs(source, target, true);
}

std::vector<Hom> surjections(const CycloGamma& gamma, const AbelianGroup& target) {
  return surjections(gamma.shape(), target);
}

// ---------------------------------------------------------------------------
// Subfield labels

std::uint64_t conductor(std::uint64_t d, std::span<const std::uint64_t> kernel_residues) {
  std::vector<char> in_h(d, 0);
  for (auto r : kernel_residues)
    in_h[r % d] = 1;
  for (std::uint64_t f = 1; f <= d; ++f) {
    if (d % f != 0)
      continue;
    bool ok = true;
    for (std::uint64_t u = 0; u < d && ok; ++u)
      if (arith::gcd(u, d) == 1 && u % f == 1 % f && !in_h[u])
        ok = false;
    if (ok)
      return f;
  }
  return d;
}

namespace {

std::string residue_list(const std::vector<std::uint64_t>& rs) {
  std::string s = "{";
  for (std::size_t i = 0; i < rs.size(); ++i)
    s += (i ? "," : "") + std::to_string(rs[i]);
  return s + "}";
}

} // namespace

SubfieldLabel label_subfield(std::uint64_t d, std::span<const std::uint64_t> kernel_residues) {
  SubfieldLabel label;
  label.modulus = d;
  label.kernel_residues.assign(kernel_residues.begin(), kernel_residues.end());
  for (auto& r : label.kernel_residues)
    r %= d;
  std::sort(label.kernel_residues.begin(), label.kernel_residues.end());
  label.kernel_residues.erase(std::unique(label.kernel_residues.begin(), label.kernel_residues.end()),
                              label.kernel_residues.end());
  label.degree = arith::totient(d) / label.kernel_residues.size();
  label.conductor = conductor(d, label.kernel_residues);

  const std::uint64_t f = label.conductor;
  std::vector<std::uint64_t> h_mod_f;
  for (auto r : label.kernel_residues)
    h_mod_f.push_back(f == 1 ? 0 : r % f);
  std::sort(h_mod_f.begin(), h_mod_f.end());
  h_mod_f.erase(std::unique(h_mod_f.begin(), h_mod_f.end()), h_mod_f.end());

  if (label.degree == 1) {
    label.name = "Q";
    return label;
  }
  const std::string cyclo = "Q(μ" + std::to_string(f) + ")";
  if (h_mod_f.size() == 1) {
    label.name = f == 4 ? "Q(i)" : cyclo;
    return label;
  }
  if (label.degree == 2) {
    const bool real = std::binary_search(label.kernel_residues.begin(), label.kernel_residues.end(), d - 1);
    const std::int64_t disc = real ? static_cast<std::int64_t>(f) : -static_cast<std::int64_t>(f);
    if (disc == -4) {
      label.name = "Q(i)";
    } else if (disc == -3) {
      label.name = "Q(μ3)";
    } else {
      const std::int64_t radicand = disc % 4 == 0 ? disc / 4 : disc;
      label.name = "Q(√" + std::to_string(radicand) + ")";
    }
    return label;
  }
  if (h_mod_f == std::vector<std::uint64_t>{1, f - 1}) {
    label.name = cyclo + "^+";
    return label;
  }
  label.name = cyclo + "^" + residue_list(h_mod_f);
  return label;
}

SubfieldLabel label_subfield(const CycloGamma& gamma, std::span<const std::uint64_t> kernel_residues) {
  if (gamma.base().kind == BaseKind::Rationals)
    return label_subfield(gamma.modulus(), kernel_residues);

  SubfieldLabel label;
  label.modulus = gamma.modulus();
  label.kernel_residues.assign(kernel_residues.begin(), kernel_residues.end());
  std::sort(label.kernel_residues.begin(), label.kernel_residues.end());
  label.degree = gamma.order() / label.kernel_residues.size();
  label.conductor = 1;
  if (gamma.base().kind == BaseKind::FunctionField) {
    const std::string q = std::to_string(gamma.base().q);
    label.name = label.degree == 1 ? "F_" + q + "(t)" : "F_" + q + "^" + std::to_string(label.degree) + "(t)";
  } else {
    label.name = "K(μ" + std::to_string(gamma.modulus()) + ")^" + residue_list(label.kernel_residues);
  }
  return label;
}

} // namespace malle
