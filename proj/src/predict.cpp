#include "malle/predict.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "malle/arith.hpp"
#include "malle/error.hpp"
#include "malle/union_find.hpp"

namespace malle {

bool OracleResult::has_flag(const std::string& code) const {
  return std::any_of(flags.begin(), flags.end(), [&](const OracleFlag& f) { return f.code == code; });
}

namespace {

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool integral() const { return num % den == 0; }
  std::string text() const { return integral() ? std::to_string(num / den) : std::to_string(num) + "/" + std::to_string(den); }
};

OracleValue equal_value(std::string label, const Fraction& f, std::optional<std::uint64_t> engine) {
  OracleValue v;
  v.label = std::move(label);
  v.expected = f.text();
  v.engine = engine;
  v.relation = Relation::Equal;
  v.agree = engine && f.integral() && f.num / f.den == *engine;
  return v;
}

OracleValue at_least_value(std::string label, const Fraction& f, std::optional<std::uint64_t> engine) {
  OracleValue v;
  v.label = std::move(label);
  v.expected = f.text();
  v.engine = engine;
  v.relation = Relation::AtLeast;
  v.agree = engine && static_cast<unsigned __int128>(*engine) * f.den >= f.num;
  return v;
}

OracleValue info_value(std::string label, std::uint64_t engine) {
  OracleValue v;
  v.label = std::move(label);
  v.engine = engine;
  v.relation = Relation::Info;
  v.agree = true;
  return v;
}

void require_odd_prime(std::uint64_t ell, const char* who) {
  if (ell < 3 || !arith::is_prime(ell))
    throw ContractError(std::string(who) + " needs an odd prime, got " + std::to_string(ell));
}

Setting build_setting(const GroupExpr& expr, const ExpSpec& spec, const OracleOptions& options) {
  BuildOptions bo;
  bo.element_cap = options.element_cap;
  return Setting::make(PermGroup::build(expr, bo), spec, BaseField::rationals());
}

const PiPhiPair* find_pair(const std::vector<PiPhiPair>& pairs, const LatticeEntry* kernel, std::uint64_t conductor,
                           std::uint64_t degree) {
  for (const auto& p : pairs)
    if (p.kernel.get() == kernel && p.subfield.conductor == conductor && p.subfield.degree == degree)
      return &p;
  return nullptr;
}

// b = prod_{r_i = s_i} p_i^{s_i} * 2^s, where gcd(d, ell-1) = prod p_i^{s_i}
// and s = val2(ell-1) - 1 when val2(d) > val2(ell-1).
std::uint64_t thm1_closed_b(std::uint64_t ell, std::uint64_t d, std::uint64_t& s_out) {
  const auto g = arith::gcd(d, ell - 1);
  std::uint64_t b = 1;
  for (auto [p, s] : arith::factor(g))
    if (arith::valuation(d, p) == s)
      b *= arith::ipow(p, s);
  s_out = arith::valuation(d, 2) > arith::valuation(ell - 1, 2) ? arith::valuation(ell - 1, 2) - 1 : 0;
  return b * arith::ipow(2, s_out);
}

OracleResult thm1_check(std::uint64_t ell, std::uint64_t d, const PredictionReport& rep) {
  OracleResult r;
  r.name = "thm1";
  r.params = "ell=" + std::to_string(ell) + " d=" + std::to_string(d);
  r.formula = "b_T = gcd(d, ell-1) = prod p_i^s_i; b = prod_{r_i = s_i} p_i^s_i * 2^s, "
              "s = val2(ell-1) - 1 if val2(d) > val2(ell-1) else 0; b_M = 1";
  std::uint64_t s = 0;
  const auto closed_b = thm1_closed_b(ell, d, s);
  r.values.push_back(equal_value("b_T", {arith::gcd(d, ell - 1), 1}, rep.b_T));
  r.values.push_back(equal_value("b_M", {1, 1}, rep.b_M));
  r.values.push_back(equal_value("b", {closed_b, 1}, rep.b_new.certified));
  if (d == 2)
    r.flags.push_back({"outside-hypothesis", "the closed form assumes d != 2"});
  if (!r.values[0].agree || !r.values[1].agree)
    r.flags.push_back({"closed-form-mismatch", "engine b_T or b_M differs from the closed form"});
  if (!r.values[2].agree) {
    std::string note = "closed form gives b = " + std::to_string(closed_b) + ", engine certifies " +
                       std::to_string(rep.b_new.certified);
    if (s > 0)
      note += "; the factor 2^" + std::to_string(s) + " counts a subfield of Q(mu_" + std::to_string(ell) +
              ") whose embedding into a C_" + std::to_string(d) + "-extension is obstructed at " +
              std::to_string(ell);
    if (rep.b_new.optimistic)
      note += "; unknown pairs allow up to " + std::to_string(*rep.b_new.optimistic);
    r.flags.push_back({"closed-form-2s-branch", note});
  }
  return r;
}

Fraction rad_wreath_closed(std::uint64_t ell, std::uint64_t m) {
  // sum over r in C_m grouped by k = ord(r): phi(k) elements each
  Fraction f{0, ell - 1};
  for (std::uint64_t k = 1; k <= m; ++k)
    if (m % k == 0)
      f.num += arith::totient(k) * (arith::ipow(ell, m / k) - 1);
  return f;
}

OracleResult rad_wreath_check(std::uint64_t ell, std::uint64_t m, const Setting& s, const std::vector<PiPhiPair>& pairs,
                              const std::vector<PairValue>* values, std::uint64_t bm) {
  OracleResult r;
  r.name = "rad-wreath";
  r.params = "ell=" + std::to_string(ell) + " m=" + std::to_string(m);
  r.formula = "b(pi, phi) = (1/(ell-1)) sum_{r in C_m} (ell^{m/ord r} - 1)";
  const auto base = wreath_base_entry(s);
  const PiPhiPair* pair = find_pair(pairs, base.get(), ell, m);
  std::optional<std::uint64_t> engine;
  if (pair) {
    if (values)
      engine = (*values)[static_cast<std::size_t>(pair - pairs.data())].b;
    else
      engine = b_pair(s, *pair).b;
  }
  r.values.push_back(equal_value("b(pi,phi)", rad_wreath_closed(ell, m), engine));
  r.values.push_back(info_value("b_M", bm));
  if (m <= 2)
    r.flags.push_back({"outside-hypothesis", "the closed form is stated for m > 2"});
  if (!pair)
    r.flags.push_back({"pair-missing", "no pair with N = C_ell^m at the degree-m subfield of Q(mu_ell)"});
  else if (!r.values[0].agree)
    r.flags.push_back({"closed-form-mismatch", "engine b(pi, phi) differs from the closed form"});
  return r;
}

OracleResult cl2_check(std::uint64_t ell, const Setting& s, const std::vector<PiPhiPair>& pairs,
                       const std::vector<PairValue>* values) {
  OracleResult r;
  r.name = "cl2";
  r.params = "ell=" + std::to_string(ell);
  r.formula = "orbits in N = (ell^{2 ell} - 1 + c (ell^ell - 1) + (ell-1) ell (ell^2 - 1)) / (ell^2 (ell-1)), "
              "printed c = ell, corrected c = ell - 1; b(pi, phi) >= (ell^{2 ell} - 1)/(ell (ell-1))";
  const auto top = arith::ipow(ell, 2 * ell) - 1;
  const auto rot = arith::ipow(ell, ell) - 1;
  const auto tail = (ell - 1) * ell * (ell * ell - 1);
  const auto den = ell * ell * (ell - 1);
  const Fraction printed{top + ell * rot + tail, den};
  const Fraction corrected{top + (ell - 1) * rot + tail, den};

  const auto base = wreath_base_entry(s);
  std::optional<std::uint64_t> within;
  std::optional<std::uint64_t> bpp;
  if (base) {
    within = within_kernel_orbits(s, base->kernel);
    if (const auto* pair = find_pair(pairs, base.get(), ell * ell, ell)) {
      if (values)
        bpp = (*values)[static_cast<std::size_t>(pair - pairs.data())].b;
      else
        bpp = b_pair(s, *pair).b;
    }
  }
  r.values.push_back(equal_value("orbits in N (printed)", printed, within));
  r.values.push_back(equal_value("orbits in N (corrected)", corrected, within));
  r.values.push_back(at_least_value("b(pi,phi) lower bound", {top, ell * (ell - 1)}, bpp));
  if (!printed.integral())
    r.flags.push_back({"printed-form-non-integral", "middle term ell*(ell^ell-1) gives " + printed.text() +
                                                        ", not an integer; (ell-1)*(ell^ell-1) gives " +
                                                        corrected.text()});
  else if (!r.values[0].agree)
    r.flags.push_back({"printed-form-mismatch", "printed sum " + printed.text() + " differs from the engine"});
  if (!r.values[1].agree)
    r.flags.push_back({"corrected-form-mismatch", "corrected sum " + corrected.text() + " differs from the engine"});
  if (!r.values[2].agree)
    r.flags.push_back({"lower-bound-violated", "engine b(pi, phi) is below the stated lower bound"});
  return r;
}

OracleResult wreath_bM_check(const GroupExpr& t, const GroupExpr& b, std::uint64_t bm_t, std::uint64_t bm_g) {
  OracleResult r;
  r.name = "wreath-bm";
  r.params = "T=" + t.to_string() + " B=" + b.to_string();
  r.formula = "b_M(T wr B) = b_M(T)";
  r.values.push_back(equal_value("b_M", {bm_t, 1}, bm_g));
  if (!r.values[0].agree)
    r.flags.push_back({"closed-form-mismatch", "b_M of the wreath product differs from b_M(T)"});
  return r;
}

std::uint64_t bm_of(const GroupExpr& expr, const OracleOptions& options) {
  return b_M(build_setting(expr, ExpSpec::disc(), options));
}

} // namespace

std::uint64_t within_kernel_orbits(const Setting& s, const Subgroup& n) {
  const auto& g = *s.group;
  std::vector<PermGroup::Element> dom;
  for (auto e : n.members)
    if (e != g.identity() && s.exp.value(e) == s.a)
      dom.push_back(e);
  std::vector<std::int32_t> local(g.order(), -1);
  for (std::size_t i = 0; i < dom.size(); ++i)
    local[dom[i]] = static_cast<std::int32_t>(i);

  UnionFind uf(dom.size());
  const auto residues = s.gamma.basis_residues();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (auto x : g.generators())
      uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(local[g.conj(dom[i], x)]));
    for (auto r : residues)
      uf.unite(static_cast<std::uint32_t>(i),
               static_cast<std::uint32_t>(local[g.pow(dom[i], static_cast<std::int64_t>(r))]));
  }
  return uf.components();
}

std::shared_ptr<const LatticeEntry> wreath_base_entry(const Setting& s) {
  const auto& g = *s.group;
  const auto& expr = g.expr();
  if (expr.kind != GroupExpr::Kind::Wreath)
    return nullptr;
  const auto block = expr.children[0]->degree();
  const auto blocks = g.degree() / block;
  std::vector<PermGroup::Element> members;
  for (PermGroup::Element e = 0; e < g.order(); ++e) {
    const auto im = g.images(e);
    bool fixes = true;
    for (std::size_t b = 0; b < blocks && fixes; ++b)
      fixes = im[b * block] / block == b;
    if (fixes)
      members.push_back(e);
  }
  for (const auto& entry : s.lattice)
    if (entry->kernel.members == members)
      return entry;
  return nullptr;
}

std::optional<std::uint64_t> pole_order(const Setting& s, const LatticeEntry& kernel, const CycloGamma& gamma,
                                        const Hom& phi, const TwistOptions& options) {
  const auto& g = *s.group;
  const std::uint64_t fibered_order = kernel.kernel.order() * gamma.order();
  if (fibered_order > options.burnside_cap)
    return std::nullopt;
  const auto ys = s_min(kernel.kernel.members, s.exp).members;
  for (auto y : ys)
    if (gamma.modulus() % g.order_of(y) != 0)
      throw ModulusError("element " + g.element(y).to_string() + " has order not dividing the modulus " +
                         std::to_string(gamma.modulus()));
  const auto& proj = kernel.quotient.projection;

  unsigned __int128 total = 0;
  std::vector<PermGroup::Element> powered(ys.size());
  for (AbelianGroup::Element a = 0; a < gamma.order(); ++a) {
    const auto r = static_cast<std::int64_t>(gamma.residue(a));
    for (std::size_t i = 0; i < ys.size(); ++i)
      powered[i] = g.pow(ys[i], r);
    const auto target = phi(a);
    for (PermGroup::Element x = 0; x < g.order(); ++x) {
      if (proj[x] != target)
        continue;
      for (std::size_t i = 0; i < ys.size(); ++i)
        if (g.products_equal(x, ys[i], powered[i], x)) // x y = y^a x
          ++total;
    }
  }
  if (total % fibered_order != 0)
    throw ContractError("pole order average is not an integer");
  return static_cast<std::uint64_t>(total / fibered_order);
}

namespace {

PairRow evaluate_row(const Setting& s, const PiPhiPair& pair, const PredictOptions& options) {
  PairRow row;
  row.subfield = pair.subfield;
  row.kernel_order = pair.n().order();
  row.quotient = pair.quotient().to_string();
  row.value = b_pair(s, pair);
  for (const auto& phi : pair.phis)
    row.lifts.push_back(lift_status(s, pair, phi));

  // show a liftable phi attaining the row maximum if there is one
  std::size_t shown = pair.phis.size();
  for (std::size_t i = 0; i < pair.phis.size(); ++i) {
    if (row.value.per_phi[i] != row.value.b)
      continue;
    if (shown == pair.phis.size() || (row.lifts[i].verdict == Verdict::Liftable &&
                                      row.lifts[shown].verdict != Verdict::Liftable))
      shown = i;
  }
  row.lift = row.lifts[shown];

  if (options.cross_check) {
    for (std::size_t i = 0; i < pair.phis.size(); ++i) {
      const auto& phi = pair.phis[i];
      const auto expected = row.value.per_phi[i];
      std::vector<MethodCount> ms{
          {"partition", expected},
          {"burnside", burnside_count(s, *pair.kernel, pair.gamma, phi, options.twist)},
          {"class-fusion", class_fusion_count(s, *pair.kernel, pair.gamma, phi)},
          {"variant-action", variant_action_count(s, *pair.kernel, pair.gamma, phi)},
          {"pole-order", pole_order(s, *pair.kernel, pair.gamma, phi, options.twist)},
      };
      for (const auto& m : ms)
        if (m.count && *m.count != expected)
          row.methods_agree = false;
      if (i == 0)
        row.methods = std::move(ms);
    }
  }
  return row;
}

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const auto n = std::min<std::size_t>(jobs, count);
  for (std::size_t w = 0; w < n; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const auto i = next.fetch_add(1);
        if (i >= count)
          return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : workers)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace

PredictionReport predict(const Setting& s, const PredictOptions& options) {
  const auto& g = *s.group;
  PredictionReport rep;
  rep.group = g.expr().to_string();
  rep.invariant = s.exp.tag();
  rep.base = s.gamma.base().tag();
  rep.a = s.a;
  rep.d = s.d;

  const auto pairs = enumerate_pairs(s);
  rep.pairs.resize(pairs.size());
  parallel_for(pairs.size(), options.jobs, [&](std::size_t i) { rep.pairs[i] = evaluate_row(s, pairs[i], options); });

  std::vector<PairValue> values;
  for (const auto& row : rep.pairs)
    values.push_back(row.value);
  const auto bt = b_T(s, pairs, values);
  rep.b_T = bt.value;
  rep.b_T_witness = bt.witness;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].trivial())
      rep.b_M = values[i].b;

  std::uint64_t unknown_max = 0;
  for (const auto& row : rep.pairs) {
    for (std::size_t i = 0; i < row.lifts.size(); ++i) {
      const auto b = row.value.per_phi[i];
      if (row.lifts[i].verdict == Verdict::Liftable)
        rep.b_new.certified = std::max(rep.b_new.certified, b);
      else if (row.lifts[i].verdict == Verdict::Unknown)
        unknown_max = std::max(unknown_max, b);
    }
  }
  if (unknown_max > rep.b_new.certified)
    rep.b_new.optimistic = unknown_max;

  if (!options.oracles)
    return rep;

  // closed forms that apply to this group shape
  const auto& expr = g.expr();
  if (expr.kind != GroupExpr::Kind::Wreath || s.gamma.base().kind != BaseKind::Rationals)
    return rep;
  const auto& t = *expr.children[0];
  const auto& b = *expr.children[1];
  const auto spec_kind = s.exp.kind();
  if (spec_kind == ExpKind::Disc)
    rep.oracles.push_back(wreath_bM_check(t, b, bm_of(t, {}), rep.b_M));
  if (t.kind != GroupExpr::Kind::Cyclic || b.kind != GroupExpr::Kind::Cyclic)
    return rep;
  const std::uint64_t tm = t.m;
  const std::uint64_t bm = b.m;
  if (spec_kind == ExpKind::Disc && tm >= 3 && arith::is_prime(tm) && bm >= 2)
    rep.oracles.push_back(thm1_check(tm, bm, rep));
  if (spec_kind == ExpKind::Rad) {
    if (tm >= 3 && arith::is_prime(tm) && bm >= 2 && (tm - 1) % bm == 0)
      rep.oracles.push_back(rad_wreath_check(tm, bm, s, pairs, &values, rep.b_M));
    if (bm >= 3 && arith::is_prime(bm) && tm == bm * bm)
      rep.oracles.push_back(cl2_check(bm, s, pairs, &values));
  }
  return rep;
}

OracleResult oracle_thm1(std::uint64_t ell, std::uint64_t d, const OracleOptions& options) {
  require_odd_prime(ell, "oracle_thm1");
  if (d < 2)
    throw ContractError("oracle_thm1 needs d >= 2");
  const auto s = build_setting(GroupExpr::wreath(GroupExpr::cyclic(ell), GroupExpr::cyclic(d)), ExpSpec::disc(),
                               options);
  PredictOptions po;
  po.oracles = false;
  return thm1_check(ell, d, predict(s, po));
}

OracleResult oracle_rad_wreath(std::uint64_t ell, std::uint64_t m, const OracleOptions& options) {
  require_odd_prime(ell, "oracle_rad_wreath");
  if (m < 2 || (ell - 1) % m != 0)
    throw ContractError("oracle_rad_wreath needs m >= 2 dividing ell - 1");
  const auto s = build_setting(GroupExpr::wreath(GroupExpr::cyclic(ell), GroupExpr::cyclic(m)), ExpSpec::rad(),
                               options);
  return rad_wreath_check(ell, m, s, enumerate_pairs(s), nullptr, b_M(s));
}

OracleResult oracle_cl2(std::uint64_t ell, const OracleOptions& options) {
  require_odd_prime(ell, "oracle_cl2");
  const auto s = build_setting(GroupExpr::wreath(GroupExpr::cyclic(ell * ell), GroupExpr::cyclic(ell)),
                               ExpSpec::rad(), options);
  return cl2_check(ell, s, enumerate_pairs(s), nullptr);
}

OracleResult oracle_wreath_bM(const GroupExpr& t, const GroupExpr& b, const OracleOptions& options) {
  return wreath_bM_check(t, b, bm_of(t, options), bm_of(GroupExpr::wreath(t, b), options));
}

} // namespace malle
