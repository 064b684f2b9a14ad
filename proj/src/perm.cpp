#include "malle/perm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>

#include "malle/arith.hpp"
#include "malle/error.hpp"
#include "malle/union_find.hpp"

namespace malle {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.size() > kMaxDegree)
    throw ValidationError("degree " + std::to_string(images_.size()) + " exceeds the supported maximum " +
                          std::to_string(kMaxDegree));
  std::vector<char> hit(images_.size(), 0);
  for (auto p : images_) {
    if (p >= images_.size() || hit[p])
      throw ValidationError("image array is not a bijection");
    hit[p] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i)
    im[i] = static_cast<Point>(i);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
  if (n == 0 || n > kMaxDegree)
    throw ValidationError("degree " + std::to_string(n) + " out of range 1.." + std::to_string(kMaxDegree));
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i)
    im[i] = static_cast<Point>(i);
  std::vector<char> used(n, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n)
        throw ValidationError("point " + std::to_string(c[i]) + " outside 0.." + std::to_string(n - 1));
      if (used[c[i]])
        throw ValidationError("point " + std::to_string(c[i]) + " appears twice in cycle notation");
      used[c[i]] = 1;
      im[c[i]] = static_cast<Point>(c[(i + 1) % c.size()]);
    }
  }
  return Permutation(std::move(im));
}

Permutation Permutation::parse(std::size_t n, std::string_view text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(')
      throw ParseError("expected '(' in cycle notation \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::size_t> cycle;
    while (true) {
      skip();
      if (i >= text.size())
        throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in cycle notation");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 1'000'000)
          throw ParseError("point index too large in cycle notation");
        ++i;
      }
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
    skip();
  }
  return from_cycles(n, cycles);
}

Permutation Permutation::then(const Permutation& other) const {
  if (other.degree() != degree())
    throw ContractError("composing permutations of different degree");
  std::vector<Point> im(degree());
  for (std::size_t i = 0; i < degree(); ++i)
    im[i] = other.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<Point> im(degree());
  for (std::size_t i = 0; i < degree(); ++i)
    im[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::pow(std::int64_t k) const {
  const auto n = degree();
  std::vector<Point> im(n);
  std::vector<char> seen(n, 0);
  std::vector<Point> cycle;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    cycle.clear();
    for (std::size_t p = s; !seen[p]; p = images_[p]) {
      seen[p] = 1;
      cycle.push_back(static_cast<Point>(p));
    }
    const auto len = static_cast<std::int64_t>(cycle.size());
    const auto shift = ((k % len) + len) % len;
    for (std::int64_t i = 0; i < len; ++i)
      im[cycle[i]] = cycle[(i + shift) % len];
  }
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> type;
  std::vector<char> seen(degree(), 0);
  for (std::size_t s = 0; s < degree(); ++s) {
    if (seen[s])
      continue;
    std::size_t len = 0;
    for (std::size_t p = s; !seen[p]; p = images_[p]) {
      seen[p] = 1;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (auto len : cycle_type())
    o = arith::lcm(o, len);
  return o;
}

std::size_t Permutation::cycle_count() const { return cycle_type().size(); }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < degree(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<char> seen(degree(), 0);
  for (std::size_t s = 0; s < degree(); ++s) {
    if (seen[s] || images_[s] == s)
      continue;
    out += '(';
    for (std::size_t p = s; !seen[p]; p = images_[p]) {
      seen[p] = 1;
      if (p != s)
        out += ' ';
      out += std::to_string(p);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::size_t index_of(const Permutation& g) { return g.degree() - g.cycle_count(); }

std::string cycle_type_string(const std::vector<std::size_t>& type) {
  std::string out;
  for (std::size_t i = 0; i < type.size();) {
    std::size_t j = i;
    while (j < type.size() && type[j] == type[i])
      ++j;
    if (!out.empty())
      out += ' ';
    out += std::to_string(type[i]);
    if (j - i > 1)
      out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroupExpr

GroupExpr GroupExpr::cyclic(std::size_t m) {
  if (m == 0 || m > kMaxDegree)
    throw ValidationError("C" + std::to_string(m) + ": degree out of range");
  GroupExpr e;
  e.kind = Kind::Cyclic;
  e.m = m;
  return e;
}

GroupExpr GroupExpr::symmetric(std::size_t m) {
  if (m == 0 || m > kMaxDegree)
    throw ValidationError("S" + std::to_string(m) + ": degree out of range");
  GroupExpr e;
  e.kind = Kind::Symmetric;
  e.m = m;
  return e;
}

GroupExpr GroupExpr::wreath(GroupExpr t, GroupExpr b) {
  GroupExpr e;
  e.kind = Kind::Wreath;
  e.children = {std::make_shared<const GroupExpr>(std::move(t)), std::make_shared<const GroupExpr>(std::move(b))};
  if (e.degree() > kMaxDegree)
    throw ValidationError(e.to_string() + ": degree " + std::to_string(e.degree()) + " exceeds " +
                          std::to_string(kMaxDegree));
  return e;
}

GroupExpr GroupExpr::direct(GroupExpr a, GroupExpr b) {
  GroupExpr e;
  e.kind = Kind::Direct;
  e.children = {std::make_shared<const GroupExpr>(std::move(a)), std::make_shared<const GroupExpr>(std::move(b))};
  if (e.degree() > kMaxDegree)
    throw ValidationError(e.to_string() + ": degree " + std::to_string(e.degree()) + " exceeds " +
                          std::to_string(kMaxDegree));
  return e;
}

GroupExpr GroupExpr::explicit_gens(std::size_t degree, std::vector<Permutation> gens) {
  if (degree == 0 || degree > kMaxDegree)
    throw ValidationError("gens: degree out of range");
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw ValidationError("gens: generator degree does not match n=" + std::to_string(degree));
  // transitivity
  UnionFind uf(degree);
  for (const auto& g : gens)
    for (std::size_t i = 0; i < degree; ++i)
      uf.unite(static_cast<std::uint32_t>(i), g[i]);
  if (uf.components() != 1)
    throw ValidationError("gens: the generated group is not transitive on " + std::to_string(degree) + " points");
  GroupExpr e;
  e.kind = Kind::Explicit;
  e.m = degree;
  e.generators = std::move(gens);
  return e;
}

std::size_t GroupExpr::degree() const {
  switch (kind) {
  case Kind::Cyclic:
  case Kind::Symmetric:
  case Kind::Explicit:
    return m;
  case Kind::Wreath:
  case Kind::Direct:
    return children[0]->degree() * children[1]->degree();
  }
  return m;
}

std::vector<Permutation> GroupExpr::action_generators() const {
  switch (kind) {
  case Kind::Cyclic: {
    if (m == 1)
      return {};
    std::vector<std::size_t> c(m);
    std::iota(c.begin(), c.end(), 0);
    return {Permutation::from_cycles(m, {c})};
  }
  case Kind::Symmetric: {
    if (m == 1)
      return {};
    std::vector<std::size_t> c(m);
    std::iota(c.begin(), c.end(), 0);
    if (m == 2)
      return {Permutation::from_cycles(m, {c})};
    return {Permutation::from_cycles(m, {c}), Permutation::from_cycles(m, {{0, 1}})};
  }
  case Kind::Wreath: {
    // point b*mt + i is point i of block b
    const auto mt = children[0]->degree();
    const auto nb = children[1]->degree();
    const auto n = mt * nb;
    std::vector<Permutation> out;
    for (const auto& t : children[0]->action_generators()) {
      std::vector<Point> im(n);
      for (std::size_t p = 0; p < n; ++p)
        im[p] = static_cast<Point>(p < mt ? t[p] : p);
      out.emplace_back(std::move(im));
    }
    for (const auto& b : children[1]->action_generators()) {
      std::vector<Point> im(n);
      for (std::size_t p = 0; p < n; ++p)
        im[p] = static_cast<Point>(b[p / mt] * mt + p % mt);
      out.emplace_back(std::move(im));
    }
    return out;
  }
  case Kind::Direct: {
    // point i*nb + j is the pair (i, j)
    const auto na = children[0]->degree();
    const auto nb = children[1]->degree();
    const auto n = na * nb;
    std::vector<Permutation> out;
    for (const auto& a : children[0]->action_generators()) {
      std::vector<Point> im(n);
      for (std::size_t p = 0; p < n; ++p)
        im[p] = static_cast<Point>(a[p / nb] * nb + p % nb);
      out.emplace_back(std::move(im));
    }
    for (const auto& b : children[1]->action_generators()) {
      std::vector<Point> im(n);
      for (std::size_t p = 0; p < n; ++p)
        im[p] = static_cast<Point>(p / nb * nb + b[p % nb]);
      out.emplace_back(std::move(im));
    }
    return out;
  }
  case Kind::Explicit:
    return generators;
  }
  return {};
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

} // namespace

std::optional<std::uint64_t> GroupExpr::known_order() const {
  switch (kind) {
  case Kind::Cyclic:
    return m;
  case Kind::Symmetric: {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= m; ++i)
      f = sat_mul(f, i);
    return f;
  }
  case Kind::Wreath: {
    auto t = children[0]->known_order();
    auto b = children[1]->known_order();
    if (!t || !b)
      return std::nullopt;
    std::uint64_t o = *b;
    for (std::size_t i = 0; i < children[1]->degree(); ++i)
      o = sat_mul(o, *t);
    return o;
  }
  case Kind::Direct: {
    auto a = children[0]->known_order();
    auto b = children[1]->known_order();
    if (!a || !b)
      return std::nullopt;
    return sat_mul(*a, *b);
  }
  case Kind::Explicit:
    return std::nullopt;
  }
  return std::nullopt;
}

std::string GroupExpr::to_string() const {
  switch (kind) {
  case Kind::Cyclic:
    return "C" + std::to_string(m);
  case Kind::Symmetric:
    return "S" + std::to_string(m);
  case Kind::Wreath:
    return "wr(" + children[0]->to_string() + "," + children[1]->to_string() + ")";
  case Kind::Direct:
    return "x(" + children[0]->to_string() + "," + children[1]->to_string() + ")";
  case Kind::Explicit: {
    std::string s = "gens:n=" + std::to_string(m);
    for (const auto& g : generators)
      s += ";" + g.to_string();
    return s;
  }
  }
  return "?";
}

namespace {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  GroupExpr parse_all() {
    auto e = parse();
    skip();
    if (pos_ != text_.size())
      fail("trailing input");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group expression \"" + std::string(text_) + "\": " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!eat(token))
      fail("expected '" + std::string(token) + "'");
  }

  std::size_t number() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > 1'000'000)
        fail("number too large");
      ++pos_;
    }
    return v;
  }

  GroupExpr parse() {
    skip();
    if (eat("wr(")) {
      auto t = parse();
      expect(",");
      auto b = parse();
      expect(")");
      return GroupExpr::wreath(std::move(t), std::move(b));
    }
    if (eat("x(")) {
      auto a = parse();
      expect(",");
      auto b = parse();
      expect(")");
      return GroupExpr::direct(std::move(a), std::move(b));
    }
    if (eat("gens:")) {
      expect("n=");
      const auto n = number();
      std::vector<Permutation> gens;
      while (eat(";")) {
        skip();
        const auto start = pos_;
        while (pos_ < text_.size() && text_[pos_] == '(') {
          const auto close = text_.find(')', pos_);
          if (close == std::string_view::npos)
            fail("unterminated cycle");
          pos_ = close + 1;
          skip();
        }
        gens.push_back(Permutation::parse(n, text_.substr(start, pos_ - start)));
      }
      return GroupExpr::explicit_gens(n, std::move(gens));
    }
    if (eat("C"))
      return GroupExpr::cyclic(number());
    if (eat("S"))
      return GroupExpr::symmetric(number());
    fail("expected C<m>, S<m>, wr(...), x(...) or gens:");
  }
};

} // namespace

GroupExpr parse_group_expr(std::string_view text) { return ExprParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// PermGroup

std::size_t PermGroup::hash(std::span<const Point> images) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto p : images) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

PermGroup::Element PermGroup::lookup(const Point* images) const {
  std::size_t slot = hash({images, degree_}) & mask_;
  while (true) {
    const auto v = slots_[slot];
    if (v == 0)
      throw ContractError("product is not an element of the group");
    const Point* cand = data_.data() + std::size_t{v - 1} * degree_;
    if (std::equal(images, images + degree_, cand))
      return v - 1;
    slot = (slot + 1) & mask_;
  }
}

std::optional<PermGroup::Element> PermGroup::find(std::span<const Point> images) const {
  if (images.size() != degree_)
    return std::nullopt;
  std::size_t slot = hash(images) & mask_;
  while (true) {
    const auto v = slots_[slot];
    if (v == 0)
      return std::nullopt;
    const Point* cand = data_.data() + std::size_t{v - 1} * degree_;
    if (std::equal(images.begin(), images.end(), cand))
      return v - 1;
    slot = (slot + 1) & mask_;
  }
}

PermGroup PermGroup::build(const GroupExpr& expr, const BuildOptions& options) {
  // Report the innermost constructor whose order is already over the cap.
  std::function<void(const GroupExpr&)> check = [&](const GroupExpr& e) {
    for (const auto& c : e.children)
      check(*c);
    if (auto o = e.known_order(); o && *o > options.element_cap)
      throw SizeError(e.to_string() + " has order " +
                      (*o == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64") : std::to_string(*o)) +
                      ", above the element cap " + std::to_string(options.element_cap));
  };
  check(expr);
  auto g = generate(expr.degree(), expr.action_generators(), options, expr.to_string());
  g.expr_ = expr;
  return g;
}

PermGroup PermGroup::generate(std::size_t degree, const std::vector<Permutation>& gens, const BuildOptions& options,
                              std::string name) {
  if (degree == 0 || degree > kMaxDegree)
    throw ValidationError(name + ": degree out of range");
  PermGroup g;
  g.degree_ = degree;
  g.expr_ = GroupExpr::explicit_gens(degree, gens);

  std::size_t capacity = 1024;
  g.slots_.assign(capacity, 0);
  g.mask_ = capacity - 1;

  auto insert = [&g](const Point* images) -> std::pair<Element, bool> {
    std::size_t slot = g.hash({images, g.degree_}) & g.mask_;
    while (true) {
      const auto v = g.slots_[slot];
      if (v == 0)
        break;
      if (std::equal(images, images + g.degree_, g.data_.data() + std::size_t{v - 1} * g.degree_))
        return {v - 1, false};
      slot = (slot + 1) & g.mask_;
    }
    const auto id = static_cast<Element>(g.order_);
    g.data_.insert(g.data_.end(), images, images + g.degree_);
    ++g.order_;
    g.slots_[slot] = id + 1;
    if (2 * g.order_ > g.slots_.size()) {
      std::vector<Element> bigger(g.slots_.size() * 2, 0);
      const auto mask = bigger.size() - 1;
      for (Element e = 0; e < g.order_; ++e) {
        std::size_t s = g.hash({g.data_.data() + std::size_t{e} * g.degree_, g.degree_}) & mask;
        while (bigger[s] != 0)
          s = (s + 1) & mask;
        bigger[s] = e + 1;
      }
      g.slots_ = std::move(bigger);
      g.mask_ = mask;
    }
    return {id, true};
  };

  g.order_ = 0;
  const auto id = Permutation::identity(degree);
  insert(id.images().data());

  std::array<Point, kMaxDegree> buf{};
  for (Element e = 0; e < g.order_; ++e) {
    for (const auto& s : gens) {
      const Point* a = g.data_.data() + std::size_t{e} * degree;
      for (std::size_t p = 0; p < degree; ++p)
        buf[p] = s[a[p]];
      auto [x, fresh] = insert(buf.data());
      if (fresh && g.order_ > options.element_cap)
        throw SizeError(name + " has order above the element cap " + std::to_string(options.element_cap));
    }
  }

  for (const auto& s : gens) {
    const auto e = *g.find(s.images());
    if (e != 0 && std::find(g.gens_.begin(), g.gens_.end(), e) == g.gens_.end())
      g.gens_.push_back(e);
  }

  g.inverse_.resize(g.order_);
  for (Element e = 0; e < g.order_; ++e) {
    const Point* a = g.data_.data() + std::size_t{e} * degree;
    for (std::size_t p = 0; p < degree; ++p)
      buf[a[p]] = static_cast<Point>(p);
    g.inverse_[e] = g.lookup(buf.data());
  }
  return g;
}

Permutation PermGroup::element(Element a) const {
  auto im = images(a);
  return Permutation(std::vector<Point>(im.begin(), im.end()));
}

PermGroup::Element PermGroup::mul(Element a, Element b) const {
  std::array<Point, kMaxDegree> buf;
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  const Point* pb = data_.data() + std::size_t{b} * degree_;
  for (std::size_t p = 0; p < degree_; ++p)
    buf[p] = pb[pa[p]];
  return lookup(buf.data());
}

PermGroup::Element PermGroup::pow(Element a, std::int64_t k) const {
  std::array<Point, kMaxDegree> buf;
  std::array<char, kMaxDegree> seen{};
  std::array<Point, kMaxDegree> cycle;
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  for (std::size_t s = 0; s < degree_; ++s) {
    if (seen[s])
      continue;
    std::int64_t len = 0;
    for (std::size_t p = s; !seen[p]; p = pa[p]) {
      seen[p] = 1;
      cycle[len++] = static_cast<Point>(p);
    }
    const auto shift = ((k % len) + len) % len;
    for (std::int64_t i = 0; i < len; ++i)
      buf[cycle[i]] = cycle[(i + shift) % len];
  }
  return lookup(buf.data());
}

PermGroup::Element PermGroup::conj(Element g, Element x) const {
  std::array<Point, kMaxDegree> buf;
  const Point* pg = data_.data() + std::size_t{g} * degree_;
  const Point* px = data_.data() + std::size_t{x} * degree_;
  for (std::size_t q = 0; q < degree_; ++q)
    buf[px[q]] = px[pg[q]];
  return lookup(buf.data());
}

bool PermGroup::products_equal(Element a, Element b, Element c, Element d) const {
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  const Point* pb = data_.data() + std::size_t{b} * degree_;
  const Point* pc = data_.data() + std::size_t{c} * degree_;
  const Point* pd = data_.data() + std::size_t{d} * degree_;
  for (std::size_t p = 0; p < degree_; ++p)
    if (pb[pa[p]] != pd[pc[p]])
      return false;
  return true;
}

std::vector<std::size_t> PermGroup::cycle_type(Element a) const {
  std::vector<std::size_t> type;
  std::array<char, kMaxDegree> seen{};
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  for (std::size_t s = 0; s < degree_; ++s) {
    if (seen[s])
      continue;
    std::size_t len = 0;
    for (std::size_t p = s; !seen[p]; p = pa[p]) {
      seen[p] = 1;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::uint64_t PermGroup::order_of(Element a) const {
  std::uint64_t o = 1;
  std::array<char, kMaxDegree> seen{};
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  for (std::size_t s = 0; s < degree_; ++s) {
    if (seen[s])
      continue;
    std::uint64_t len = 0;
    for (std::size_t p = s; !seen[p]; p = pa[p]) {
      seen[p] = 1;
      ++len;
    }
    o = arith::lcm(o, len);
  }
  return o;
}

std::size_t PermGroup::index(Element a) const {
  std::size_t cycles = 0;
  std::array<char, kMaxDegree> seen{};
  const Point* pa = data_.data() + std::size_t{a} * degree_;
  for (std::size_t s = 0; s < degree_; ++s) {
    if (seen[s])
      continue;
    ++cycles;
    for (std::size_t p = s; !seen[p]; p = pa[p])
      seen[p] = 1;
  }
  return degree_ - cycles;
}

bool PermGroup::is_abelian() const {
  for (auto a : gens_)
    for (auto b : gens_)
      if (!products_equal(a, b, b, a))
        return false;
  return true;
}

std::uint64_t PermGroup::exponent() const {
  std::uint64_t e = 1;
  for (Element a = 0; a < order_; ++a)
    e = arith::lcm(e, order_of(a));
  return e;
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

Subgroup empty_subgroup(const PermGroup& g) {
  Subgroup s;
  s.contains.assign(g.order(), 0);
  s.contains[0] = 1;
  s.members = {0};
  return s;
}

// Add x to the generators and close under right multiplication.
void extend(const PermGroup& g, Subgroup& s, PermGroup::Element x) {
  if (s.has(x))
    return;
  s.generators.push_back(x);
  const std::size_t old = s.members.size();
  for (std::size_t i = 0; i < old; ++i) {
    const auto y = g.mul(s.members[i], x);
    if (!s.contains[y]) {
      s.contains[y] = 1;
      s.members.push_back(y);
    }
  }
  for (std::size_t j = old; j < s.members.size(); ++j) {
    for (auto gen : s.generators) {
      const auto y = g.mul(s.members[j], gen);
      if (!s.contains[y]) {
        s.contains[y] = 1;
        s.members.push_back(y);
      }
    }
  }
}

void finish(Subgroup& s) { std::sort(s.members.begin(), s.members.end()); }

PermGroup::Element commutator(const PermGroup& g, PermGroup::Element a, PermGroup::Element b) {
  return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
}

} // namespace

Subgroup whole_group(const PermGroup& g) {
  Subgroup s;
  s.contains.assign(g.order(), 1);
  s.members.resize(g.order());
  std::iota(s.members.begin(), s.members.end(), 0u);
  s.generators = g.generators();
  return s;
}

Subgroup trivial_subgroup(const PermGroup& g) { return empty_subgroup(g); }

Subgroup generated_subgroup(const PermGroup& g, const std::vector<PermGroup::Element>& gens) {
  auto s = empty_subgroup(g);
  for (auto x : gens)
    extend(g, s, x);
  finish(s);
  return s;
}

Subgroup normal_closure(const PermGroup& g, const std::vector<PermGroup::Element>& gens,
                        const std::vector<PermGroup::Element>& by) {
  auto s = empty_subgroup(g);
  for (auto x : gens)
    extend(g, s, x);
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (auto b : by)
      extend(g, s, g.conj(s.generators[i], b));
  finish(s);
  return s;
}

Subgroup commutator_subgroup(const PermGroup& g) { return derived_subgroup(g, whole_group(g)); }

Subgroup derived_subgroup(const PermGroup& g, const Subgroup& h) {
  std::vector<PermGroup::Element> comms;
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i + 1; j < h.generators.size(); ++j) {
      const auto c = commutator(g, h.generators[i], h.generators[j]);
      if (c != 0)
        comms.push_back(c);
    }
  return normal_closure(g, comms, h.generators);
}

bool is_normal(const PermGroup& g, const Subgroup& h) {
  const auto& gens = h.generators.empty() && h.order() > 1 ? h.members : h.generators;
  for (auto n : gens)
    for (auto s : g.generators())
      if (!h.has(g.conj(n, s)))
        return false;
  return true;
}

bool solvable(const PermGroup& g, const Subgroup& h) {
  Subgroup cur = h;
  if (cur.generators.empty() && cur.order() > 1)
    cur = generated_subgroup(g, cur.members);
  while (cur.order() > 1) {
    auto next = derived_subgroup(g, cur);
    if (next.order() == cur.order())
      return false;
    cur = std::move(next);
  }
  return true;
}

ClassPartition conjugacy_classes(const PermGroup& g) {
  UnionFind uf(g.order());
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    for (auto s : g.generators())
      uf.unite(e, g.conj(e, s));

  std::vector<std::uint32_t> root_class(g.order(), std::numeric_limits<std::uint32_t>::max());
  std::vector<ConjugacyClass> classes;
  for (PermGroup::Element e = 0; e < g.order(); ++e) {
    const auto r = uf.find(e);
    if (root_class[r] == std::numeric_limits<std::uint32_t>::max()) {
      root_class[r] = static_cast<std::uint32_t>(classes.size());
      classes.push_back({e, {}});
    }
    classes[root_class[r]].members.push_back(e);
  }
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (classes[a].members.size() != classes[b].members.size())
      return classes[a].members.size() < classes[b].members.size();
    return classes[a].representative < classes[b].representative;
  });
  ClassPartition out;
  out.class_of.resize(g.order());
  for (auto i : order) {
    const auto idx = static_cast<std::uint32_t>(out.classes.size());
    for (auto m : classes[i].members)
      out.class_of[m] = idx;
    out.classes.push_back(std::move(classes[i]));
  }
  return out;
}

namespace {

struct CosetTable {
  std::vector<std::uint32_t> coset_of;
  std::vector<PermGroup::Element> reps;
};

CosetTable cosets(const PermGroup& g, const Subgroup& h) {
  CosetTable t;
  t.coset_of.assign(g.order(), std::numeric_limits<std::uint32_t>::max());
  for (PermGroup::Element e = 0; e < g.order(); ++e) {
    if (t.coset_of[e] != std::numeric_limits<std::uint32_t>::max())
      continue;
    const auto c = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(e);
    for (auto n : h.members)
      t.coset_of[g.mul(n, e)] = c;
  }
  return t;
}

} // namespace

Quotient quotient(const PermGroup& g, const Subgroup& h) {
  if (!is_normal(g, h))
    throw ContractError("quotient requested by a subgroup that is not normal");
  for (auto a : g.generators())
    for (auto b : g.generators())
      if (!h.has(commutator(g, a, b)))
        throw ContractError("quotient requested by a normal subgroup with nonabelian quotient");

  const auto t = cosets(g, h);
  AbelianTable table;
  table.size = t.reps.size();
  table.identity = t.coset_of[0];
  table.op = [&](std::uint32_t a, std::uint32_t b) { return t.coset_of[g.mul(t.reps[a], t.reps[b])]; };
  const auto bs = basis(table);

  Quotient q;
  q.group = bs.group;
  q.projection.resize(g.order());
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    q.projection[e] = bs.encode[t.coset_of[e]];
  return q;
}

std::vector<LatticeEntry> abelian_normal_lattice(const PermGroup& g) {
  const auto derived = commutator_subgroup(g);
  const auto ab = quotient(g, derived);
  const auto& a = ab.group;

  // all subgroups of the abelianization, each kept with a generating list
  std::set<std::vector<AbelianGroup::Element>> seen;
  std::vector<std::pair<std::vector<AbelianGroup::Element>, std::vector<AbelianGroup::Element>>> subs;
  subs.push_back({{0}, {}});
  seen.insert({0});
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (AbelianGroup::Element x = 0; x < a.order(); ++x) {
      if (std::binary_search(subs[i].first.begin(), subs[i].first.end(), x))
        continue;
      auto gens = subs[i].second;
      gens.push_back(x);
      auto members = a.generated(gens);
      if (seen.insert(members).second)
        subs.push_back({std::move(members), std::move(gens)});
    }
  }

  std::vector<LatticeEntry> out;
  for (const auto& [members, gens] : subs) {
    std::vector<char> in_h(a.order(), 0);
    for (auto m : members)
      in_h[m] = 1;

    // N is the full preimage of H; [G,G] and one lift per generator of H generate it
    LatticeEntry entry;
    auto& n = entry.kernel;
    n.contains.assign(g.order(), 0);
    n.generators = derived.generators;
    std::vector<char> lifted(a.order(), 0);
    for (PermGroup::Element e = 0; e < g.order(); ++e) {
      const auto x = ab.projection[e];
      if (!in_h[x])
        continue;
      n.contains[e] = 1;
      n.members.push_back(e);
      if (!lifted[x] && std::find(gens.begin(), gens.end(), x) != gens.end()) {
        lifted[x] = 1;
        n.generators.push_back(e);
      }
    }

    // B = A / H
    std::vector<std::uint32_t> coset_of(a.order(), std::numeric_limits<std::uint32_t>::max());
    std::vector<AbelianGroup::Element> reps;
    for (AbelianGroup::Element x = 0; x < a.order(); ++x) {
      if (coset_of[x] != std::numeric_limits<std::uint32_t>::max())
        continue;
      const auto c = static_cast<std::uint32_t>(reps.size());
      reps.push_back(x);
      for (auto m : members)
        coset_of[a.add(x, m)] = c;
    }
    AbelianTable table;
    table.size = reps.size();
    table.identity = coset_of[0];
    table.op = [&](std::uint32_t u, std::uint32_t v) { return coset_of[a.add(reps[u], reps[v])]; };
    const auto bs = basis(table);
    entry.quotient.group = bs.group;
    entry.quotient.projection.resize(g.order());
    for (PermGroup::Element e = 0; e < g.order(); ++e)
      entry.quotient.projection[e] = bs.encode[coset_of[ab.projection[e]]];
    out.push_back(std::move(entry));
  }

  std::sort(out.begin(), out.end(), [](const LatticeEntry& x, const LatticeEntry& y) {
    if (x.kernel.order() != y.kernel.order())
      return x.kernel.order() < y.kernel.order();
    return x.kernel.members < y.kernel.members;
  });
  return out;
}

} // namespace malle
