#include "malle/invariant.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "malle/arith.hpp"
#include "malle/error.hpp"

namespace malle {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::uint64_t parse_positive(std::string_view s, const std::string& where) {
  const auto t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      t.size() > 18)
    throw ParseError(where + ": expected a positive integer, got \"" + t + "\"");
  const auto v = std::stoull(t);
  if (v == 0)
    throw ParseError(where + ": exponent values must be positive");
  return v;
}

} // namespace

std::string normalize_cycle_type(std::string_view text) {
  std::vector<std::size_t> lengths;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto caret = tok.find('^');
    const auto len = parse_positive(tok.substr(0, caret), "cycle type \"" + std::string(text) + "\"");
    std::uint64_t mult = 1;
    if (caret != std::string::npos)
      mult = parse_positive(tok.substr(caret + 1), "cycle type \"" + std::string(text) + "\"");
    if (mult > kMaxDegree)
      throw ParseError("cycle type \"" + std::string(text) + "\": multiplicity too large");
    lengths.insert(lengths.end(), mult, len);
  }
  if (lengths.empty())
    throw ParseError("empty cycle type");
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return cycle_type_string(lengths);
}

ExpSpec ExpSpec::parse_table(std::string_view text, std::string source) {
  ExpSpec spec;
  spec.kind = ExpKind::Table;
  spec.source = std::move(source);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (trim(line).empty())
      continue;
    const auto colon = line.find(':');
    const std::string where = "table line " + std::to_string(lineno);
    if (colon == std::string::npos)
      throw ParseError(where + ": expected <cycle type>:<value>");
    const auto key = normalize_cycle_type(std::string_view(line).substr(0, colon));
    const auto value = parse_positive(std::string_view(line).substr(colon + 1), where);
    for (const auto& [k, v] : spec.table)
      if (k == key)
        throw ParseError(where + ": cycle type " + key + " listed twice");
    spec.table.emplace_back(key, value);
  }
  return spec;
}

ExpSpec ExpSpec::parse(std::string_view text) {
  if (text == "disc")
    return disc();
  if (text == "rad")
    return rad();
  if (text.starts_with("table:")) {
    const std::string path(text.substr(6));
    std::ifstream file(path);
    if (!file)
      throw ParseError("cannot read invariant table " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_table(buf.str(), path);
  }
  throw ParseError("invariant must be disc, rad or table:<file>, got \"" + std::string(text) + "\"");
}

std::string ExpSpec::tag() const {
  switch (kind) {
  case ExpKind::Disc:
    return "disc";
  case ExpKind::Rad:
    return "rad";
  case ExpKind::Table:
    return source.empty() ? "table" : "table:" + source;
  }
  return "?";
}

ExpFunction make_exp(const PermGroup& g, const ClassPartition& classes, const ExpSpec& spec) {
  std::vector<std::uint64_t> values(classes.classes.size(), 0);
  for (std::size_t c = 1; c < classes.classes.size(); ++c) {
    const auto rep = classes.classes[c].representative;
    switch (spec.kind) {
    case ExpKind::Disc:
      values[c] = g.index(rep);
      break;
    case ExpKind::Rad:
      values[c] = 1;
      break;
    case ExpKind::Table: {
      const auto key = cycle_type_string(g.cycle_type(rep));
      for (const auto& [k, v] : spec.table)
        if (k == key)
          values[c] = v;
      if (values[c] == 0)
        throw ValidationError("invariant table has no value for cycle type " + key + " (class of " +
                              g.element(rep).to_string() + ")");
      break;
    }
    }
  }
  return make_exp_from_classes(g, classes, std::move(values), spec.kind, spec.tag());
}

ExpFunction make_exp_from_classes(const PermGroup& g, const ClassPartition& classes,
                                  std::vector<std::uint64_t> class_values, ExpKind kind, std::string tag) {
  if (class_values.size() != classes.classes.size())
    throw ContractError("one exponent value per conjugacy class is required");
  for (std::size_t c = 0; c < classes.classes.size(); ++c) {
    const auto rep = classes.classes[c].representative;
    if (rep == g.identity())
      continue;
    if (class_values[c] == 0)
      throw ValidationError("class of " + g.element(rep).to_string() + " has no positive exponent");
    const auto o = g.order_of(rep);
    for (std::uint64_t k = 2; k < o; ++k) {
      if (arith::gcd(k, o) != 1)
        continue;
      const auto other = classes.class_of[g.pow(rep, static_cast<std::int64_t>(k))];
      if (class_values[other] != class_values[c])
        throw ValidationError("exponent is not stable under coprime powers: class of " +
                              g.element(rep).to_string() + " has value " + std::to_string(class_values[c]) +
                              " but its power k=" + std::to_string(k) + " has value " +
                              std::to_string(class_values[other]));
    }
  }
  ExpFunction f;
  f.kind_ = kind;
  f.tag_ = std::move(tag);
  f.element_values_.resize(g.order());
  for (PermGroup::Element e = 0; e < g.order(); ++e)
    f.element_values_[e] = e == g.identity() ? 0 : class_values[classes.class_of[e]];
  f.class_values_ = std::move(class_values);
  f.class_values_[classes.class_of[g.identity()]] = 0;
  return f;
}

std::uint64_t a_of(std::span<const PermGroup::Element> subset, const ExpFunction& f) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (auto e : subset)
    if (e != 0)
      best = std::min(best, f.value(e));
  if (best == std::numeric_limits<std::uint64_t>::max())
    throw UndefinedMinimumError("minimum exponent over a set without nonidentity elements");
  return best;
}

MinSet s_min(std::span<const PermGroup::Element> subset, const ExpFunction& f) {
  MinSet m;
  m.value = a_of(subset, f);
  for (auto e : subset)
    if (e != 0 && f.value(e) == m.value)
      m.members.push_back(e);
  std::sort(m.members.begin(), m.members.end());
  return m;
}

std::uint64_t d_of(const PermGroup& g, const ExpFunction& f, std::span<const PermGroup::Element> subset) {
  std::uint64_t d = 1;
  for (auto e : s_min(subset, f).members)
    d = arith::lcm(d, g.order_of(e));
  return d;
}

std::uint64_t d_of(const PermGroup& g, const ExpFunction& f) {
  std::vector<PermGroup::Element> all(g.order());
  std::iota(all.begin(), all.end(), 0u);
  return d_of(g, f, all);
}

} // namespace malle
