#include "malle/report.hpp"

#include <sstream>

#include <json.hpp>

#include "malle/error.hpp"

namespace malle {

using Json = nlohmann::ordered_json;

namespace {

std::string relation_name(Relation r) {
  switch (r) {
  case Relation::Equal:
    return "equal";
  case Relation::AtLeast:
    return "at-least";
  case Relation::Info:
    return "info";
  }
  return "?";
}

Relation relation_from(const std::string& s) {
  if (s == "equal")
    return Relation::Equal;
  if (s == "at-least")
    return Relation::AtLeast;
  if (s == "info")
    return Relation::Info;
  throw ParseError("unknown relation '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
  for (auto v : {Verdict::Liftable, Verdict::Obstructed, Verdict::Unknown})
    if (to_string(v) == s)
      return v;
  throw ParseError("unknown verdict '" + s + "'");
}

LiftRule rule_from(const std::string& s) {
  for (auto r : {LiftRule::None, LiftRule::FunctionField, LiftRule::AbelianLocal, LiftRule::WreathReduction,
                 LiftRule::AbelianQuotientNecessary})
    if (to_string(r) == s)
      return r;
  throw ParseError("unknown rule '" + s + "'");
}

Json lift_json(const LiftStatus& s) {
  Json j;
  j["verdict"] = to_string(s.verdict);
  Json places = Json::array();
  for (const auto& p : s.places)
    places.push_back(p.to_string());
  j["places"] = places;
  j["rule"] = to_string(s.rule);
  if (!s.reason.empty())
    j["reason"] = s.reason;
  return j;
}

LiftStatus lift_from(const Json& j) {
  LiftStatus s;
  s.verdict = verdict_from(j.at("verdict").get<std::string>());
  for (const auto& p : j.at("places")) {
    const auto t = p.get<std::string>();
    s.places.push_back({t == "infinity" ? 0 : std::stoull(t)});
  }
  s.rule = rule_from(j.at("rule").get<std::string>());
  if (j.contains("reason"))
    s.reason = j.at("reason").get<std::string>();
  return s;
}

Json oracle_json(const OracleResult& o) {
  Json j;
  j["name"] = o.name;
  j["params"] = o.params;
  j["formula"] = o.formula;
  Json values = Json::array();
  for (const auto& v : o.values) {
    Json x;
    x["label"] = v.label;
    x["expected"] = v.expected;
    x["engine"] = v.engine ? Json(*v.engine) : Json(nullptr);
    x["relation"] = relation_name(v.relation);
    x["agree"] = v.agree;
    values.push_back(x);
  }
  j["values"] = values;
  Json flags = Json::array();
  for (const auto& f : o.flags)
    flags.push_back(Json{{"code", f.code}, {"note", f.note}});
  j["flags"] = flags;
  return j;
}

OracleResult oracle_from(const Json& j) {
  OracleResult o;
  o.name = j.at("name").get<std::string>();
  o.params = j.at("params").get<std::string>();
  o.formula = j.at("formula").get<std::string>();
  for (const auto& x : j.at("values")) {
    OracleValue v;
    v.label = x.at("label").get<std::string>();
    v.expected = x.at("expected").get<std::string>();
    if (!x.at("engine").is_null())
      v.engine = x.at("engine").get<std::uint64_t>();
    v.relation = relation_from(x.at("relation").get<std::string>());
    v.agree = x.at("agree").get<bool>();
    o.values.push_back(std::move(v));
  }
  for (const auto& f : j.at("flags"))
    o.flags.push_back({f.at("code").get<std::string>(), f.at("note").get<std::string>()});
  return o;
}

Json meta_json(const PredictionReport& r) {
  Json m;
  m["version"] = kReportVersion;
  m["group"] = r.group;
  m["invariant"] = r.invariant;
  m["base"] = r.base;
  return m;
}

Json pair_json(const PairRow& row) {
  Json j;
  Json sub;
  sub["d"] = row.subfield.modulus;
  sub["kernel_residues"] = row.subfield.kernel_residues;
  sub["name"] = row.subfield.name;
  sub["conductor"] = row.subfield.conductor;
  sub["degree"] = row.subfield.degree;
  j["subfield"] = sub;
  j["kernel_order"] = row.kernel_order;
  j["quotient"] = row.quotient;
  j["b"] = row.value.b;
  j["per_phi"] = row.value.per_phi;
  j["lift"] = lift_json(row.lift);
  if (row.lifts.size() > 1) {
    Json lifts = Json::array();
    for (const auto& l : row.lifts)
      lifts.push_back(lift_json(l));
    j["lifts"] = lifts;
  }
  if (!row.methods.empty()) {
    Json ms = Json::array();
    for (const auto& m : row.methods)
      ms.push_back(Json{{"method", m.method}, {"count", m.count ? Json(*m.count) : Json(nullptr)}});
    j["methods"] = ms;
    j["methods_agree"] = row.methods_agree;
  }
  return j;
}

PairRow pair_from(const Json& j) {
  PairRow row;
  const auto& sub = j.at("subfield");
  row.subfield.modulus = sub.at("d").get<std::uint64_t>();
  row.subfield.kernel_residues = sub.at("kernel_residues").get<std::vector<std::uint64_t>>();
  row.subfield.name = sub.at("name").get<std::string>();
  row.subfield.conductor = sub.at("conductor").get<std::uint64_t>();
  row.subfield.degree = sub.at("degree").get<std::uint64_t>();
  row.kernel_order = j.at("kernel_order").get<std::uint64_t>();
  row.quotient = j.at("quotient").get<std::string>();
  row.value.b = j.at("b").get<std::uint64_t>();
  row.value.per_phi = j.at("per_phi").get<std::vector<std::uint64_t>>();
  row.lift = lift_from(j.at("lift"));
  if (j.contains("lifts")) {
    for (const auto& l : j.at("lifts"))
      row.lifts.push_back(lift_from(l));
  } else {
    row.lifts.push_back(row.lift);
  }
  if (j.contains("methods")) {
    for (const auto& m : j.at("methods")) {
      MethodCount mc;
      mc.method = m.at("method").get<std::string>();
      if (!m.at("count").is_null())
        mc.count = m.at("count").get<std::uint64_t>();
      row.methods.push_back(std::move(mc));
    }
    row.methods_agree = j.at("methods_agree").get<bool>();
  }
  return row;
}

Json pairs_json(const PredictionReport& r) {
  Json pairs = Json::array();
  for (const auto& row : r.pairs)
    pairs.push_back(pair_json(row));
  return pairs;
}

// display width of UTF-8 text, counting code points
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80)
      ++w;
  return w;
}

std::string pad(const std::string& s, std::size_t n) {
  const auto w = width(s);
  return w >= n ? s : s + std::string(n - w, ' ');
}

std::string b_new_text(const BNew& b) {
  if (!b.optimistic)
    return std::to_string(b.certified);
  return std::to_string(b.certified) + " certified, up to " + std::to_string(*b.optimistic) +
         " if the unknown pairs lift";
}

std::string rows_text(const PredictionReport& r) {
  std::size_t name_w = 8;
  for (const auto& row : r.pairs)
    name_w = std::max(name_w, width(row.subfield.name));
  std::ostringstream out;
  out << "  " << pad("subfield", name_w) << "  " << pad("|N|", 8) << "  " << pad("B", 10) << "  " << pad("b", 6)
      << "  lift\n";
  for (const auto& row : r.pairs) {
    out << "  " << pad(row.subfield.name, name_w) << "  " << pad(std::to_string(row.kernel_order), 8) << "  "
        << pad(row.quotient, 10) << "  " << pad(std::to_string(row.value.b), 6) << "  " << describe(row.lift);
    if (!row.value.uniform()) {
      out << "  per phi:";
      for (auto v : row.value.per_phi)
        out << " " << v;
    }
    if (!row.methods.empty() && !row.methods_agree)
      out << "  METHODS DISAGREE";
    out << "\n";
  }
  return out.str();
}

} // namespace

std::string to_json(const PredictionReport& r) {
  Json j;
  j["meta"] = meta_json(r);
  j["a"] = r.a;
  j["d"] = r.d;
  j["b_M"] = r.b_M;
  j["b_T"] = r.b_T;
  j["b_T_witness"] = r.b_T_witness;
  j["pairs"] = pairs_json(r);
  if (r.b_new.optimistic)
    j["b_new"] = Json{{"certified", r.b_new.certified}, {"optimistic", *r.b_new.optimistic}};
  else
    j["b_new"] = r.b_new.certified;
  Json oracles = Json::array();
  for (const auto& o : r.oracles)
    oracles.push_back(oracle_json(o));
  j["oracles"] = oracles;
  return j.dump(2) + "\n";
}

std::string pairs_to_json(const PredictionReport& r) {
  Json j;
  j["meta"] = meta_json(r);
  j["pairs"] = pairs_json(r);
  return j.dump(2) + "\n";
}

std::string to_json(const LiftStatus& s) {
  auto j = lift_json(s);
  j["summary"] = describe(s);
  return j.dump(2) + "\n";
}

std::string to_json(const OracleResult& o) { return oracle_json(o).dump(2) + "\n"; }

PredictionReport report_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    PredictionReport r;
    const auto& meta = j.at("meta");
    r.group = meta.at("group").get<std::string>();
    r.invariant = meta.at("invariant").get<std::string>();
    r.base = meta.at("base").get<std::string>();
    r.a = j.at("a").get<std::uint64_t>();
    r.d = j.at("d").get<std::uint64_t>();
    r.b_M = j.at("b_M").get<std::uint64_t>();
    r.b_T = j.at("b_T").get<std::uint64_t>();
    r.b_T_witness = j.at("b_T_witness").get<std::size_t>();
    for (const auto& p : j.at("pairs"))
      r.pairs.push_back(pair_from(p));
    const auto& bn = j.at("b_new");
    if (bn.is_object()) {
      r.b_new.certified = bn.at("certified").get<std::uint64_t>();
      r.b_new.optimistic = bn.at("optimistic").get<std::uint64_t>();
    } else {
      r.b_new.certified = bn.get<std::uint64_t>();
    }
    for (const auto& o : j.at("oracles"))
      r.oracles.push_back(oracle_from(o));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report does not match the schema: ") + e.what());
  }
}

std::string to_text(const PredictionReport& r) {
  std::ostringstream out;
  out << "group      " << r.group << "\n";
  out << "invariant  " << r.invariant << "\n";
  out << "base       " << r.base << "\n";
  out << "a = " << r.a << ", d = " << r.d << "\n";
  out << "b_M = " << r.b_M << "\n";
  out << "b_T = " << r.b_T;
  if (r.b_T_witness < r.pairs.size())
    out << " at " << r.pairs[r.b_T_witness].subfield.name << " (|N| = " << r.pairs[r.b_T_witness].kernel_order
        << ")";
  out << "\n";
  out << "b_new = " << b_new_text(r.b_new) << "\n";
  out << "pairs (" << r.pairs.size() << "):\n" << rows_text(r);
  if (!r.oracles.empty()) {
    out << "oracles:\n";
    for (const auto& o : r.oracles)
      out << to_text(o);
  }
  return out.str();
}

std::string pairs_to_text(const PredictionReport& r) {
  std::ostringstream out;
  out << r.group << ", " << r.invariant << ", " << r.base << ": " << r.pairs.size() << " pairs\n" << rows_text(r);
  return out.str();
}

std::string to_text(const OracleResult& o) {
  std::ostringstream out;
  out << "  " << o.name << " (" << o.params << "): " << o.formula << "\n";
  for (const auto& v : o.values) {
    out << "    " << v.label << ": ";
    if (v.relation == Relation::Info) {
      out << (v.engine ? std::to_string(*v.engine) : "-") << "\n";
      continue;
    }
    out << "closed " << v.expected << ", engine " << (v.engine ? std::to_string(*v.engine) : "-");
    if (v.relation == Relation::AtLeast)
      out << " (engine >= closed)";
    out << (v.agree ? "  ok" : "  DIFFERS") << "\n";
  }
  for (const auto& f : o.flags)
    out << "    flag " << f.code << ": " << f.note << "\n";
  return out.str();
}

} // namespace malle
