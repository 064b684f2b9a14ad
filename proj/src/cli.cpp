#include "malle/cli.hpp"

#include <algorithm>
#include <map>

#include <CLI11.hpp>

#include "malle/arith.hpp"
#include "malle/embed.hpp"
#include "malle/error.hpp"
#include "malle/predict.hpp"
#include "malle/report.hpp"
#include "malle/verify.hpp"

namespace malle::cli {

BaseField parse_base(const std::string& text, const PermGroup& g) {
  if (text == "Q")
    return BaseField::rationals();
  const std::string prefix = "Fq:q=";
  if (text.rfind(prefix, 0) != 0)
    throw ParseError("base must be Q or Fq:q=<q>, got '" + text + "'");
  std::uint64_t q = 0;
  try {
    std::size_t used = 0;
    q = std::stoull(text.substr(prefix.size()), &used);
    if (used != text.size() - prefix.size())
      throw ParseError("trailing characters in '" + text + "'");
  } catch (const std::logic_error&) {
    throw ParseError("cannot read q in '" + text + "'");
  }
  if (q < 2)
    throw ValidationError("q must be at least 2");
  if (arith::gcd(q, g.order()) != 1)
    throw ValidationError("q = " + std::to_string(q) + " is not coprime to |G| = " + std::to_string(g.order()));
  return BaseField::function_field(q);
}

namespace {

struct GroupFlags {
  std::string group;
  std::string inv = "disc";
  std::string base = "Q";
  std::string out = "json";
  std::size_t cap = std::size_t{1} << 21;
  std::size_t burnside_cap = std::size_t{1} << 20;
  std::uint64_t modulus = 0;
  unsigned jobs = 1;
  bool cross_check = false;
};

void add_group_flags(CLI::App* sub, GroupFlags& f) {
  sub->add_option("--group", f.group, "group expression, e.g. wr(C3,C4)")->required();
  sub->add_option("--inv", f.inv, "disc | rad | table:<file>")->capture_default_str();
  sub->add_option("--base", f.base, "Q | Fq:q=<q>")->capture_default_str();
  sub->add_option("--out", f.out, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  sub->add_option("--cap", f.cap, "maximum group order")->capture_default_str();
  sub->add_option("--burnside-cap", f.burnside_cap, "maximum |G(pi,phi)| for Burnside and pole order")
      ->capture_default_str();
  sub->add_option("--modulus", f.modulus, "cyclotomic modulus, a multiple of d (default d)");
  sub->add_option("--jobs", f.jobs, "worker threads for pair evaluation")->capture_default_str();
  sub->add_flag("--cross-check", f.cross_check, "run every counting method on each pair");
}

PredictionReport run_predict(const GroupFlags& f) {
  BuildOptions bo;
  bo.element_cap = f.cap;
  auto g = PermGroup::build(parse_group_expr(f.group), bo);
  const auto base = parse_base(f.base, g);
  const auto spec = ExpSpec::parse(f.inv);
  const auto s = Setting::make(std::move(g), spec, base, f.modulus);
  PredictOptions po;
  po.jobs = std::max(1u, f.jobs);
  po.cross_check = f.cross_check;
  po.twist.burnside_cap = f.burnside_cap;
  return predict(s, po);
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    // accept "a=1,b=2" as well as separate words
    std::size_t start = 0;
    while (start <= item.size()) {
      auto end = item.find(',', start);
      if (end == std::string::npos)
        end = item.size();
      const auto part = item.substr(start, end - start);
      if (!part.empty()) {
        const auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
          throw ParseError("parameter '" + part + "' is not key=value");
        out[part.substr(0, eq)] = part.substr(eq + 1);
      }
      start = end + 1;
    }
  }
  return out;
}

std::uint64_t number_param(const std::map<std::string, std::string>& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end())
    throw ParseError("missing parameter " + key);
  try {
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used);
    if (used != it->second.size())
      throw ParseError("parameter " + key + " is not a number");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("parameter " + key + " is not a number");
  }
}

std::string text_param(const std::map<std::string, std::string>& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end())
    throw ParseError("missing parameter " + key);
  return it->second;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Malle-type constants for transitive permutation groups", "malle"};
  app.require_subcommand(1, 1);

  GroupFlags pf;
  auto* predict_cmd = app.add_subcommand("predict", "full prediction report");
  add_group_flags(predict_cmd, pf);

  GroupFlags qf;
  auto* pairs_cmd = app.add_subcommand("pairs", "pair table only");
  add_group_flags(pairs_cmd, qf);

  std::uint64_t ell = 0, n = 0, d = 0;
  std::string embed_out = "json";
  auto* embed_cmd = app.add_subcommand("embed", "embedding of the degree-n subfield of Q(mu_ell) into a C_d-extension");
  embed_cmd->add_option("--ell", ell, "odd prime")->required();
  embed_cmd->add_option("--n", n, "subfield degree")->required();
  embed_cmd->add_option("--d", d, "cyclic target order")->required();
  embed_cmd->add_option("--out", embed_out, "json | text")->check(CLI::IsMember({"json", "text"}));

  std::string oracle_name;
  std::vector<std::string> oracle_params;
  std::string oracle_out = "json";
  std::size_t oracle_cap = std::size_t{1} << 22;
  auto* oracle_cmd = app.add_subcommand("oracle", "evaluate a closed form against the engine");
  oracle_cmd->add_option("--name", oracle_name, "thm1 | rad-wreath | cl2 | wreath-bm")
      ->required()
      ->check(CLI::IsMember({"thm1", "rad-wreath", "cl2", "wreath-bm"}));
  oracle_cmd->add_option("--params", oracle_params, "key=value ..., e.g. ell=5 d=8 or T=C3 B=C4")
      ->expected(1, -1);
  oracle_cmd->add_option("--cap", oracle_cap, "maximum group order")->capture_default_str();
  oracle_cmd->add_option("--out", oracle_out, "json | text")->check(CLI::IsMember({"json", "text"}));

  CheckOptions vopts;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the reference checks; exit 0 iff all pass");
  verify_cmd->add_option("--jobs", vopts.jobs, "worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict_cmd) {
      const auto rep = run_predict(pf);
      out << (pf.out == "json" ? to_json(rep) : to_text(rep));
      return kExitOk;
    }
    if (*pairs_cmd) {
      GroupFlags f = qf;
      const auto rep = run_predict(f);
      out << (f.out == "json" ? pairs_to_json(rep) : pairs_to_text(rep));
      return kExitOk;
    }
    if (*embed_cmd) {
      const auto st = embed_cyclic(ell, n, d);
      out << (embed_out == "json" ? to_json(st) : describe(st) + "\n");
      return kExitOk;
    }
    if (*oracle_cmd) {
      const auto p = parse_params(oracle_params);
      OracleOptions oo;
      oo.element_cap = oracle_cap;
      OracleResult r;
      if (oracle_name == "thm1")
        r = oracle_thm1(number_param(p, "ell"), number_param(p, "d"), oo);
      else if (oracle_name == "rad-wreath")
        r = oracle_rad_wreath(number_param(p, "ell"), number_param(p, "m"), oo);
      else if (oracle_name == "cl2")
        r = oracle_cl2(number_param(p, "ell"), oo);
      else
        r = oracle_wreath_bM(parse_group_expr(text_param(p, "T")), parse_group_expr(text_param(p, "B")), oo);
      out << (oracle_out == "json" ? to_json(r) : to_text(r));
      return kExitOk;
    }
    if (*verify_cmd) {
      ReferenceSuite suite(vopts);
      bool ok = true;
      suite.run_all([&](const CriterionResult& c) {
        ok = ok && c.passed;
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << ": " << c.detail << "\n";
        out.flush();
      });
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace malle::cli
