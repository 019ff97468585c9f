// tlw: team-logic workbench command line.
// Exit codes: 0 = claim holds / evaluation true; 1 = claim fails / false;
// 2 = usage or I/O error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teamlogic/definability.hpp"
#include "teamlogic/json_io.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/synth.hpp"

using namespace teamlogic;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline JSON, or @path to read a file
json json_arg(const std::string& arg) {
  std::string text = (!arg.empty() && arg[0] == '@') ? slurp(arg.substr(1)) : arg;
  return json::parse(text);
}

Domain parse_domain(const std::string& csv) {
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) atoms.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) atoms.push_back(cur);
  return Domain{std::move(atoms)};
}

void emit(const json& j, const std::string& format) {
  if (format == "jsonl") std::cout << j.dump() << "\n";
  else std::cout << j.dump(2) << "\n";
}

uint64_t default_seed() {
  if (const char* env = std::getenv("TLW_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

PropertyFunction named_function(const std::string& name) {
  if (name == "split_or") return pf_split_or();
  if (name == "global_or") return pf_global_or();
  if (name == "lax_split_or") return pf_lax_split_or();
  if (name == "lax_global_or") return pf_lax_global_or();
  if (name == "ne") return pf_ne();
  throw std::runtime_error("unknown property function: " + name);
}

PropertyClass named_class(const std::string& name) {
  for (auto c : {PropertyClass::A, PropertyClass::C, PropertyClass::CU,
                 PropertyClass::DE, PropertyClass::U, PropertyClass::F})
    if (name == class_name(c)) return c;
  throw std::runtime_error("unknown property class: " + name);
}

// ---------------------------------------------------------------------------
// golden counterexample suite: every judgment is recomputed by the evaluator

struct Check {
  std::string claim;
  bool expected;
  bool actual;
  bool pass() const { return expected == actual; }
};

struct SuiteEntry {
  std::string id;
  std::string note;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

void sat_check(SuiteEntry& e, const Formula& f, Team t, const Domain& X, bool expected) {
  std::ostringstream ss;
  ss << "team mask " << t << " over " << X.size() << " atoms "
     << (expected ? "satisfies " : "falsifies ") << print(f);
  e.checks.push_back({ss.str(), expected, sat(f, t, X)});
}

void msat_check(SuiteEntry& e, const Formula& f, Team t, const KripkeModel& M,
                bool expected) {
  std::ostringstream ss;
  ss << "model team mask " << t << " " << (expected ? "satisfies " : "falsifies ")
     << print(f);
  e.checks.push_back({ss.str(), expected, msat(f, M, t)});
}

std::vector<SuiteEntry> golden_suite() {
  std::vector<SuiteEntry> out;
  Domain pq{{"p", "q"}};   // codes: v_pq=3, v_pq~=1, v_~pq=2, v_~p~q=0
  Domain pqr{{"p", "q", "r"}};
  Domain pr{{"p", "r"}};   // codes: v_~pr=2, v_p~r=1, v_pr=3
  Domain qr{{"q", "r"}};
  Domain p1{{"p"}};

  {
    SuiteEntry e{"split_or_basic", "a two-valuation team splits across a disjunction"};
    sat_check(e, parse("p \\/ q"), (1u << 3) | (1u << 1), pq, true);
    out.push_back(e);
  }
  {
    SuiteEntry e{"might_basic", "might holds when some nonempty subteam satisfies the operand"};
    sat_check(e, parse("might q"), (1u << 3) | (1u << 1), pq, true);
    out.push_back(e);
  }
  {
    SuiteEntry e{"dep_table", "p determines q but not r in a four-row table"};
    Team t = (1u << 6) | (1u << 2) | (1u << 1);  // rows 011, 010, 100 (p,q,r bits)
    sat_check(e, parse("=(p; q)"), t, pqr, true);
    sat_check(e, parse("=(p; r)"), t, pqr, false);
    out.push_back(e);
  }
  {
    SuiteEntry e{"global_or_basic", "global disjunction needs one disjunct to hold outright"};
    sat_check(e, parse("p \\\\/ q"), (1u << 3) | (1u << 1), pq, true);
    sat_check(e, parse("p \\\\/ q"), (1u << 2) | (1u << 0), pq, false);
    out.push_back(e);
  }
  {
    SuiteEntry e{"union_failure_impl", "might p -> q holds at two singletons but not their union"};
    Formula f = parse("might p -> q");
    sat_check(e, f, 1u << 3, pq, true);
    sat_check(e, f, 1u << 0, pq, true);
    sat_check(e, f, (1u << 3) | (1u << 0), pq, false);
    out.push_back(e);
  }
  {
    SuiteEntry e{"union_failure_dep_gor_lgor",
                 "dependence and global disjunctions are not union closed"};
    for (const char* s : {"=(q; p)", "p \\\\/ ~p", "p \\\\/. ~p"}) {
      Formula f = parse(s);
      sat_check(e, f, 1u << 3, pq, true);
      sat_check(e, f, 1u << 2, pq, true);
      sat_check(e, f, (1u << 3) | (1u << 2), pq, false);
    }
    out.push_back(e);
  }
  {
    SuiteEntry e{"split_or_convexity_failure",
                 "a split disjunction of a convex formula with a satisfaction gap"};
    Formula phi = parse("(((p /\\ ne) \\/ (~p /\\ ne)) -> bot) /\\ might r");
    Formula f = f_vee(phi, phi);
    sat_check(e, f, 1u << 2, pr, true);
    sat_check(e, f, (1u << 2) | (1u << 1), pr, false);
    sat_check(e, f, (1u << 2) | (1u << 1) | (1u << 3), pr, true);
    out.push_back(e);
  }
  {
    SuiteEntry e{"global_or_convexity_failure",
                 "a global disjunction of convex formulas with a satisfaction gap"};
    Formula f = parse("p \\\\/ might q");
    sat_check(e, f, 1u << 1, pq, true);
    sat_check(e, f, (1u << 1) | (1u << 0), pq, false);
    sat_check(e, f, (1u << 1) | (1u << 0) | (1u << 3), pq, true);
    out.push_back(e);
  }
  {
    SuiteEntry e{"substitution_failure_global_or",
                 "p \\/ p entails p, but substituting a question for p breaks it"};
    auto base = entails({parse("p \\/ p")}, parse("p"), p1);
    e.checks.push_back({"p \\/ p entails p", true, base.holds});
    Formula q = parse("p \\\\/ (p -> bot)");
    auto sub = entails({f_vee(q, q)}, q, p1);
    e.checks.push_back({"substituted split entailment fails", false, sub.holds});
    e.checks.push_back(
        {"witness is the full two-valuation team", true, sub.witness && *sub.witness == 3u});
    out.push_back(e);
  }
  {
    SuiteEntry e{"substitution_failure_might",
                 "distribution over split disjunction fails once might top replaces p"};
    auto base = entails({parse("p /\\ (q \\/ r)")}, parse("(p /\\ q) \\/ (p /\\ r)"), pqr);
    e.checks.push_back({"conjunction distributes over split", true, base.holds});
    auto sub = entails({parse("might top /\\ (q \\/ r)")},
                       parse("(might top /\\ q) \\/ (might top /\\ r)"), qr);
    e.checks.push_back({"distribution fails with might top", false, sub.holds});
    e.checks.push_back({"witness is the singleton q-team", true, sub.witness && *sub.witness == 2u});
    out.push_back(e);
  }
  {
    SuiteEntry e{"global_diamond_convexity_failure",
                 "successor-team diamond of a convex formula has a satisfaction gap"};
    KripkeModel M = global_diamond_fixture();
    Formula f = parse("gdia (((might p /\\ might ~p) -> bot) /\\ might r)");
    msat_check(e, f, 1u << 2, M, true);
    msat_check(e, f, (1u << 1) | (1u << 2), M, false);
    msat_check(e, f, (1u << 0) | (1u << 1) | (1u << 2), M, true);
    out.push_back(e);
  }
  {
    SuiteEntry e{"property_split_or_leaves_convex",
                 "pointwise union of two convex properties is not convex"};
    Property P;  // {{v_pq}, {v_pq~, v_~pq}}
    P.insert(1u << 3);
    P.insert((1u << 1) | (1u << 2));
    Property Q;
    Q.insert(1u << 3);
    Property R = pf_split_or()({P, Q}, pq);
    Property want;
    want.insert(1u << 3);
    want.insert((1u << 3) | (1u << 1) | (1u << 2));
    e.checks.push_back({"split union is the two-team result", true, R == want});
    e.checks.push_back({"result is not convex", false, check_closure(R, pq).convex});
    out.push_back(e);
  }
  {
    SuiteEntry e{"property_global_or_leaves_convex",
                 "set union of two convex properties is not convex"};
    Property P;
    P.insert((1u << 3) | (1u << 1) | (1u << 2));
    Property Q;
    Q.insert(1u << 3);
    Property R = pf_global_or()({P, Q}, pq);
    Property want;
    want.insert(1u << 3);
    want.insert((1u << 3) | (1u << 1) | (1u << 2));
    e.checks.push_back({"union is the two-team result", true, R == want});
    e.checks.push_back({"result is not convex", false, check_closure(R, pq).convex});
    out.push_back(e);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tlw: team-logic workbench"};
  app.require_subcommand(1);
  std::string format = "pretty";
  app.add_option("--format", format, "pretty or jsonl")->check(CLI::IsMember({"pretty", "jsonl"}));

  std::string domain_csv, formula_str, team_str, property_str, model_path;
  std::string logic_str, mode = "exhaustive", context_str, function_str, class_str;
  std::string signature_str, suite = "all";
  std::vector<std::string> premise_strs;
  uint64_t count = 500, seed = default_seed();
  int jobs = 1, depth = 2;
  bool do_search = false;

  auto add_domain = [&](CLI::App* c, bool required = true) {
    auto* o = c->add_option("--domain", domain_csv, "comma-separated atom names");
    if (required) o->required();
    return o;
  };

  auto* c_eval = app.add_subcommand("eval", "evaluate a formula on a team");
  add_domain(c_eval, false);
  c_eval->add_option("--formula", formula_str)->required();
  c_eval->add_option("--team", team_str, "team JSON or @file")->required();
  c_eval->add_option("--model", model_path, "Kripke model JSON file (modal mode)");

  auto* c_ext = app.add_subcommand("extension", "all satisfying teams of a formula");
  add_domain(c_ext, false);
  c_ext->add_option("--formula", formula_str)->required();
  c_ext->add_option("--model", model_path, "Kripke model JSON file (modal mode)");

  auto* c_clo = app.add_subcommand("closure", "closure-property report for a property");
  add_domain(c_clo);
  c_clo->add_option("--property", property_str, "property JSON or @file");
  c_clo->add_option("--formula", formula_str, "use this formula's extension instead");

  auto* c_ent = app.add_subcommand("entails", "check entailment, reporting a witness team");
  add_domain(c_ent);
  c_ent->add_option("--premise", premise_strs, "premise formula (repeatable)");
  c_ent->add_option("--formula", formula_str, "conclusion")->required();

  auto* c_syn = app.add_subcommand("synth", "characteristic formula for a property");
  add_domain(c_syn);
  c_syn->add_option("--logic", logic_str, "condep|coninq|plim|pl_ne_flat|pl_ne_cases")->required();
  c_syn->add_option("--property", property_str, "property JSON or @file")->required();

  auto* c_ver = app.add_subcommand("verify", "sweep-verify synthesis over a domain");
  add_domain(c_ver);
  c_ver->add_option("--logic", logic_str)->required();
  c_ver->add_option("--mode", mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
  c_ver->add_option("--count", count, "samples in sample mode");
  c_ver->add_option("--seed", seed, "base seed (default TLW_SEED or 0)");
  c_ver->add_option("--jobs", jobs, "worker threads for exhaustive mode");

  auto* c_uni = app.add_subcommand("unidef", "uniform-definability check or bounded search");
  add_domain(c_uni);
  c_uni->add_option("--function", function_str, "split_or|global_or|lax_split_or|lax_global_or|ne")
      ->required();
  c_uni->add_option("--class", class_str, "a|c|cu|de|u|f")->required();
  c_uni->add_option("--context", context_str, "context formula with holes _1, _2, ...");
  c_uni->add_flag("--search", do_search, "search for a context instead of checking one");
  c_uni->add_option("--signature", signature_str, "fragment grammar for the search");
  c_uni->add_option("--depth", depth, "max context tree depth for the search");

  auto* c_cex = app.add_subcommand("counterexamples", "replay the golden judgment suite");
  c_cex->add_option("--suite", suite, "all, or a single entry id");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_eval) {
      Formula f = parse(formula_str);
      bool result;
      if (!model_path.empty()) {
        KripkeModel M = model_from_json(json_arg("@" + model_path));
        result = msat(f, M, modal_team_from_json(json_arg(team_str), M));
      } else {
        Domain X = parse_domain(domain_csv);
        result = sat(f, team_from_json(json_arg(team_str), X), X);
      }
      emit(json{{"sat", result}}, format);
      return result ? 0 : 1;
    }
    if (*c_ext) {
      Formula f = parse(formula_str);
      if (!model_path.empty()) {
        KripkeModel M = model_from_json(json_arg("@" + model_path));
        Property P = mextension(f, M);
        json arr = json::array();
        for (Team t : P.teams) arr.push_back(modal_team_to_json(t, M));
        emit(arr, format);
      } else {
        Domain X = parse_domain(domain_csv);
        emit(property_to_json(extension(f, X), X), format);
      }
      return 0;
    }
    if (*c_clo) {
      Domain X = parse_domain(domain_csv);
      Property P = property_str.empty() ? extension(parse(formula_str), X)
                                        : property_from_json(json_arg(property_str), X);
      emit(closure_report_to_json(check_closure(P, X), X), format);
      return 0;
    }
    if (*c_ent) {
      Domain X = parse_domain(domain_csv);
      std::vector<Formula> premises;
      for (const auto& s : premise_strs) premises.push_back(parse(s));
      auto r = entails(premises, parse(formula_str), X);
      json o{{"holds", r.holds}};
      o["witness"] = r.witness ? team_to_json(*r.witness, X) : json(nullptr);
      emit(o, format);
      return r.holds ? 0 : 1;
    }
    if (*c_syn) {
      Domain X = parse_domain(domain_csv);
      auto logic = synth_logic_from_name(logic_str);
      if (!logic) throw std::runtime_error("unknown logic: " + logic_str);
      Property P = property_from_json(json_arg(property_str), X);
      Formula f = synthesize(*logic, P, X);
      json o{{"formula", print(f)},
             {"extension", property_to_json(extension(f, X), X)},
             {"fragment", fragment_name(fragment_of(*logic))}};
      emit(o, format);
      return 0;
    }
    if (*c_ver) {
      Domain X = parse_domain(domain_csv);
      auto logic = synth_logic_from_name(logic_str);
      if (!logic) throw std::runtime_error("unknown logic: " + logic_str);
      VerifyReport rep = mode == "exhaustive" ? verify_exhaustive(*logic, X, jobs)
                                              : verify_sampled(*logic, X, count, seed);
      emit(verify_report_to_json(rep), format);
      return rep.ok() ? 0 : 1;
    }
    if (*c_uni) {
      Domain X = parse_domain(domain_csv);
      PropertyFunction fn = named_function(function_str);
      PropertyClass cls = named_class(class_str);
      if (do_search) {
        auto sig = fragment_from_name(signature_str);
        if (!sig) throw std::runtime_error("unknown fragment: " + signature_str);
        auto found = search_context(fn, cls, X, *sig, depth);
        json o{{"found", found.has_value()}};
        o["context"] = found ? json(print(found->body)) : json(nullptr);
        emit(o, format);
        return found ? 0 : 1;
      }
      if (context_str.empty()) throw std::runtime_error("--context required without --search");
      auto r = check_uniform(make_context(parse(context_str), fn.arity), fn, cls, X);
      json o = uniform_result_to_json(r, X);
      o["verified_at"] = domain_to_json(X);  // fixed-domain evidence, not the universal claim
      emit(o, format);
      return r.ok ? 0 : 1;
    }
    if (*c_cex) {
      auto entries = golden_suite();
      bool all_pass = true;
      bool matched = false;
      json arr = json::array();
      for (const auto& e : entries) {
        if (suite != "all" && suite != e.id) continue;
        matched = true;
        json je{{"id", e.id}, {"note", e.note}, {"pass", e.pass()}};
        json checks = json::array();
        for (const auto& c : e.checks)
          checks.push_back({{"claim", c.claim}, {"expected", c.expected},
                            {"actual", c.actual}, {"pass", c.pass()}});
        je["checks"] = checks;
        all_pass = all_pass && e.pass();
        if (format == "jsonl") std::cout << je.dump() << "\n";
        else arr.push_back(je);
      }
      if (!matched) throw std::runtime_error("unknown suite entry: " + suite);
      if (format != "jsonl") std::cout << arr.dump(2) << "\n";
      return all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
