// Characteristic-formula synthesis: given a property in the right closure
// class, build a formula in the target language whose extension is exactly
// that property, and sweep-verify the construction over small domains.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "teamlogic/closure.hpp"
#include "teamlogic/core.hpp"
#include "teamlogic/eval.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"

namespace teamlogic {

// The two pl_ne constructions differ in shape: pl_ne_flat conjoins a flat
// upper bound with an upward witness; pl_ne_cases splits on whether the
// property is empty, contains the empty team, or neither.
enum class SynthLogic { condep, coninq, plim, pl_ne_flat, pl_ne_cases };

inline const char* synth_logic_name(SynthLogic l) {
  switch (l) {
    case SynthLogic::condep: return "condep";
    case SynthLogic::coninq: return "coninq";
    case SynthLogic::plim: return "plim";
    case SynthLogic::pl_ne_flat: return "pl_ne_flat";
    case SynthLogic::pl_ne_cases: return "pl_ne_cases";
  }
  return "?";
}

inline std::optional<SynthLogic> synth_logic_from_name(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(SynthLogic::pl_ne_cases); ++i) {
    auto l = static_cast<SynthLogic>(i);
    if (s == synth_logic_name(l)) return l;
  }
  return std::nullopt;
}

// Which classical basis the emitted formulas draw their negation from:
// lor has a primitive flat ~, impl encodes ~a as a -> bot, vee_ne has a
// primitive flat ~ plus ne.
enum class Basis { lor, impl, vee_ne };

inline Basis basis_of(SynthLogic l) {
  switch (l) {
    case SynthLogic::condep: return Basis::lor;
    case SynthLogic::coninq:
    case SynthLogic::plim: return Basis::impl;
    default: return Basis::vee_ne;
  }
}

inline FragmentId fragment_of(SynthLogic l) {
  switch (l) {
    case SynthLogic::condep: return FragmentId::CONDEP;
    case SynthLogic::coninq: return FragmentId::CONINQ;
    case SynthLogic::plim: return FragmentId::PLIM;
    default: return FragmentId::PL_NE;
  }
}

inline PropertyClass class_of(SynthLogic l) {
  switch (l) {
    case SynthLogic::condep:
    case SynthLogic::coninq:
    case SynthLogic::plim: return PropertyClass::C;
    default: return PropertyClass::CU;
  }
}

namespace detail {

inline Formula basis_neg(Basis b, Formula f) {
  return b == Basis::impl ? f_impl(std::move(f), f_bot()) : f_neg(std::move(f));
}

inline Formula basis_top(Basis b) {
  return b == Basis::impl ? f_impl(f_bot(), f_bot()) : f_top();
}

// a curlyvee b := ~(~a /\ ~b); flat "or" available in every basis
inline Formula curly_vee(Basis b, Formula a, Formula c) {
  return basis_neg(b, f_and(basis_neg(b, std::move(a)), basis_neg(b, std::move(c))));
}

inline Formula big_curly_vee(Basis b, std::vector<Formula> fs) {
  if (fs.empty()) return f_bot();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = curly_vee(b, acc, fs[i]);
  return acc;
}

inline Formula big_and(Basis b, std::vector<Formula> fs) {
  if (fs.empty()) return basis_top(b);
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

// ◆ is primitive except in the ne basis, where it unfolds to (phi /\ ne) \/ top
inline Formula basis_might(Basis b, Formula f) {
  if (b == Basis::vee_ne) return f_vee(f_and(std::move(f), f_ne()), f_top());
  return f_might(std::move(f));
}

// the formula with empty extension
inline Formula dead_bot(Basis b) {
  if (b == Basis::vee_ne) return f_and(f_bot(), f_ne());
  return f_might(f_bot());
}

// All subset-minimal transversals of the member teams: S hits every member
// and no proper subset of S does. Every product choice contains one, and each
// one is itself a product choice, so conjoining/hitting against these alone
// is equivalent to the full product (tested, not assumed).
inline std::vector<Team> minimal_transversals(const std::vector<Team>& members) {
  Team all = 0;
  for (Team t : members) all |= t;
  std::vector<Team> hitting;
  for (Team s = 0; s <= all; ++s) {
    if (!subset(s, all)) continue;
    bool hits = true;
    for (Team t : members)
      if ((s & t) == 0) { hits = false; break; }
    if (hits) hitting.push_back(s);
  }
  std::vector<Team> minimal;
  for (Team s : hitting) {
    bool is_min = true;
    for (Team u : hitting)
      if (u != s && subset(u, s)) { is_min = false; break; }
    if (is_min) minimal.push_back(s);
  }
  return minimal;  // ascending by construction
}

}  // namespace detail

// conjunction of literals pinning down one valuation; empty domain gives top
inline Formula chi_v(Valuation v, const Domain& X, Basis b = Basis::lor) {
  std::vector<Formula> lits;
  for (size_t i = 0; i < X.size(); ++i) {
    Formula a = make_atom(X.atoms[i]);
    lits.push_back(val_bit(v, static_cast<int>(i)) ? a : detail::basis_neg(b, a));
  }
  return detail::big_and(b, std::move(lits));
}

// flat formula satisfied exactly by the subteams of t
inline Formula chi_t(Team t, const Domain& X, Basis b = Basis::lor) {
  std::vector<Formula> parts;
  for (Valuation v : team_members(t)) parts.push_back(chi_v(v, X, b));
  return detail::big_curly_vee(b, std::move(parts));
}

// upward witness: t satisfies the result iff t contains some member of P.
// One might-conjunct per minimal transversal; if P holds the empty team the
// product is empty and the conjunction collapses to top.
inline Formula chi_U(const Property& P, const Domain& X, Basis b = Basis::lor) {
  if (P.empty()) throw std::invalid_argument("chi_U: empty property");
  for (Team t : P.teams)
    if (t == 0) return detail::basis_top(b);
  std::vector<Formula> conjuncts;
  for (Team s : detail::minimal_transversals(P.teams)) {
    std::vector<Formula> parts;
    for (Valuation v : team_members(s)) parts.push_back(chi_v(v, X, b));
    conjuncts.push_back(detail::basis_might(b, detail::big_curly_vee(b, std::move(parts))));
  }
  return detail::big_and(b, std::move(conjuncts));
}

// the literal product form, kept for the dedup-soundness tests
inline Formula chi_U_literal(const Property& P, const Domain& X, Basis b = Basis::lor) {
  if (P.empty()) throw std::invalid_argument("chi_U_literal: empty property");
  std::vector<std::vector<Valuation>> members;
  size_t count = 1;
  for (Team t : P.teams) {
    members.push_back(team_members(t));
    count *= std::max<size_t>(members.back().size(), 1);
    if (count > 100000) throw std::invalid_argument("chi_U_literal: product too large");
  }
  for (Team t : P.teams)
    if (t == 0) return detail::basis_top(b);
  std::vector<size_t> idx(members.size(), 0);
  std::vector<Formula> conjuncts;
  while (true) {
    std::vector<Formula> parts;
    for (size_t i = 0; i < members.size(); ++i)
      parts.push_back(chi_v(members[i][idx[i]], X, b));
    conjuncts.push_back(detail::basis_might(b, detail::big_curly_vee(b, std::move(parts))));
    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < members[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return detail::big_and(b, std::move(conjuncts));
}

// |t| <= n counter; the lax flag swaps every split disjunction for its lax twin
inline Formula gamma_n(int n, const Domain& X, bool lax = false) {
  if (n < 0) throw std::invalid_argument("gamma_n: negative count");
  if (n == 0) return f_bot();
  std::vector<Formula> deps;
  for (const auto& p : X.atoms) deps.push_back(make_dep({}, make_atom(p)));
  Formula g1 = detail::big_and(Basis::lor, std::move(deps));
  Formula acc = g1;
  for (int i = 1; i < n; ++i) acc = lax ? f_dor(acc, g1) : f_vee(acc, g1);
  return acc;
}

// satisfied exactly by the teams that fail to contain t
inline Formula xi_t(Team t, const Domain& X, bool lax = false) {
  if (t == 0) throw std::invalid_argument("xi_t: empty team");
  Formula g = gamma_n(team_size(t) - 1, X, lax);
  Formula rest = chi_t(X.full_team() & ~t, X, Basis::lor);
  return lax ? f_dor(std::move(g), std::move(rest)) : f_vee(std::move(g), std::move(rest));
}

// flat upper bound: t satisfies the result iff t is inside the union of P
inline Formula chi_F(const Property& P, const Domain& X, Basis b = Basis::lor) {
  if (P.empty()) return f_bot();
  std::vector<Formula> parts;
  for (Team s : P.teams) parts.push_back(chi_t(s, X, b));
  Formula acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = f_vee(acc, parts[i]);
  return acc;
}

// downward witness: t satisfies the result iff t is inside some member of P
inline Formula chi_D(const Property& P, const Domain& X, SynthLogic logic) {
  if (P.empty()) throw std::invalid_argument("chi_D: empty property");
  switch (logic) {
    case SynthLogic::coninq: {
      Formula acc = chi_t(P.teams[0], X, Basis::impl);
      for (size_t i = 1; i < P.teams.size(); ++i)
        acc = f_lgor(acc, chi_t(P.teams[i], X, Basis::impl));
      return acc;
    }
    case SynthLogic::plim: {
      // ((/\_{j != 0} might ~phi_j) -> phi_0) over the flat family {chi_s};
      // sound because the antecedent is upward closed and phi_0 downward
      std::vector<Formula> ants;
      for (size_t j = 1; j < P.teams.size(); ++j)
        ants.push_back(f_might(detail::basis_neg(Basis::impl, chi_t(P.teams[j], X, Basis::impl))));
      return f_impl(detail::big_and(Basis::impl, std::move(ants)),
                    chi_t(P.teams[0], X, Basis::impl));
    }
    case SynthLogic::condep: {
      if (X.size() > 3) throw std::invalid_argument("chi_D: domain too large for condep form");
      std::vector<Formula> conjuncts;
      const Team full = X.full_team();
      for (Team u = 1; u <= full; ++u) {
        bool blocked = true;  // u fits inside no member of P
        for (Team s : P.teams)
          if (subset(u, s)) { blocked = false; break; }
        if (blocked) conjuncts.push_back(xi_t(u, X, /*lax=*/true));
      }
      return detail::big_and(Basis::lor, std::move(conjuncts));
    }
    default:
      throw std::invalid_argument("chi_D: logic has no downward-witness form");
  }
}

namespace detail {

// the case-split construction for a convex union-closed P without the empty
// team: a split disjunction of (flat-or /\ ne) blocks, one per transversal,
// padded with one product choice through each valuation of union(P) so the
// blocks still cover the full union
inline Formula pl_ne_case_c(const Property& P, const Domain& X) {
  std::vector<Team> family = minimal_transversals(P.teams);
  Team all = union_all(P);
  for (Valuation w : team_members(all)) {
    Team choice = 0;
    for (Team t : P.teams)
      choice |= (t >> w) & 1u ? (1u << w) : (t & (~t + 1));  // w if present, else least member
    family.push_back(choice);
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<Formula> blocks;
  for (Team s : family) {
    std::vector<Formula> parts;
    for (Valuation v : team_members(s)) parts.push_back(chi_v(v, X, Basis::vee_ne));
    Formula flat_or = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) flat_or = f_vee(flat_or, parts[i]);
    blocks.push_back(f_and(std::move(flat_or), f_ne()));
  }
  Formula acc = blocks[0];
  for (size_t i = 1; i < blocks.size(); ++i) acc = f_vee(acc, blocks[i]);
  return acc;
}

}  // namespace detail

inline Formula synthesize(SynthLogic logic, const Property& P, const Domain& X) {
  if (!in_class(P, class_of(logic), X))
    throw std::invalid_argument("synthesize: property outside the logic's class");
  Basis b = basis_of(logic);
  Formula result;
  if (P.empty()) {
    result = detail::dead_bot(b);
  } else {
    switch (logic) {
      case SynthLogic::condep:
      case SynthLogic::coninq:
      case SynthLogic::plim:
        result = f_and(chi_D(P, X, logic), chi_U(P, X, b));
        break;
      case SynthLogic::pl_ne_flat:
        result = f_and(chi_F(P, X, b), chi_U(P, X, b));
        break;
      case SynthLogic::pl_ne_cases:
        result = P.contains(0) ? chi_F(P, X, b) : detail::pl_ne_case_c(P, X);
        break;
    }
  }
  if (!in_fragment(result, fragment_of(logic)))
    throw std::logic_error("synthesize: output escaped its fragment");
  return result;
}

struct VerifyFailure {
  Property property;
  Formula formula;  // null if synthesis itself threw
  Property extension;
  std::string error;
};

struct VerifyReport {
  SynthLogic logic;
  std::vector<std::string> atoms;
  uint64_t total = 0;   // class members examined
  uint64_t passed = 0;
  std::vector<VerifyFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void verify_one(SynthLogic logic, const Property& P, const Domain& X,
                       VerifyReport& rep) {
  ++rep.total;
  try {
    Formula f = synthesize(logic, P, X);
    Property ext = extension(f, X);
    if (ext == P) {
      ++rep.passed;
    } else {
      rep.failures.push_back({P, f, std::move(ext), "extension mismatch"});
    }
  } catch (const std::exception& e) {
    rep.failures.push_back({P, nullptr, {}, e.what()});
  }
}

}  // namespace detail

// Exhaustive sweep over every class member at |X| <= 2 (65536 candidate
// properties at |X| = 2), sharded across jobs with a deterministic merge.
inline VerifyReport verify_exhaustive(SynthLogic logic, const Domain& X, int jobs = 1) {
  if (X.size() > 2) throw std::invalid_argument("verify_exhaustive: domain too large");
  VerifyReport rep{logic, X.atoms};
  const uint64_t num_props = uint64_t{1} << X.num_teams();
  const PropertyClass cls = class_of(logic);
  jobs = std::max(1, jobs);
  std::vector<VerifyReport> shards(jobs, VerifyReport{logic, X.atoms});
  auto work = [&](int shard) {
    for (uint64_t mask = shard; mask < num_props; mask += jobs) {
      Property P = Property::from_mask(mask, X.num_teams());
      if (!in_class(P, cls, X)) continue;
      detail::verify_one(logic, P, X, shards[shard]);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs; ++i) threads.emplace_back(work, i);
    for (auto& t : threads) t.join();
  }
  std::vector<std::pair<uint64_t, VerifyFailure>> fails;
  for (int i = 0; i < jobs; ++i) {
    rep.total += shards[i].total;
    rep.passed += shards[i].passed;
    for (auto& f : shards[i].failures) fails.emplace_back(f.property.as_mask(), std::move(f));
  }
  std::sort(fails.begin(), fails.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [_, f] : fails) rep.failures.push_back(std::move(f));
  return rep;
}

// k seeded random class members; seeds seed, seed+1, ...
inline VerifyReport verify_sampled(SynthLogic logic, const Domain& X, uint64_t k,
                                   uint64_t seed) {
  VerifyReport rep{logic, X.atoms};
  const PropertyClass cls = class_of(logic);
  for (uint64_t i = 0; i < k; ++i) {
    Property P = random_property(X, cls, seed + i);
    detail::verify_one(logic, P, X, rep);
  }
  return rep;
}

}  // namespace teamlogic
