// Propositional satisfaction, extensions, entailment, and equivalence over a
// fixed finite domain.
//
// Two strategies, cross-checked in the tests:
//  - sat(): direct recursion on the defining clauses, memoized per
//    (subformula, team) pair;
//  - extension(): bottom-up per subformula over the whole team lattice,
//    with subset/superset sweeps done as bit-parallel lattice DPs.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "teamlogic/core.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// extension sets as flat bool vectors indexed by team code
using ExtSet = std::vector<char>;

// mark every t that has a marked subset (in place)
inline void close_upward_by_subset(ExtSet& v, int bits) {
  for (int b = 0; b < bits; ++b)
    for (uint32_t t = 0; t < v.size(); ++t)
      if (t & (1u << b)) v[t] = v[t] | v[t ^ (1u << b)];
}

// mark every t that has a marked superset (in place)
inline void close_downward_by_superset(ExtSet& v, int bits) {
  for (int b = 0; b < bits; ++b)
    for (uint32_t t = 0; t < v.size(); ++t)
      if (!(t & (1u << b))) v[t] = v[t] | v[t | (1u << b)];
}

}  // namespace detail

class PropEvaluator {
 public:
  explicit PropEvaluator(Domain X, std::vector<Property> hole_args = {})
      : X_(std::move(X)), hole_args_(std::move(hole_args)) {
    num_teams_ = static_cast<uint32_t>(X_.num_teams());
    full_ = X_.full_team();
  }

  const Domain& domain() const { return X_; }

  // Direct recursive satisfaction. Split-disjunction cover enumeration is
  // capped at |t| <= 12; use extension() beyond that.
  bool sat(const Formula& f, Team t) {
    if (subset(t, full_) == false) throw EvalError("team not over domain");
    return sat_rec(f, t);
  }

  Property extension(const Formula& f) {
    const detail::ExtSet& e = ext_rec(f);
    Property p;
    for (uint32_t t = 0; t < num_teams_; ++t)
      if (e[t]) p.teams.push_back(t);
    return p;
  }

 private:
  bool singleton_sat(const Formula& f, Valuation v) { return sat_rec(f, 1u << v); }

  int atom_index(const Formula& f) {
    int i = X_.index_of(f->name);
    if (i < 0) throw EvalError("atom '" + f->name + "' outside domain");
    return i;
  }

  bool sat_rec(const Formula& f, Team t) {
    uint64_t key = (reinterpret_cast<uintptr_t>(f.get()) << 16) ^ t;
    auto it = sat_memo_.find(key);
    if (it != sat_memo_.end()) return it->second;
    bool r = sat_eval(f, t);
    sat_memo_.emplace(key, r);
    return r;
  }

  bool sat_eval(const Formula& f, Team t) {
    switch (f->kind) {
      case Kind::Atom: {
        int i = atom_index(f);
        for (Valuation v : team_members(t))
          if (!val_bit(v, i)) return false;
        return true;
      }
      case Kind::Hole: {
        size_t i = static_cast<size_t>(f->hole_index) - 1;
        if (i >= hole_args_.size()) throw EvalError("unbound context hole");
        return hole_args_[i].contains(t);
      }
      case Kind::Bot:
        return t == 0;
      case Kind::NE:
        return t != 0;
      case Kind::Neg: {
        for (Valuation v : team_members(t))
          if (singleton_sat(f->left, v)) return false;
        return true;
      }
      case Kind::And:
        return sat_rec(f->left, t) && sat_rec(f->right, t);
      case Kind::SplitOr: {
        if (team_size(t) > 12)
          throw EvalError("team too large for direct split-disjunction; use extension()");
        // s runs over subsets of t; u must cover t \ s within t
        for (Team s = t;; s = (s - 1) & t) {
          if (sat_rec(f->left, s)) {
            Team need = t & ~s;
            for (Team extra = s;; extra = (extra - 1) & s) {
              if (sat_rec(f->right, need | extra)) return true;
              if (extra == 0) break;
            }
          }
          if (s == 0) break;
        }
        return false;
      }
      case Kind::LaxSplitOr: {
        // exist s, u over X with t <= s | u
        for (Team s = full_;; s = (s - 1) & full_) {
          if (sat_rec(f->left, s)) {
            Team need = t & ~s;
            Team room = full_ & ~need;
            for (Team extra = room;; extra = (extra - 1) & room) {
              if (sat_rec(f->right, need | extra)) return true;
              if (extra == 0) break;
            }
          }
          if (s == 0) break;
        }
        return false;
      }
      case Kind::Impl: {
        for (Team s = t;; s = (s - 1) & t) {
          if (sat_rec(f->left, s) && !sat_rec(f->right, s)) return false;
          if (s == 0) break;
        }
        return true;
      }
      case Kind::GlobalOr:
        return sat_rec(f->left, t) || sat_rec(f->right, t);
      case Kind::LaxGlobalOr: {
        Team room = full_ & ~t;
        for (Team extra = room;; extra = (extra - 1) & room) {
          Team s = t | extra;
          if (sat_rec(f->left, s) || sat_rec(f->right, s)) return true;
          if (extra == 0) break;
        }
        return false;
      }
      case Kind::Might: {
        for (Team s = t;; s = (s - 1) & t) {
          if (s != 0 && sat_rec(f->left, s)) return true;
          if (s == 0) break;
        }
        return false;
      }
      case Kind::Dep: {
        auto members = team_members(t);
        for (size_t a = 0; a < members.size(); ++a)
          for (size_t b = a + 1; b < members.size(); ++b) {
            bool args_agree = true;
            for (const auto& arg : f->dep_args)
              if (singleton_sat(arg, members[a]) != singleton_sat(arg, members[b])) {
                args_agree = false;
                break;
              }
            if (args_agree && singleton_sat(f->dep_head, members[a]) !=
                                  singleton_sat(f->dep_head, members[b]))
              return false;
          }
        return true;
      }
      default:
        throw EvalError("modal connective in propositional evaluation");
    }
  }

  const detail::ExtSet& ext_rec(const Formula& f) {
    auto it = ext_memo_.find(f.get());
    if (it != ext_memo_.end()) return it->second;
    detail::ExtSet e = ext_eval(f);
    return ext_memo_.emplace(f.get(), std::move(e)).first->second;
  }

  detail::ExtSet ext_eval(const Formula& f) {
    const int bits = static_cast<int>(X_.num_valuations());
    detail::ExtSet e(num_teams_, 0);
    switch (f->kind) {
      case Kind::Atom: {
        int i = atom_index(f);
        Team good = 0;
        for (uint32_t v = 0; v < X_.num_valuations(); ++v)
          if (val_bit(v, i)) good |= 1u << v;
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = subset(t, good);
        break;
      }
      case Kind::Hole: {
        size_t i = static_cast<size_t>(f->hole_index) - 1;
        if (i >= hole_args_.size()) throw EvalError("unbound context hole");
        for (Team t : hole_args_[i].teams) {
          if (t >= num_teams_) throw EvalError("hole argument not over domain");
          e[t] = 1;
        }
        break;
      }
      case Kind::Bot:
        e[0] = 1;
        break;
      case Kind::NE:
        for (uint32_t t = 1; t < num_teams_; ++t) e[t] = 1;
        break;
      case Kind::Neg: {
        const auto& a = ext_rec(f->left);
        Team bad = 0;
        for (uint32_t v = 0; v < X_.num_valuations(); ++v)
          if (a[1u << v]) bad |= 1u << v;
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = (t & bad) == 0;
        break;
      }
      case Kind::And: {
        const auto& a = ext_rec(f->left);
        const auto& b = ext_rec(f->right);
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = a[t] & b[t];
        break;
      }
      case Kind::SplitOr:
      case Kind::LaxSplitOr: {
        const auto& a = ext_rec(f->left);
        const auto& b = ext_rec(f->right);
        std::vector<Team> as, bs;
        for (uint32_t t = 0; t < num_teams_; ++t) {
          if (a[t]) as.push_back(t);
          if (b[t]) bs.push_back(t);
        }
        for (Team s : as)
          for (Team u : bs) e[s | u] = 1;
        if (f->kind == Kind::LaxSplitOr) detail::close_downward_by_superset(e, bits);
        break;
      }
      case Kind::Impl: {
        const auto& a = ext_rec(f->left);
        const auto& b = ext_rec(f->right);
        // t fails iff some subteam satisfies the antecedent but not the consequent
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = a[t] && !b[t];
        detail::close_upward_by_subset(e, bits);
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = !e[t];
        break;
      }
      case Kind::GlobalOr: {
        const auto& a = ext_rec(f->left);
        const auto& b = ext_rec(f->right);
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = a[t] | b[t];
        break;
      }
      case Kind::LaxGlobalOr: {
        const auto& a = ext_rec(f->left);
        const auto& b = ext_rec(f->right);
        for (uint32_t t = 0; t < num_teams_; ++t) e[t] = a[t] | b[t];
        detail::close_downward_by_superset(e, bits);
        break;
      }
      case Kind::Might: {
        const auto& a = ext_rec(f->left);
        for (uint32_t t = 1; t < num_teams_; ++t) e[t] = a[t];
        e[0] = 0;
        detail::close_upward_by_subset(e, bits);
        break;
      }
      case Kind::Dep: {
        // singleton truth per argument, then a per-team functional check
        std::vector<Team> arg_masks;
        for (const auto& arg : f->dep_args) {
          const auto& xa = ext_rec(arg);
          Team m = 0;
          for (uint32_t v = 0; v < X_.num_valuations(); ++v)
            if (xa[1u << v]) m |= 1u << v;
          arg_masks.push_back(m);
        }
        const auto& xh = ext_rec(f->dep_head);
        Team head_mask = 0;
        for (uint32_t v = 0; v < X_.num_valuations(); ++v)
          if (xh[1u << v]) head_mask |= 1u << v;
        for (uint32_t t = 0; t < num_teams_; ++t) {
          bool ok = true;
          auto members = team_members(t);
          for (size_t i = 0; i < members.size() && ok; ++i)
            for (size_t j = i + 1; j < members.size() && ok; ++j) {
              bool agree = true;
              for (Team m : arg_masks)
                if (((m >> members[i]) & 1) != ((m >> members[j]) & 1)) {
                  agree = false;
                  break;
                }
              if (agree && ((head_mask >> members[i]) & 1) !=
                               ((head_mask >> members[j]) & 1))
                ok = false;
            }
          e[t] = ok;
        }
        break;
      }
      default:
        throw EvalError("modal connective in propositional evaluation");
    }
    return e;
  }

  Domain X_;
  std::vector<Property> hole_args_;
  uint32_t num_teams_ = 0;
  Team full_ = 0;
  std::unordered_map<uint64_t, bool> sat_memo_;
  std::unordered_map<const FormulaNode*, detail::ExtSet> ext_memo_;
};

inline bool sat(const Formula& f, Team t, const Domain& X) {
  return PropEvaluator(X).sat(f, t);
}

inline Property extension(const Formula& f, const Domain& X) {
  return PropEvaluator(X).extension(f);
}

struct EntailmentResult {
  bool holds = true;
  std::optional<Team> witness;  // least-code failing team
};

inline EntailmentResult entails(const std::vector<Formula>& premises,
                                const Formula& f, const Domain& X) {
  PropEvaluator ev(X);
  std::vector<Property> prem;
  prem.reserve(premises.size());
  for (const auto& p : premises) prem.push_back(ev.extension(p));
  Property conc = ev.extension(f);
  for (Team t : all_teams(X)) {
    bool all = true;
    for (const auto& p : prem)
      if (!p.contains(t)) {
        all = false;
        break;
      }
    if (all && !conc.contains(t)) return {false, t};
  }
  return {true, std::nullopt};
}

inline bool equivalent(const Formula& f, const Formula& g, const Domain& X) {
  PropEvaluator ev(X);
  return ev.extension(f) == ev.extension(g);
}

}  // namespace teamlogic
