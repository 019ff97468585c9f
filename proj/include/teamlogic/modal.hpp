// Kripke models, modal teams, the successor-team relation, and the modal
// evaluator. Teams are bitmasks over world indices.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "teamlogic/core.hpp"
#include "teamlogic/eval.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<Team> succ;                // succ[w] = R[w] as a mask
  std::map<std::string, Team> valuation;  // atom -> set of worlds

  KripkeModel(std::vector<std::string> ws, std::vector<std::pair<int, int>> edges,
              std::map<std::string, Team> val)
      : worlds(std::move(ws)), valuation(std::move(val)) {
    if (worlds.empty()) throw std::invalid_argument("model needs a nonempty world set");
    if (worlds.size() > 24) throw std::invalid_argument("too many worlds");
    succ.assign(worlds.size(), 0);
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= static_cast<int>(worlds.size()) ||
          b >= static_cast<int>(worlds.size()))
        throw std::invalid_argument("edge endpoint out of range");
      succ[a] |= 1u << b;
    }
    for (auto& [atom, mask] : valuation)
      if (mask & ~full_team()) throw std::invalid_argument("valuation outside world set");
  }

  size_t num_worlds() const { return worlds.size(); }
  Team full_team() const {
    return worlds.size() == 32 ? 0xffffffffu : (1u << worlds.size()) - 1;
  }

  int world_index(const std::string& name) const {
    for (size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == name) return static_cast<int>(i);
    return -1;
  }

  Team image(Team t) const {  // R[t]
    Team r = 0;
    for (Valuation w : team_members(t)) r |= succ[w];
    return r;
  }

  Team preimage(Team t) const {  // R^{-1}[t]
    Team r = 0;
    for (size_t w = 0; w < worlds.size(); ++w)
      if (succ[w] & t) r |= 1u << w;
    return r;
  }

  // tRs: s <= R[t] and t <= R^{-1}[s]
  bool successor_team(Team t, Team s) const {
    return subset(s, image(t)) && subset(t, preimage(s));
  }
};

inline std::vector<Team> successors(const KripkeModel& M, Team t) {
  Team img = M.image(t);
  if (team_size(img) > 20) throw std::invalid_argument("successor frontier too large");
  std::vector<Team> out;
  for (Team s = img;; s = (s - 1) & img) {
    if (subset(t, M.preimage(s))) out.push_back(s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

class ModalEvaluator {
 public:
  explicit ModalEvaluator(const KripkeModel& M) : M_(M) {
    num_teams_ = uint32_t{1} << M_.num_worlds();
    full_ = M_.full_team();
  }

  bool sat(const Formula& f, Team t) {
    if (!subset(t, full_)) throw EvalError("team not over the world set");
    return sat_rec(f, t);
  }

  Property extension(const Formula& f) {
    if (M_.num_worlds() > 5) throw EvalError("too many worlds for exhaustive teams");
    Property p;
    for (uint32_t t = 0; t < num_teams_; ++t)
      if (sat_rec(f, t)) p.teams.push_back(t);
    return p;
  }

 private:
  bool singleton_sat(const Formula& f, int w) { return sat_rec(f, 1u << w); }

  Team atom_mask(const Formula& f) {
    auto it = M_.valuation.find(f->name);
    if (it == M_.valuation.end()) throw EvalError("atom '" + f->name + "' not valued in model");
    return it->second;
  }

  bool sat_rec(const Formula& f, Team t) {
    uint64_t key = (reinterpret_cast<uintptr_t>(f.get()) << 16) ^ t;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = sat_eval(f, t);
    memo_.emplace(key, r);
    return r;
  }

  bool sat_eval(const Formula& f, Team t) {
    switch (f->kind) {
      case Kind::Atom:
        return subset(t, atom_mask(f));
      case Kind::Bot:
        return t == 0;
      case Kind::NE:
        return t != 0;
      case Kind::Neg: {
        for (Valuation w : team_members(t))
          if (singleton_sat(f->left, static_cast<int>(w))) return false;
        return true;
      }
      case Kind::And:
        return sat_rec(f->left, t) && sat_rec(f->right, t);
      case Kind::SplitOr: {
        if (team_size(t) > 12) throw EvalError("team too large for direct split-disjunction");
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
            bool agree = true;
            for (const auto& arg : f->dep_args)
              if (singleton_sat(arg, members[a]) != singleton_sat(arg, members[b])) {
                agree = false;
                break;
              }
            if (agree && singleton_sat(f->dep_head, members[a]) !=
                             singleton_sat(f->dep_head, members[b]))
              return false;
          }
        return true;
      }
      case Kind::Dia: {
        for (Valuation w : team_members(t)) {
          Team reach = M_.succ[w];
          bool found = false;
          for (Team s = reach; s; s = (s - 1) & reach)
            if (sat_rec(f->left, s)) {
              found = true;
              break;
            }
          if (!found) return false;
        }
        return true;
      }
      case Kind::Box: {
        for (Valuation w : team_members(t))
          if (!sat_rec(f->left, M_.succ[w])) return false;
        return true;
      }
      case Kind::GDia: {
        Team img = M_.image(t);
        for (Team s = img;; s = (s - 1) & img) {
          if (subset(t, M_.preimage(s)) && sat_rec(f->left, s)) return true;
          if (s == 0) break;
        }
        return false;
      }
      case Kind::GBox:
        return sat_rec(f->left, M_.image(t));
      case Kind::Hole:
        throw EvalError("context hole in modal evaluation");
    }
    throw EvalError("unreachable");
  }

  const KripkeModel& M_;
  uint32_t num_teams_;
  Team full_;
  std::unordered_map<uint64_t, bool> memo_;
};

inline bool msat(const Formula& f, const KripkeModel& M, Team t) {
  return ModalEvaluator(M).sat(f, t);
}

inline Property mextension(const Formula& f, const KripkeModel& M) {
  return ModalEvaluator(M).extension(f);
}

// The three-world fixture from the global-diamond non-convexity argument:
// w_pr, w_pnr, w_npr, all reflexive, plus an edge w_npr -> w_pnr.
inline KripkeModel global_diamond_fixture() {
  return KripkeModel({"w_pr", "w_pnr", "w_npr"},
                     {{0, 0}, {1, 1}, {2, 2}, {2, 1}},
                     {{"p", 0b011}, {"r", 0b101}});
}

}  // namespace teamlogic
