// Closure-property checking for finite team properties, plus seeded random
// property and formula generators for fuzzing.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "teamlogic/core.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"

namespace teamlogic {

enum class PropertyClass { A, C, CU, DE, U, F };

inline const char* class_name(PropertyClass c) {
  switch (c) {
    case PropertyClass::A: return "a";
    case PropertyClass::C: return "c";
    case PropertyClass::CU: return "cu";
    case PropertyClass::DE: return "de";
    case PropertyClass::U: return "u";
    case PropertyClass::F: return "f";
  }
  return "?";
}

struct ConvexityWitness {
  Team low, mid, high;  // low, high in P; low <= mid <= high; mid missing
};

struct ClosureReport {
  bool downward = true;
  bool upward = true;
  bool convex = true;
  bool union_closed = true;
  bool empty_team = false;
  bool flat = false;
  bool downward_mod_empty = true;
  // derived: convex and union closed (Tritschler's partial union property)
  bool partial_union = false;

  std::optional<std::pair<Team, Team>> downward_witness;  // (t in P, s subset not in P)
  std::optional<std::pair<Team, Team>> upward_witness;
  std::optional<ConvexityWitness> convex_witness;
  std::optional<std::pair<Team, Team>> union_witness;  // (t, s) in P, union missing
};

// All flags exact; witnesses are the first failures in ascending mask order,
// convexity scanning (low, mid, high) lexicographically. The lattice is the
// powerset of `full`, so this works for modal teams over worlds as well.
inline ClosureReport check_closure(const Property& P, Team full) {
  ClosureReport r;
  for (Team t : P.teams)
    if (!subset(t, full)) throw std::invalid_argument("property not over lattice");

  r.empty_team = P.contains(0);

  for (Team t : P.teams) {
    for (Team s = t;; s = (s - 1) & t) {
      if (!P.contains(s)) {
        if (r.downward) {
          r.downward = false;
          r.downward_witness = {t, s};
        }
        if (s != 0 && r.downward_mod_empty) {
          r.downward_mod_empty = false;
        }
      }
      if (s == 0) break;
    }
    if (!r.downward && !r.downward_mod_empty) break;
  }

  for (Team t : P.teams) {
    Team room = full & ~t;
    bool done = false;
    for (Team extra = room;; extra = (extra - 1) & room) {
      if (!P.contains(t | extra)) {
        r.upward = false;
        r.upward_witness = {t, t | extra};
        done = true;
        break;
      }
      if (extra == 0) break;
    }
    if (done) break;
  }

  // lexicographically least failing (low, mid, high)
  [&] {
    for (Team low : P.teams) {
      Team room = full & ~low;
      // mids ascending: mid = low | extra for extra subset of room
      std::vector<Team> mids;
      for (Team extra = room;; extra = (extra - 1) & room) {
        mids.push_back(low | extra);
        if (extra == 0) break;
      }
      std::sort(mids.begin(), mids.end());
      for (Team mid : mids) {
        if (P.contains(mid)) continue;
        for (Team high : P.teams)
          if (subset(mid, high)) {
            r.convex = false;
            r.convex_witness = ConvexityWitness{low, mid, high};
            return;
          }
      }
    }
  }();

  for (Team t : P.teams) {
    for (Team s : P.teams)
      if (!P.contains(t | s)) {
        r.union_closed = false;
        r.union_witness = {std::min(t, s), std::max(t, s)};
        break;
      }
    if (!r.union_closed) break;
  }

  r.flat = r.downward && r.union_closed && r.empty_team;
  r.partial_union = r.convex && r.union_closed;
  return r;
}

inline ClosureReport check_closure(const Property& P, const Domain& X) {
  return check_closure(P, X.full_team());
}

inline bool in_class(const Property& P, PropertyClass cls, const Domain& X) {
  ClosureReport r = check_closure(P, X);
  switch (cls) {
    case PropertyClass::A: return true;
    case PropertyClass::C: return r.convex;
    case PropertyClass::CU: return r.convex && r.union_closed;
    case PropertyClass::DE: return r.downward && r.empty_team;
    case PropertyClass::U: return r.upward;
    case PropertyClass::F: return r.flat;
  }
  return false;
}

namespace detail {

// complete P to convexity by filling every gap between members
inline void convex_fill(Property& P) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Team> add;
    for (Team low : P.teams)
      for (Team high : P.teams) {
        if (!subset(low, high)) continue;
        Team room = high & ~low;
        for (Team extra = room;; extra = (extra - 1) & room) {
          Team mid = low | extra;
          if (!P.contains(mid)) add.push_back(mid);
          if (extra == 0) break;
        }
      }
    if (!add.empty()) {
      for (Team t : add) P.insert(t);
      changed = true;
    }
  }
}

inline void union_fill(Property& P) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Team> add;
    for (Team t : P.teams)
      for (Team s : P.teams)
        if (!P.contains(t | s)) add.push_back(t | s);
    if (!add.empty()) {
      for (Team t : add) P.insert(t);
      changed = true;
    }
  }
}

}  // namespace detail

// A seeded random property guaranteed (and checked) to lie in cls.
// Convex properties are built as unions of intervals completed to convexity;
// CU additionally alternates union- and gap-filling until both hold.
inline Property random_property(const Domain& X, PropertyClass cls, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Team full = X.full_team();
  std::uniform_int_distribution<Team> team_dist(0, full);
  std::uniform_int_distribution<int> count_dist(0, 3);

  Property P;
  switch (cls) {
    case PropertyClass::A: {
      int k = count_dist(rng) + count_dist(rng);
      for (int i = 0; i < k; ++i) P.insert(team_dist(rng));
      break;
    }
    case PropertyClass::C: {
      int k = 1 + count_dist(rng);
      for (int i = 0; i < k; ++i) {
        Team a = team_dist(rng), b = team_dist(rng);
        Team low = a & b, high = a | b;
        Team room = high & ~low;
        for (Team extra = room;; extra = (extra - 1) & room) {
          P.insert(low | extra);
          if (extra == 0) break;
        }
      }
      detail::convex_fill(P);
      break;
    }
    case PropertyClass::CU: {
      int k = 1 + count_dist(rng);
      for (int i = 0; i < k; ++i) P.insert(team_dist(rng));
      detail::union_fill(P);
      detail::convex_fill(P);
      detail::union_fill(P);
      detail::convex_fill(P);
      break;
    }
    case PropertyClass::DE: {
      int k = 1 + count_dist(rng);
      for (int i = 0; i < k; ++i) {
        Team top = team_dist(rng);
        for (Team s = top;; s = (s - 1) & top) {
          P.insert(s);
          if (s == 0) break;
        }
      }
      P.insert(0);
      break;
    }
    case PropertyClass::U: {
      int k = 1 + count_dist(rng);
      for (int i = 0; i < k; ++i) {
        Team bottom = team_dist(rng);
        Team room = full & ~bottom;
        for (Team extra = room;; extra = (extra - 1) & room) {
          P.insert(bottom | extra);
          if (extra == 0) break;
        }
      }
      break;
    }
    case PropertyClass::F: {
      Team u = team_dist(rng);
      for (Team s = u;; s = (s - 1) & u) {
        P.insert(s);
        if (s == 0) break;
      }
      break;
    }
  }
  if (!in_class(P, cls, X))
    throw std::logic_error("random_property produced a property outside its class");
  return P;
}

// ---------------------------------------------------------------------------
// Random formula generation, grammar-directed per fragment.

struct FormulaGenOptions {
  int max_depth = 5;
  bool might_as_ne = false;  // swap might for ne (the NE-variant logics)
};

namespace detail {

inline Formula random_classical(const FragmentSpec& s, const Domain& X,
                                std::mt19937_64& rng, int depth);

inline Formula random_atom(const Domain& X, std::mt19937_64& rng) {
  if (X.size() == 0) return f_bot();
  std::uniform_int_distribution<size_t> d(0, X.size() - 1);
  return make_atom(X.atoms[d(rng)]);
}

inline Formula random_classical(const FragmentSpec& s, const Domain& X,
                                std::mt19937_64& rng, int depth) {
  std::vector<int> prods = {0, 1};  // atom, bot
  if (depth > 0) {
    prods.push_back(2);  // and
    if (s.allow_vee) prods.push_back(3);
    if (s.allow_dor) prods.push_back(4);
    if (s.allow_impl) prods.push_back(5);
    if (s.allow_neg) prods.push_back(6);
    if (s.modal_flat || s.modal_global) {
      prods.push_back(7);
      prods.push_back(8);
    }
    // bias toward atoms so formulas stay short on average
    prods.push_back(0);
    prods.push_back(0);
  }
  std::uniform_int_distribution<size_t> d(0, prods.size() - 1);
  switch (prods[d(rng)]) {
    case 0: return random_atom(X, rng);
    case 1: return f_bot();
    case 2: return f_and(random_classical(s, X, rng, depth - 1),
                         random_classical(s, X, rng, depth - 1));
    case 3: return f_vee(random_classical(s, X, rng, depth - 1),
                         random_classical(s, X, rng, depth - 1));
    case 4: return f_dor(random_classical(s, X, rng, depth - 1),
                         random_classical(s, X, rng, depth - 1));
    case 5: return f_impl(random_classical(s, X, rng, depth - 1),
                          random_classical(s, X, rng, depth - 1));
    case 6: return f_neg(random_classical(s, X, rng, depth - 1));
    case 7: return s.modal_flat ? f_dia(random_classical(s, X, rng, depth - 1))
                                : f_gdia(random_classical(s, X, rng, depth - 1));
    default: return s.modal_flat ? f_box(random_classical(s, X, rng, depth - 1))
                                 : f_gbox(random_classical(s, X, rng, depth - 1));
  }
}

inline Formula random_in_spec(const FragmentSpec& s, const Domain& X,
                              std::mt19937_64& rng, int depth, bool might_as_ne) {
  std::vector<int> prods = {0, 1};
  if (s.allow_ne) prods.push_back(9);
  if (s.allow_dep) prods.push_back(10);
  if (depth > 0) {
    prods.push_back(2);
    if (s.allow_vee) prods.push_back(3);
    if (s.allow_dor) prods.push_back(4);
    if (s.allow_impl) prods.push_back(5);
    if (s.allow_neg) prods.push_back(6);
    if (s.modal_flat || s.modal_global) {
      prods.push_back(7);
      prods.push_back(8);
    }
    if (s.allow_might) prods.push_back(11);
    if (s.allow_gor) prods.push_back(12);
    if (s.allow_lgor) prods.push_back(13);
    prods.push_back(0);
    prods.push_back(0);
  }
  std::uniform_int_distribution<size_t> d(0, prods.size() - 1);
  auto sub = [&](int dd) { return random_in_spec(s, X, rng, dd, might_as_ne); };
  switch (prods[d(rng)]) {
    case 0: return random_atom(X, rng);
    case 1: return f_bot();
    case 2: return f_and(sub(depth - 1), sub(depth - 1));
    case 3: return f_vee(sub(depth - 1), sub(depth - 1));
    case 4: return f_dor(sub(depth - 1), sub(depth - 1));
    case 5: return f_impl(sub(depth - 1), sub(depth - 1));
    case 6:
      return f_neg(s.neg_classical_only ? random_classical(s, X, rng, depth - 1)
                                        : sub(depth - 1));
    case 7: return s.modal_flat ? f_dia(sub(depth - 1)) : f_gdia(sub(depth - 1));
    case 8: return s.modal_flat ? f_box(sub(depth - 1)) : f_gbox(sub(depth - 1));
    case 9: return f_ne();
    case 10: {
      if (X.size() == 0) return f_bot();
      std::uniform_int_distribution<int> nargs(0, 2);
      int k = nargs(rng);
      std::vector<Formula> args;
      for (int i = 0; i < k; ++i)
        args.push_back(s.dep_classical_args
                           ? random_classical(s, X, rng, std::max(0, depth - 1))
                           : random_atom(X, rng));
      Formula head = s.dep_classical_args
                         ? random_classical(s, X, rng, std::max(0, depth - 1))
                         : random_atom(X, rng);
      return make_dep(std::move(args), std::move(head));
    }
    case 11: return might_as_ne ? f_ne() : f_might(sub(depth - 1));
    case 12: return f_gor(sub(depth - 1), sub(depth - 1));
    default: return f_lgor(sub(depth - 1), sub(depth - 1));
  }
}

}  // namespace detail

inline Formula random_formula(FragmentId frag, const Domain& X, uint64_t seed,
                              FormulaGenOptions opt = {}) {
  std::mt19937_64 rng(seed);
  auto spec = detail::fragment_spec(frag);
  return detail::random_in_spec(spec, X, rng, opt.max_depth, opt.might_as_ne);
}

}  // namespace teamlogic
