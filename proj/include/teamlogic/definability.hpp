// Contexts (formulas with holes), connectives as functions on properties,
// uniform-definability checking at a fixed domain, and bounded context search.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamlogic/closure.hpp"
#include "teamlogic/core.hpp"
#include "teamlogic/eval.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"

namespace teamlogic {

struct Context {
  Formula body;
  int arity = 0;  // holes are _1.._arity; body may skip some
};

inline Context make_context(Formula f, int arity = -1) {
  int used = max_hole_index(f);
  if (arity < 0) arity = used;
  if (used > arity) throw std::invalid_argument("context body uses holes beyond arity");
  return Context{std::move(f), arity};
}

// evaluates the body bottom-up with hole i denoting args[i-1]
inline Property apply_context(const Context& c, const std::vector<Property>& args,
                              const Domain& X) {
  if (args.size() != static_cast<size_t>(c.arity))
    throw std::invalid_argument("apply_context: arity mismatch");
  for (const auto& P : args)
    for (Team t : P.teams)
      if (!subset(t, X.full_team()))
        throw std::invalid_argument("apply_context: argument not over domain");
  PropEvaluator ev(X, args);
  return ev.extension(c.body);
}

struct PropertyFunction {
  std::string name;
  int arity = 0;
  std::function<Property(const std::vector<Property>&, const Domain&)> fn;

  Property operator()(const std::vector<Property>& args, const Domain& X) const {
    if (args.size() != static_cast<size_t>(arity))
      throw std::invalid_argument("property function: arity mismatch");
    return fn(args, X);
  }
};

// {t union s | t in P, s in Q}
inline PropertyFunction pf_split_or() {
  return {"split_or", 2, [](const std::vector<Property>& a, const Domain&) {
            Property out;
            for (Team t : a[0].teams)
              for (Team s : a[1].teams) out.insert(t | s);
            return out;
          }};
}

// plain set union
inline PropertyFunction pf_global_or() {
  return {"global_or", 2, [](const std::vector<Property>& a, const Domain&) {
            Property out = a[0];
            for (Team s : a[1].teams) out.insert(s);
            return out;
          }};
}

inline PropertyFunction pf_lax_split_or() {
  return {"lax_split_or", 2, [](const std::vector<Property>& a, const Domain&) {
            Property out;
            for (Team t : a[0].teams)
              for (Team s : a[1].teams) {
                Team u = t | s;
                for (Team sub = u;; sub = (sub - 1) & u) {
                  out.insert(sub);
                  if (sub == 0) break;
                }
              }
            return out;
          }};
}

inline PropertyFunction pf_lax_global_or() {
  // a team satisfies the lax form iff some superteam lands in either side,
  // so the denotation is the downward closure of the union
  return {"lax_global_or", 2, [](const std::vector<Property>& a, const Domain&) {
            Property out;
            for (const Property* p : {&a[0], &a[1]})
              for (Team t : p->teams)
                for (Team sub = t;; sub = (sub - 1) & t) {
                  out.insert(sub);
                  if (sub == 0) break;
                }
            return out;
          }};
}

// the nonemptiness atom as a 0-ary property function
inline PropertyFunction pf_ne() {
  return {"ne", 0, [](const std::vector<Property>&, const Domain& X) {
            Property out;
            for (Team t = 1; t <= X.full_team(); ++t) out.insert(t);
            return out;
          }};
}

inline PropertyFunction pf_from_context(Context c, std::string name) {
  int arity = c.arity;
  return {std::move(name), arity,
          [c = std::move(c)](const std::vector<Property>& a, const Domain& X) {
            return apply_context(c, a, X);
          }};
}

// a single connective node lifted to properties via its extension semantics
inline PropertyFunction pf_connective(Kind k) {
  switch (k) {
    case Kind::And: return pf_from_context(make_context(f_and(make_hole(1), make_hole(2))), "and");
    case Kind::SplitOr:
      return pf_from_context(make_context(f_vee(make_hole(1), make_hole(2))), "split_or");
    case Kind::LaxSplitOr:
      return pf_from_context(make_context(f_dor(make_hole(1), make_hole(2))), "lax_split_or");
    case Kind::Impl:
      return pf_from_context(make_context(f_impl(make_hole(1), make_hole(2))), "impl");
    case Kind::GlobalOr:
      return pf_from_context(make_context(f_gor(make_hole(1), make_hole(2))), "global_or");
    case Kind::LaxGlobalOr:
      return pf_from_context(make_context(f_lgor(make_hole(1), make_hole(2))), "lax_global_or");
    case Kind::Neg: return pf_from_context(make_context(f_neg(make_hole(1))), "neg");
    case Kind::Might: return pf_from_context(make_context(f_might(make_hole(1))), "might");
    case Kind::NE: return pf_from_context(make_context(f_ne(), 0), "ne");
    default: throw std::invalid_argument("pf_connective: unsupported node");
  }
}

// every property in the class, ascending by bitmask over the team lattice
inline std::vector<Property> class_members(PropertyClass cls, const Domain& X) {
  if (X.size() > 2) throw std::invalid_argument("class_members: domain too large");
  std::vector<Property> out;
  const uint64_t num_props = uint64_t{1} << X.num_teams();
  for (uint64_t mask = 0; mask < num_props; ++mask) {
    Property P = Property::from_mask(mask, X.num_teams());
    if (in_class(P, cls, X)) out.push_back(std::move(P));
  }
  return out;
}

struct UniformResult {
  bool ok = true;
  std::vector<Property> witness;  // first failing argument tuple
  Property expected;              // the property function's output there
  Property got;                   // the context's output there
};

// theta matches the property function on every argument tuple drawn from the
// class. A fixed-domain pass is evidence only; a failure is a refutation.
inline UniformResult check_uniform(const Context& theta, const PropertyFunction& fn,
                                   PropertyClass cls, const Domain& X) {
  if (theta.arity > fn.arity)
    throw std::invalid_argument("check_uniform: context arity exceeds function arity");
  Context padded{theta.body, fn.arity};
  std::vector<Property> members = class_members(cls, X);
  std::vector<size_t> idx(static_cast<size_t>(fn.arity), 0);
  UniformResult res;
  if (fn.arity == 0) {
    Property want = fn({}, X), have = apply_context(padded, {}, X);
    if (!(want == have)) res = {false, {}, std::move(want), std::move(have)};
    return res;
  }
  if (members.empty()) return res;
  while (true) {
    std::vector<Property> args;
    for (size_t i : idx) args.push_back(members[i]);
    Property want = fn(args, X);
    Property have = apply_context(padded, args, X);
    if (!(want == have)) {
      res = {false, std::move(args), std::move(want), std::move(have)};
      return res;
    }
    // odometer, last argument fastest
    size_t i = idx.size();
    while (i > 0) {
      --i;
      if (++idx[i] < members.size()) break;
      idx[i] = 0;
      if (i == 0) return res;
    }
  }
}

namespace detail {

// candidate context bodies of each exact depth, deterministic order: leaves
// (holes ascending, bot, domain atoms, constancy atoms), then for each depth
// every operator in a fixed order over shallower bodies, left index major
inline std::vector<Formula> context_leaves(int arity, const Domain& X,
                                           const FragmentSpec& s) {
  std::vector<Formula> out;
  for (int i = 1; i <= arity; ++i) out.push_back(make_hole(i));
  out.push_back(f_bot());
  for (const auto& p : X.atoms) out.push_back(make_atom(p));
  if (s.allow_ne) out.push_back(f_ne());
  // dependence atoms enter the search as constancy atoms only
  if (s.allow_dep)
    for (const auto& p : X.atoms) out.push_back(make_dep({}, make_atom(p)));
  return out;
}

}  // namespace detail

struct SearchOptions {
  size_t max_candidates = 200000;
};

// First context (in the documented enumeration order, bounded by tree depth
// and candidate count) whose check_uniform passes; nullopt if none in bounds.
inline std::optional<Context> search_context(const PropertyFunction& fn,
                                             PropertyClass cls, const Domain& X,
                                             FragmentId signature, int max_depth,
                                             SearchOptions opt = {}) {
  auto s = detail::fragment_spec(signature);
  std::vector<Property> members = class_members(cls, X);
  // cheap prescreen tuples: extreme members only, full check afterwards
  std::vector<size_t> probe;
  if (!members.empty()) {
    probe.push_back(0);
    if (members.size() > 1) probe.push_back(members.size() - 1);
    if (members.size() > 2) probe.push_back(members.size() / 2);
  }
  auto passes = [&](const Formula& body) {
    if (max_hole_index(body) > fn.arity) return false;
    if (!in_fragment_with_holes(body, signature)) return false;
    Context c{body, fn.arity};
    if (fn.arity > 0 && !members.empty()) {
      std::vector<size_t> idx(static_cast<size_t>(fn.arity), 0);
      for (size_t p : probe) {
        std::fill(idx.begin(), idx.end(), p);
        std::vector<Property> args;
        for (size_t i : idx) args.push_back(members[i]);
        try {
          if (!(fn(args, X) == apply_context(c, args, X))) return false;
        } catch (const std::exception&) {
          return false;
        }
      }
    }
    try {
      return check_uniform(c, fn, cls, X).ok;
    } catch (const std::exception&) {
      return false;
    }
  };

  std::vector<std::vector<Formula>> by_depth;
  by_depth.push_back(detail::context_leaves(fn.arity, X, s));
  size_t seen = 0;
  for (int d = 0; d <= max_depth; ++d) {
    if (d > 0) {
      // bodies of exact depth d: some child has depth d-1
      std::vector<Formula> level;
      std::vector<Formula> shallower;  // depth <= d-2
      for (int k = 0; k + 2 <= d; ++k)
        shallower.insert(shallower.end(), by_depth[k].begin(), by_depth[k].end());
      const auto& prev = by_depth[d - 1];
      auto emit_unary = [&](auto make) {
        for (const auto& a : prev) level.push_back(make(a));
      };
      auto emit_binary = [&](auto make) {
        for (const auto& a : prev) {
          for (const auto& b : prev) level.push_back(make(a, b));
          for (const auto& b : shallower) {
            level.push_back(make(a, b));
            level.push_back(make(b, a));
          }
        }
      };
      if (s.allow_neg) emit_unary([](Formula a) { return f_neg(std::move(a)); });
      if (s.allow_might) emit_unary([](Formula a) { return f_might(std::move(a)); });
      emit_binary([](Formula a, Formula b) { return f_and(std::move(a), std::move(b)); });
      if (s.allow_vee)
        emit_binary([](Formula a, Formula b) { return f_vee(std::move(a), std::move(b)); });
      if (s.allow_dor)
        emit_binary([](Formula a, Formula b) { return f_dor(std::move(a), std::move(b)); });
      if (s.allow_impl)
        emit_binary([](Formula a, Formula b) { return f_impl(std::move(a), std::move(b)); });
      if (s.allow_gor)
        emit_binary([](Formula a, Formula b) { return f_gor(std::move(a), std::move(b)); });
      if (s.allow_lgor)
        emit_binary([](Formula a, Formula b) { return f_lgor(std::move(a), std::move(b)); });
      by_depth.push_back(std::move(level));
    }
    for (const auto& body : by_depth[d]) {
      if (++seen > opt.max_candidates) return std::nullopt;
      if (passes(body)) return Context{body, fn.arity};
    }
  }
  return std::nullopt;
}

}  // namespace teamlogic
