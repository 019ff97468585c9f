// Formula AST for propositional and modal team logics.
//
// All connectives of every language live in one node type; fragment
// membership is checked separately (see fragment.hpp). Formulas are
// immutable and shared via shared_ptr, so structural sharing between
// synthesized formulas is free.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamlogic {

enum class Kind {
  Atom,
  Hole,
  Bot,
  NE,
  Neg,          // flat negation "~"
  And,          // "/\ "
  SplitOr,      // "\/"
  LaxSplitOr,   // "\/."
  Impl,         // "->"
  GlobalOr,     // \\/
  LaxGlobalOr,  // \\/.
  Might,        // might
  Dep,          // =(a1,...,an; a)
  Dia,          // dia   (flat diamond)
  Box,          // box   (flat box)
  GDia,         // gdia  (global diamond)
  GBox,         // gbox  (global box)
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Kind kind;
  std::string name;             // Atom
  int hole_index = 0;           // Hole, 1-based
  Formula left, right;          // unary ops use left only
  std::vector<Formula> dep_args;
  Formula dep_head;
};

inline Formula make_atom(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  return n;
}

inline Formula make_hole(int index) {
  if (index < 1) throw std::invalid_argument("hole index must be positive");
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Hole;
  n->hole_index = index;
  return n;
}

inline Formula make_nullary(Kind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

inline Formula make_unary(Kind k, Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->left = std::move(f);
  return n;
}

inline Formula make_binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

inline Formula make_dep(std::vector<Formula> args, Formula head) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Dep;
  n->dep_args = std::move(args);
  n->dep_head = std::move(head);
  return n;
}

inline Formula f_bot() { return make_nullary(Kind::Bot); }
inline Formula f_ne() { return make_nullary(Kind::NE); }
inline Formula f_neg(Formula f) { return make_unary(Kind::Neg, std::move(f)); }
inline Formula f_and(Formula a, Formula b) { return make_binary(Kind::And, std::move(a), std::move(b)); }
inline Formula f_vee(Formula a, Formula b) { return make_binary(Kind::SplitOr, std::move(a), std::move(b)); }
inline Formula f_dor(Formula a, Formula b) { return make_binary(Kind::LaxSplitOr, std::move(a), std::move(b)); }
inline Formula f_impl(Formula a, Formula b) { return make_binary(Kind::Impl, std::move(a), std::move(b)); }
inline Formula f_gor(Formula a, Formula b) { return make_binary(Kind::GlobalOr, std::move(a), std::move(b)); }
inline Formula f_lgor(Formula a, Formula b) { return make_binary(Kind::LaxGlobalOr, std::move(a), std::move(b)); }
inline Formula f_might(Formula f) { return make_unary(Kind::Might, std::move(f)); }
inline Formula f_dia(Formula f) { return make_unary(Kind::Dia, std::move(f)); }
inline Formula f_box(Formula f) { return make_unary(Kind::Box, std::move(f)); }
inline Formula f_gdia(Formula f) { return make_unary(Kind::GDia, std::move(f)); }
inline Formula f_gbox(Formula f) { return make_unary(Kind::GBox, std::move(f)); }

// top := ~bot; the -> bases spell it bot -> bot instead (see synth.hpp).
inline Formula f_top() { return f_neg(f_bot()); }
// nbot := might bot
inline Formula f_nbot() { return f_might(f_bot()); }

inline bool is_unary(Kind k) {
  switch (k) {
    case Kind::Neg:
    case Kind::Might:
    case Kind::Dia:
    case Kind::Box:
    case Kind::GDia:
    case Kind::GBox:
      return true;
    default:
      return false;
  }
}

inline bool is_binary(Kind k) {
  switch (k) {
    case Kind::And:
    case Kind::SplitOr:
    case Kind::LaxSplitOr:
    case Kind::Impl:
    case Kind::GlobalOr:
    case Kind::LaxGlobalOr:
      return true;
    default:
      return false;
  }
}

inline bool is_disjunction(Kind k) {
  return k == Kind::SplitOr || k == Kind::LaxSplitOr || k == Kind::GlobalOr ||
         k == Kind::LaxGlobalOr;
}

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Atom:
      return a->name == b->name;
    case Kind::Hole:
      return a->hole_index == b->hole_index;
    case Kind::Bot:
    case Kind::NE:
      return true;
    case Kind::Dep: {
      if (a->dep_args.size() != b->dep_args.size()) return false;
      for (size_t i = 0; i < a->dep_args.size(); ++i)
        if (!structurally_equal(a->dep_args[i], b->dep_args[i])) return false;
      return structurally_equal(a->dep_head, b->dep_head);
    }
    default:
      if (is_unary(a->kind)) return structurally_equal(a->left, b->left);
      return structurally_equal(a->left, b->left) &&
             structurally_equal(a->right, b->right);
  }
}

inline bool contains_kind(const Formula& f, Kind k) {
  if (f->kind == k) return true;
  switch (f->kind) {
    case Kind::Dep:
      for (const auto& a : f->dep_args)
        if (contains_kind(a, k)) return true;
      return contains_kind(f->dep_head, k);
    default:
      if (is_unary(f->kind)) return contains_kind(f->left, k);
      if (is_binary(f->kind))
        return contains_kind(f->left, k) || contains_kind(f->right, k);
      return false;
  }
}

inline bool contains_hole(const Formula& f) { return contains_kind(f, Kind::Hole); }

inline int max_hole_index(const Formula& f) {
  int m = 0;
  if (f->kind == Kind::Hole) m = f->hole_index;
  if (f->kind == Kind::Dep) {
    for (const auto& a : f->dep_args) m = std::max(m, max_hole_index(a));
    m = std::max(m, max_hole_index(f->dep_head));
  } else if (is_unary(f->kind)) {
    m = std::max(m, max_hole_index(f->left));
  } else if (is_binary(f->kind)) {
    m = std::max(m, max_hole_index(f->left));
    m = std::max(m, max_hole_index(f->right));
  }
  return m;
}

inline void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f->kind) {
    case Kind::Atom:
      out.push_back(f->name);
      break;
    case Kind::Dep:
      for (const auto& a : f->dep_args) collect_atoms(a, out);
      collect_atoms(f->dep_head, out);
      break;
    default:
      if (is_unary(f->kind)) collect_atoms(f->left, out);
      if (is_binary(f->kind)) {
        collect_atoms(f->left, out);
        collect_atoms(f->right, out);
      }
  }
}

inline bool is_modal(const Formula& f) {
  return contains_kind(f, Kind::Dia) || contains_kind(f, Kind::Box) ||
         contains_kind(f, Kind::GDia) || contains_kind(f, Kind::GBox);
}

// ---------------------------------------------------------------------------
// Printing. Precedence, tightest first: unary; /\; the four disjunctions at
// one shared level (mixing flavors always requires parentheses); -> loosest,
// right-associative.

namespace detail {

inline int precedence(Kind k) {
  if (is_unary(k)) return 4;
  if (k == Kind::And) return 3;
  if (is_disjunction(k)) return 2;
  if (k == Kind::Impl) return 1;
  return 5;  // atoms and nullaries
}

inline const char* op_token(Kind k) {
  switch (k) {
    case Kind::Neg: return "~";
    case Kind::Might: return "might";
    case Kind::Dia: return "dia";
    case Kind::Box: return "box";
    case Kind::GDia: return "gdia";
    case Kind::GBox: return "gbox";
    case Kind::And: return "/\\";
    case Kind::SplitOr: return "\\/";
    case Kind::LaxSplitOr: return "\\/.";
    case Kind::GlobalOr: return "\\\\/";
    case Kind::LaxGlobalOr: return "\\\\/.";
    case Kind::Impl: return "->";
    default: return "?";
  }
}

inline void print_rec(const Formula& f, std::string& out, int parent_prec,
                      Kind parent_kind, bool right_child) {
  const int prec = precedence(f->kind);
  bool parens = prec < parent_prec;
  if (!parens && prec == parent_prec && is_binary(f->kind)) {
    if (f->kind == Kind::Impl) {
      // right-associative: parenthesize when appearing as a left child
      parens = !right_child;
    } else if (is_disjunction(f->kind)) {
      // same flavor associates to the left; different flavors need parens
      parens = f->kind != parent_kind || right_child;
    } else {  // And, left-associative
      parens = f->kind != parent_kind || right_child;
    }
  }
  if (parens) out += '(';
  switch (f->kind) {
    case Kind::Atom:
      out += f->name;
      break;
    case Kind::Hole:
      out += '_';
      out += std::to_string(f->hole_index);
      break;
    case Kind::Bot:
      out += "bot";
      break;
    case Kind::NE:
      out += "ne";
      break;
    case Kind::Dep: {
      out += "=(";
      for (size_t i = 0; i < f->dep_args.size(); ++i) {
        if (i) out += ", ";
        print_rec(f->dep_args[i], out, 0, f->kind, false);
      }
      if (!f->dep_args.empty()) out += "; ";
      print_rec(f->dep_head, out, 0, f->kind, false);
      out += ')';
      break;
    }
    default:
      if (is_unary(f->kind)) {
        out += op_token(f->kind);
        if (f->kind != Kind::Neg) out += ' ';
        print_rec(f->left, out, prec, f->kind, false);
      } else {
        print_rec(f->left, out, prec, f->kind, false);
        out += ' ';
        out += op_token(f->kind);
        out += ' ';
        print_rec(f->right, out, prec, f->kind, true);
      }
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_rec(f, out, 0, f->kind, false);
  return out;
}

}  // namespace teamlogic
