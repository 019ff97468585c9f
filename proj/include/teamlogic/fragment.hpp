// Fragment grammars: decidable membership predicates for each language.
#pragma once

#include <optional>
#include <string>

#include "teamlogic/formula.hpp"

namespace teamlogic {

enum class FragmentId {
  // classical propositional bases
  PL_or,    // p | bot | /\ | \/  | ~
  PL_lor,   // p | bot | /\ | \/. | ~
  PL_impl,  // p | bot | /\ | ->
  // downward-closed and convex propositional logics
  DEP,      // PL_or  + =(p...;p), ~ restricted to PL_or operands
  CONDEP,   // PL_lor + =(p...;p) + might, ~ restricted to PL_lor operands
  INQ,      // PL_impl + \\/
  CONINQ,   // PL_impl + \\/. + might
  PLIM,     // PL_impl + might
  PL_NE,    // PL_or + ne
  // classical modal bases
  ML_or_dia,
  ML_lor_dia,
  ML_impl_dia,
  ML_or_gdia,
  ML_lor_gdia,
  ML_impl_gdia,
  // convex modal logics (flat modalities) and the NE modal logics
  CONDEP_modal,  // ML_lor_dia + =(a...;a) over classical modal args + might
  CONINQ_modal,  // ML_impl_dia + \\/. + might
  PLIM_modal,    // ML_impl_dia + might
  ML_NE_flat,    // ML_or_dia + ne
  ML_NE_global,  // ML_or_gdia + ne
};

inline const char* fragment_name(FragmentId id) {
  switch (id) {
    case FragmentId::PL_or: return "pl_or";
    case FragmentId::PL_lor: return "pl_lor";
    case FragmentId::PL_impl: return "pl_impl";
    case FragmentId::DEP: return "dep";
    case FragmentId::CONDEP: return "condep";
    case FragmentId::INQ: return "inq";
    case FragmentId::CONINQ: return "coninq";
    case FragmentId::PLIM: return "plim";
    case FragmentId::PL_NE: return "pl_ne";
    case FragmentId::ML_or_dia: return "ml_or_dia";
    case FragmentId::ML_lor_dia: return "ml_lor_dia";
    case FragmentId::ML_impl_dia: return "ml_impl_dia";
    case FragmentId::ML_or_gdia: return "ml_or_gdia";
    case FragmentId::ML_lor_gdia: return "ml_lor_gdia";
    case FragmentId::ML_impl_gdia: return "ml_impl_gdia";
    case FragmentId::CONDEP_modal: return "condep_modal";
    case FragmentId::CONINQ_modal: return "coninq_modal";
    case FragmentId::PLIM_modal: return "plim_modal";
    case FragmentId::ML_NE_flat: return "ml_ne_flat";
    case FragmentId::ML_NE_global: return "ml_ne_global";
  }
  return "?";
}

inline std::optional<FragmentId> fragment_from_name(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(FragmentId::ML_NE_global); ++i) {
    auto id = static_cast<FragmentId>(i);
    if (s == fragment_name(id)) return id;
  }
  return std::nullopt;
}

namespace detail {

// A fragment is described by its classical basis plus the nonclassical
// extras it admits. Dep atoms take plain atoms in the propositional
// fragments and arbitrary classical-basis formulas in the modal ones.
struct FragmentSpec {
  bool allow_neg = false;        // flat ~ in the classical basis
  bool allow_vee = false;        // \/
  bool allow_dor = false;        // \/.
  bool allow_impl = false;       // ->
  bool modal_flat = false;       // dia/box
  bool modal_global = false;     // gdia/gbox
  bool neg_classical_only = false;  // ~ restricted to classical-basis operands
  bool allow_dep = false;
  bool dep_classical_args = false;  // dep args range over the classical basis
  bool allow_might = false;
  bool allow_ne = false;
  bool allow_gor = false;   // \\/
  bool allow_lgor = false;  // \\/.
};

inline FragmentSpec fragment_spec(FragmentId id) {
  FragmentSpec s;
  switch (id) {
    case FragmentId::PL_or: s.allow_neg = s.allow_vee = true; break;
    case FragmentId::PL_lor: s.allow_neg = s.allow_dor = true; break;
    case FragmentId::PL_impl: s.allow_impl = true; break;
    case FragmentId::DEP:
      s.allow_neg = s.allow_vee = true;
      s.neg_classical_only = s.allow_dep = true;
      break;
    case FragmentId::CONDEP:
      s.allow_neg = s.allow_dor = true;
      s.neg_classical_only = s.allow_dep = s.allow_might = true;
      break;
    case FragmentId::INQ: s.allow_impl = s.allow_gor = true; break;
    case FragmentId::CONINQ: s.allow_impl = s.allow_lgor = s.allow_might = true; break;
    case FragmentId::PLIM: s.allow_impl = s.allow_might = true; break;
    case FragmentId::PL_NE:
      s.allow_neg = s.allow_vee = true;
      s.neg_classical_only = s.allow_ne = true;
      break;
    case FragmentId::ML_or_dia: s.allow_neg = s.allow_vee = s.modal_flat = true; break;
    case FragmentId::ML_lor_dia: s.allow_neg = s.allow_dor = s.modal_flat = true; break;
    case FragmentId::ML_impl_dia: s.allow_impl = s.modal_flat = true; break;
    case FragmentId::ML_or_gdia: s.allow_neg = s.allow_vee = s.modal_global = true; break;
    case FragmentId::ML_lor_gdia: s.allow_neg = s.allow_dor = s.modal_global = true; break;
    case FragmentId::ML_impl_gdia: s.allow_impl = s.modal_global = true; break;
    case FragmentId::CONDEP_modal:
      s.allow_neg = s.allow_dor = s.modal_flat = true;
      s.neg_classical_only = s.allow_dep = s.dep_classical_args = s.allow_might = true;
      break;
    case FragmentId::CONINQ_modal:
      s.allow_impl = s.modal_flat = s.allow_lgor = s.allow_might = true;
      break;
    case FragmentId::PLIM_modal:
      s.allow_impl = s.modal_flat = s.allow_might = true;
      break;
    case FragmentId::ML_NE_flat:
      s.allow_neg = s.allow_vee = s.modal_flat = true;
      s.neg_classical_only = s.allow_ne = true;
      break;
    case FragmentId::ML_NE_global:
      s.allow_neg = s.allow_vee = s.modal_global = true;
      s.neg_classical_only = s.allow_ne = true;
      break;
  }
  return s;
}

// classical basis only: atoms, bot, /\, the basis disjunction or ->, ~,
// and the admitted modalities
inline bool in_classical_basis(const Formula& f, const FragmentSpec& s) {
  switch (f->kind) {
    case Kind::Atom:
    case Kind::Bot:
      return true;
    case Kind::And:
      return in_classical_basis(f->left, s) && in_classical_basis(f->right, s);
    case Kind::SplitOr:
      return s.allow_vee && in_classical_basis(f->left, s) &&
             in_classical_basis(f->right, s);
    case Kind::LaxSplitOr:
      return s.allow_dor && in_classical_basis(f->left, s) &&
             in_classical_basis(f->right, s);
    case Kind::Impl:
      return s.allow_impl && in_classical_basis(f->left, s) &&
             in_classical_basis(f->right, s);
    case Kind::Neg:
      return s.allow_neg && in_classical_basis(f->left, s);
    case Kind::Dia:
    case Kind::Box:
      return s.modal_flat && in_classical_basis(f->left, s);
    case Kind::GDia:
    case Kind::GBox:
      return s.modal_global && in_classical_basis(f->left, s);
    default:
      return false;
  }
}

inline bool in_fragment_rec(const Formula& f, const FragmentSpec& s) {
  switch (f->kind) {
    case Kind::Atom:
    case Kind::Bot:
      return true;
    case Kind::NE:
      return s.allow_ne;
    case Kind::And:
      return in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::SplitOr:
      return s.allow_vee && in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::LaxSplitOr:
      return s.allow_dor && in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::Impl:
      return s.allow_impl && in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::GlobalOr:
      return s.allow_gor && in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::LaxGlobalOr:
      return s.allow_lgor && in_fragment_rec(f->left, s) && in_fragment_rec(f->right, s);
    case Kind::Neg:
      if (!s.allow_neg) return false;
      return s.neg_classical_only ? in_classical_basis(f->left, s)
                                  : in_fragment_rec(f->left, s);
    case Kind::Might:
      return s.allow_might && in_fragment_rec(f->left, s);
    case Kind::Dep: {
      if (!s.allow_dep) return false;
      if (s.dep_classical_args) {
        for (const auto& a : f->dep_args)
          if (!in_classical_basis(a, s)) return false;
        return in_classical_basis(f->dep_head, s);
      }
      for (const auto& a : f->dep_args)
        if (a->kind != Kind::Atom) return false;
      return f->dep_head->kind == Kind::Atom;
    }
    case Kind::Dia:
    case Kind::Box:
      return s.modal_flat && in_fragment_rec(f->left, s);
    case Kind::GDia:
    case Kind::GBox:
      return s.modal_global && in_fragment_rec(f->left, s);
    case Kind::Hole:
      return false;
  }
  return false;
}

}  // namespace detail

inline bool in_fragment(const Formula& f, FragmentId id) {
  return detail::in_fragment_rec(f, detail::fragment_spec(id));
}

// Holes are admitted wherever an atom is; used by context search.
inline bool in_fragment_with_holes(const Formula& f, FragmentId id) {
  auto s = detail::fragment_spec(id);
  // Treat holes as atoms by rewriting them away would churn memory; instead
  // the recursion below mirrors in_fragment_rec with Hole accepted.
  struct Check {
    const detail::FragmentSpec& s;
    bool classical(const Formula& f) const {
      if (f->kind == Kind::Hole) return true;
      if (f->kind == Kind::Atom || f->kind == Kind::Bot) return true;
      if (f->kind == Kind::And)
        return classical(f->left) && classical(f->right);
      if (f->kind == Kind::SplitOr)
        return s.allow_vee && classical(f->left) && classical(f->right);
      if (f->kind == Kind::LaxSplitOr)
        return s.allow_dor && classical(f->left) && classical(f->right);
      if (f->kind == Kind::Impl)
        return s.allow_impl && classical(f->left) && classical(f->right);
      if (f->kind == Kind::Neg) return s.allow_neg && classical(f->left);
      if (f->kind == Kind::Dia || f->kind == Kind::Box)
        return s.modal_flat && classical(f->left);
      if (f->kind == Kind::GDia || f->kind == Kind::GBox)
        return s.modal_global && classical(f->left);
      return false;
    }
    bool full(const Formula& f) const {
      switch (f->kind) {
        case Kind::Hole:
        case Kind::Atom:
        case Kind::Bot:
          return true;
        case Kind::NE:
          return s.allow_ne;
        case Kind::And:
          return full(f->left) && full(f->right);
        case Kind::SplitOr:
          return s.allow_vee && full(f->left) && full(f->right);
        case Kind::LaxSplitOr:
          return s.allow_dor && full(f->left) && full(f->right);
        case Kind::Impl:
          return s.allow_impl && full(f->left) && full(f->right);
        case Kind::GlobalOr:
          return s.allow_gor && full(f->left) && full(f->right);
        case Kind::LaxGlobalOr:
          return s.allow_lgor && full(f->left) && full(f->right);
        case Kind::Neg:
          if (!s.allow_neg) return false;
          return s.neg_classical_only ? classical(f->left) : full(f->left);
        case Kind::Might:
          return s.allow_might && full(f->left);
        case Kind::Dep: {
          if (!s.allow_dep) return false;
          if (s.dep_classical_args) {
            for (const auto& a : f->dep_args)
              if (!classical(a)) return false;
            return classical(f->dep_head);
          }
          for (const auto& a : f->dep_args)
            if (a->kind != Kind::Atom) return false;
          return f->dep_head->kind == Kind::Atom;
        }
        case Kind::Dia:
        case Kind::Box:
          return s.modal_flat && full(f->left);
        case Kind::GDia:
        case Kind::GBox:
          return s.modal_global && full(f->left);
      }
      return false;
    }
  } check{s};
  return check.full(f);
}

}  // namespace teamlogic
