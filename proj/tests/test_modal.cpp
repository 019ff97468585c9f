#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "teamlogic/closure.hpp"
#include "teamlogic/modal.hpp"
#include "teamlogic/parser.hpp"

using namespace teamlogic;

namespace {

// blunt reference evaluator over a model, straight off the clauses
bool ref_msat(const Formula& f, const KripkeModel& M, Team t) {
  const Team full = M.full_team();
  switch (f->kind) {
    case Kind::Atom: {
      auto it = M.valuation.find(f->name);
      Team good = it == M.valuation.end() ? 0 : it->second;
      return subset(t, good);
    }
    case Kind::Bot: return t == 0;
    case Kind::NE: return t != 0;
    case Kind::Neg:
      for (Valuation w : team_members(t))
        if (ref_msat(f->left, M, Team{1} << w)) return false;
      return true;
    case Kind::And: return ref_msat(f->left, M, t) && ref_msat(f->right, M, t);
    case Kind::SplitOr:
      for (Team s = 0; s <= t; ++s)
        for (Team u = 0; u <= t; ++u)
          if ((s | u) == t && ref_msat(f->left, M, s) && ref_msat(f->right, M, u))
            return true;
      return false;
    case Kind::LaxSplitOr:
      for (Team s = 0; s <= full; ++s)
        for (Team u = 0; u <= full; ++u)
          if (subset(t, s | u) && ref_msat(f->left, M, s) && ref_msat(f->right, M, u))
            return true;
      return false;
    case Kind::Impl:
      for (Team s = 0; s <= full; ++s)
        if (subset(s, t) && ref_msat(f->left, M, s) && !ref_msat(f->right, M, s))
          return false;
      return true;
    case Kind::GlobalOr:
      return ref_msat(f->left, M, t) || ref_msat(f->right, M, t);
    case Kind::LaxGlobalOr:
      for (Team s = 0; s <= full; ++s)
        if (subset(t, s) && (ref_msat(f->left, M, s) || ref_msat(f->right, M, s)))
          return true;
      return false;
    case Kind::Might:
      for (Team s = 1; s <= full; ++s)
        if (subset(s, t) && ref_msat(f->left, M, s)) return true;
      return false;
    case Kind::Dep: {
      auto ws = team_members(t);
      for (Valuation v : ws)
        for (Valuation w : ws) {
          bool agree = true;
          for (const auto& a : f->dep_args)
            if (ref_msat(a, M, Team{1} << v) != ref_msat(a, M, Team{1} << w)) {
              agree = false;
              break;
            }
          if (agree && ref_msat(f->dep_head, M, Team{1} << v) !=
                           ref_msat(f->dep_head, M, Team{1} << w))
            return false;
        }
      return true;
    }
    case Kind::Dia:
      for (Valuation w : team_members(t)) {
        Team reach = M.succ[w];
        bool found = false;
        for (Team s = 1; s <= full; ++s)
          if (subset(s, reach) && ref_msat(f->left, M, s)) { found = true; break; }
        if (!found) return false;
      }
      return true;
    case Kind::Box:
      for (Valuation w : team_members(t))
        if (!ref_msat(f->left, M, M.succ[w])) return false;
      return true;
    case Kind::GDia:
      for (Team s = 0; s <= full; ++s)
        if (M.successor_team(t, s) && ref_msat(f->left, M, s)) return true;
      return false;
    case Kind::GBox:
      return ref_msat(f->left, M, M.image(t));
    default:
      throw std::logic_error("ref_msat: unexpected node");
  }
}

KripkeModel random_model(uint64_t seed, const std::vector<std::string>& atoms) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(1, 4);
  int n = size_dist(rng);
  std::vector<std::string> worlds;
  for (int i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
  std::uniform_int_distribution<Team> mask_dist(0, (Team{1} << n) - 1);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    Team out = mask_dist(rng);
    for (Valuation j : team_members(out)) edges.emplace_back(i, static_cast<int>(j));
  }
  std::map<std::string, Team> val;
  for (const auto& a : atoms) val[a] = mask_dist(rng);
  return KripkeModel(std::move(worlds), edges, std::move(val));
}

}  // namespace

TEST_CASE("model construction validates input") {
  CHECK_THROWS(KripkeModel({}, {}, {}));
  CHECK_THROWS(KripkeModel({"a"}, {{0, 1}}, {}));
  CHECK_THROWS(KripkeModel({"a"}, {}, {{"p", 2u}}));
  KripkeModel M({"a", "b"}, {{0, 1}, {1, 1}}, {{"p", 0b10}});
  CHECK(M.image(0b01) == 0b10);
  CHECK(M.image(0b11) == 0b10);
  CHECK(M.preimage(0b10) == 0b11);
  CHECK(M.preimage(0b01) == 0);
}

TEST_CASE("successor teams require both containment conditions") {
  KripkeModel M({"a", "b"}, {{0, 0}, {0, 1}}, {});
  // R[a] = {a,b}, b has no successors
  CHECK(M.successor_team(0b01, 0b01));
  CHECK(M.successor_team(0b01, 0b11));
  CHECK_FALSE(M.successor_team(0b01, 0b00));
  CHECK_FALSE(M.successor_team(0b10, 0b01));  // b reaches nothing
  auto succ = successors(M, 0b01);
  CHECK(succ == std::vector<Team>{0b01, 0b10, 0b11});
  // the empty team's only successor team is empty
  CHECK(successors(M, 0) == std::vector<Team>{0});
}

TEST_CASE("flat diamond needs a nonempty witness under every world") {
  KripkeModel M({"a", "b"}, {}, {{"p", 0b11}});
  CHECK(msat(parse("dia p"), M, 0));       // vacuous on the empty team
  CHECK_FALSE(msat(parse("dia p"), M, 1)); // no successors at all
  CHECK(mextension(parse("dia p"), M) == [] {
    Property P;
    P.insert(0);
    return P;
  }());
}

TEST_CASE("flat box evaluates the operand on each world's image") {
  KripkeModel M({"a", "b"}, {{0, 1}}, {{"p", 0b10}});
  CHECK(msat(parse("box p"), M, 0b01));
  CHECK(msat(parse("box p"), M, 0b10));  // empty image satisfies p
  CHECK(msat(parse("box ne"), M, 0b01));
  CHECK_FALSE(msat(parse("box ne"), M, 0b10));
}

TEST_CASE("global box evaluates the operand on the team image") {
  KripkeModel M({"a", "b"}, {{0, 1}}, {{"p", 0b10}});
  CHECK(msat(parse("gbox p"), M, 0b01));
  CHECK(msat(parse("gbox p"), M, 0b10));
  CHECK_FALSE(msat(parse("gbox ne"), M, 0b10));
}

TEST_CASE("global diamond convexity gap on the three-world fixture") {
  KripkeModel M = global_diamond_fixture();
  Formula f = parse("gdia (((might p /\\ might ~p) -> bot) /\\ might r)");
  CHECK(msat(f, M, 0b100));
  CHECK_FALSE(msat(f, M, 0b110));
  CHECK(msat(f, M, 0b111));
}

TEST_CASE("modal evaluator agrees with the reference clauses") {
  std::vector<std::string> atoms{"p", "q"};
  Domain X{atoms};
  for (uint64_t seed = 0; seed < 120; ++seed) {
    KripkeModel M = random_model(seed * 37 + 5, atoms);
    for (auto frag : {FragmentId::CONDEP_modal, FragmentId::CONINQ_modal,
                      FragmentId::PLIM_modal, FragmentId::ML_NE_flat,
                      FragmentId::ML_NE_global}) {
      Formula f = random_formula(frag, X, seed * 101 + static_cast<uint64_t>(frag),
                                 {.max_depth = 3});
      Property ext = mextension(f, M);
      for (Team t = 0; t <= M.full_team(); ++t) {
        CAPTURE(print(f), t, seed);
        REQUIRE(ext.contains(t) == ref_msat(f, M, t));
      }
    }
  }
}

TEST_CASE("modal flat fragments are convex on random models") {
  std::vector<std::string> atoms{"p", "q"};
  Domain X{atoms};
  for (uint64_t seed = 0; seed < 80; ++seed) {
    KripkeModel M = random_model(seed * 13 + 2, atoms);
    for (auto frag : {FragmentId::CONDEP_modal, FragmentId::CONINQ_modal,
                      FragmentId::PLIM_modal}) {
      Formula f = random_formula(frag, X, seed * 997 + static_cast<uint64_t>(frag),
                                 {.max_depth = 3});
      auto rep = check_closure(mextension(f, M), M.full_team());
      CAPTURE(print(f), seed);
      REQUIRE(rep.convex);
    }
  }
}
