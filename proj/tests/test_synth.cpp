#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracle.hpp"
#include "teamlogic/eval.hpp"
#include "teamlogic/synth.hpp"

using namespace teamlogic;

namespace {

Domain P1{{"p"}};
Domain PQ{{"p", "q"}};

const std::vector<Basis> kBases{Basis::lor, Basis::impl, Basis::vee_ne};

// downward closure membership: some member of P contains t
bool below_some(const Property& P, Team t) {
  for (Team s : P.teams)
    if (subset(t, s)) return true;
  return false;
}

// some member of P is inside t
bool above_some(const Property& P, Team t) {
  for (Team s : P.teams)
    if (subset(s, t)) return true;
  return false;
}

std::vector<Property> random_nonempty_properties(const Domain& X, int n, uint64_t seed,
                                                 bool no_empty_team = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Team> d(no_empty_team ? 1 : 0, X.full_team());
  std::uniform_int_distribution<int> cnt(1, 5);
  std::vector<Property> out;
  for (int i = 0; i < n; ++i) {
    Property P;
    int k = cnt(rng);
    for (int j = 0; j < k; ++j) P.insert(d(rng));
    out.push_back(std::move(P));
  }
  return out;
}

}  // namespace

TEST_CASE("chi_v extension is the at-most-singleton of its valuation") {
  for (const Domain& X : {P1, PQ})
    for (Basis b : kBases)
      for (Valuation v = 0; v < X.num_valuations(); ++v) {
        Property want;
        want.insert(0);
        want.insert(Team{1} << v);
        CAPTURE(X.size(), static_cast<int>(b), v);
        CHECK(extension(chi_v(v, X, b), X).as_mask() == want.as_mask());
      }
}

TEST_CASE("chi_v over the empty domain is a tautology") {
  Domain empty{{}};
  Property ext = extension(chi_v(0, empty), empty);
  CHECK(ext.contains(0));  // the only team
  CHECK(ext.size() == 2);  // teams 0 and 1 of the single vacuous valuation
}

TEST_CASE("chi_t is satisfied exactly by the subteams") {
  for (Basis b : kBases)
    for (Team t = 0; t <= PQ.full_team(); ++t) {
      Property ext = extension(chi_t(t, PQ, b), PQ);
      for (Team s = 0; s <= PQ.full_team(); ++s) {
        CAPTURE(static_cast<int>(b), t, s);
        REQUIRE(ext.contains(s) == subset(s, t));
      }
    }
}

TEST_CASE("chi_U holds exactly above some member") {
  // exhaustive over one atom
  for (uint64_t mask = 1; mask < 16; ++mask) {
    Property P = Property::from_mask(mask, 4);
    for (Basis b : kBases) {
      Property ext = extension(chi_U(P, P1, b), P1);
      for (Team t = 0; t <= P1.full_team(); ++t) {
        CAPTURE(mask, static_cast<int>(b), t);
        REQUIRE(ext.contains(t) == above_some(P, t));
      }
    }
  }
  // sampled over two atoms
  for (const Property& P : random_nonempty_properties(PQ, 80, 11)) {
    Property ext = extension(chi_U(P, PQ), PQ);
    for (Team t = 0; t <= PQ.full_team(); ++t) {
      CAPTURE(P.as_mask(), t);
      REQUIRE(ext.contains(t) == above_some(P, t));
    }
  }
  CHECK_THROWS_AS(chi_U(Property{}, P1), std::invalid_argument);
}

TEST_CASE("transversal dedup preserves the literal product semantics") {
  for (uint64_t mask = 1; mask < 16; ++mask) {
    Property P = Property::from_mask(mask, 4);
    for (Basis b : kBases) {
      CAPTURE(mask, static_cast<int>(b));
      CHECK(extension(chi_U(P, P1, b), P1).as_mask() ==
            extension(chi_U_literal(P, P1, b), P1).as_mask());
    }
  }
  for (const Property& P : random_nonempty_properties(PQ, 60, 23)) {
    size_t product = 1;
    for (Team t : P.teams) product *= std::max(team_size(t), 1);
    if (product > 100000) continue;
    CAPTURE(P.as_mask());
    CHECK(extension(chi_U(P, PQ), PQ).as_mask() ==
          extension(chi_U_literal(P, PQ), PQ).as_mask());
  }
}

TEST_CASE("chi_D holds exactly below some member, in all three forms") {
  auto logics = {SynthLogic::condep, SynthLogic::coninq, SynthLogic::plim};
  for (uint64_t mask = 1; mask < 16; ++mask) {
    Property P = Property::from_mask(mask, 4);
    for (SynthLogic l : logics) {
      Property ext = extension(chi_D(P, P1, l), P1);
      for (Team t = 0; t <= P1.full_team(); ++t) {
        CAPTURE(mask, synth_logic_name(l), t);
        REQUIRE(ext.contains(t) == below_some(P, t));
      }
    }
  }
  for (const Property& P : random_nonempty_properties(PQ, 50, 5)) {
    for (SynthLogic l : logics) {
      Property ext = extension(chi_D(P, PQ, l), PQ);
      for (Team t = 0; t <= PQ.full_team(); ++t) {
        CAPTURE(P.as_mask(), synth_logic_name(l), t);
        REQUIRE(ext.contains(t) == below_some(P, t));
      }
    }
  }
}

TEST_CASE("chi_D worked examples") {
  Property full_only;
  full_only.insert(0b11);  // {v_p, v_pbar}
  CHECK(extension(chi_D(full_only, P1, SynthLogic::coninq), P1).size() == 4);

  Property just_vp;
  just_vp.insert(0b10);
  Property want;
  want.insert(0);
  want.insert(0b10);
  CHECK(extension(chi_D(just_vp, P1, SynthLogic::condep), P1).as_mask() == want.as_mask());

  Property just_empty;
  just_empty.insert(0);
  Property only_empty;
  only_empty.insert(0);
  CHECK(extension(chi_D(just_empty, P1, SynthLogic::plim), P1).as_mask() ==
        only_empty.as_mask());

  CHECK_THROWS_AS(chi_D(Property{}, P1, SynthLogic::condep), std::invalid_argument);
  Domain big{{"p", "q", "r", "s"}};
  CHECK_THROWS_AS(chi_D(just_vp, big, SynthLogic::condep), std::invalid_argument);
}

TEST_CASE("gamma_n counts team size") {
  for (bool lax : {false, true})
    for (int n = 0; n <= 4; ++n) {
      Property ext = extension(gamma_n(n, PQ, lax), PQ);
      for (Team t = 0; t <= PQ.full_team(); ++t) {
        CAPTURE(lax, n, t);
        REQUIRE(ext.contains(t) == (team_size(t) <= n));
      }
    }
  CHECK_THROWS_AS(gamma_n(-1, PQ), std::invalid_argument);
}

TEST_CASE("xi_t holds exactly on teams not containing t") {
  for (bool lax : {false, true})
    for (Team t = 1; t <= PQ.full_team(); ++t) {
      Property ext = extension(xi_t(t, PQ, lax), PQ);
      for (Team s = 0; s <= PQ.full_team(); ++s) {
        CAPTURE(lax, t, s);
        REQUIRE(ext.contains(s) == !subset(t, s));
      }
    }
  CHECK_THROWS_AS(xi_t(0, PQ), std::invalid_argument);
}

TEST_CASE("chi_F holds exactly inside the union") {
  CHECK(extension(chi_F(Property{}, P1), P1).size() == 1);  // just the empty team
  Property just_empty;
  just_empty.insert(0);
  CHECK(extension(chi_F(just_empty, P1), P1).as_mask() == just_empty.as_mask());
  for (const Property& P : random_nonempty_properties(PQ, 60, 77)) {
    Property ext = extension(chi_F(P, PQ), PQ);
    Team u = union_all(P);
    for (Team t = 0; t <= PQ.full_team(); ++t) {
      CAPTURE(P.as_mask(), t);
      REQUIRE(ext.contains(t) == subset(t, u));
    }
  }
}

TEST_CASE("case-split construction matches its literal product semantics") {
  auto literal_sat = [](const Property& P, Team t) {
    if (t == 0) return false;
    if (!subset(t, union_all(P))) return false;
    return above_some(P, t);
  };
  for (uint64_t mask = 0; mask < 16; ++mask) {
    Property P;
    for (Team t = 1; t <= 3; ++t)
      if (mask & (1u << t)) P.insert(t);
    if (P.empty()) continue;
    Property ext = extension(detail::pl_ne_case_c(P, P1), P1);
    for (Team t = 0; t <= P1.full_team(); ++t) {
      CAPTURE(mask, t);
      REQUIRE(ext.contains(t) == literal_sat(P, t));
    }
  }
  for (const Property& P : random_nonempty_properties(PQ, 60, 91, /*no_empty_team=*/true)) {
    Property ext = extension(detail::pl_ne_case_c(P, PQ), PQ);
    for (Team t = 0; t <= PQ.full_team(); ++t) {
      CAPTURE(P.as_mask(), t);
      REQUIRE(ext.contains(t) == literal_sat(P, t));
    }
  }
}

TEST_CASE("synthesized formulas stay in their fragment and hit their property") {
  std::map<SynthLogic, PropertyClass> cls = {
      {SynthLogic::condep, PropertyClass::C},
      {SynthLogic::coninq, PropertyClass::C},
      {SynthLogic::plim, PropertyClass::C},
      {SynthLogic::pl_ne_flat, PropertyClass::CU},
      {SynthLogic::pl_ne_cases, PropertyClass::CU},
  };
  for (auto [logic, c] : cls)
    for (uint64_t seed = 0; seed < 40; ++seed) {
      Property P = random_property(PQ, c, seed * 7 + 1);
      Formula f = synthesize(logic, P, PQ);
      CAPTURE(synth_logic_name(logic), P.as_mask(), print(f));
      CHECK(in_fragment(f, fragment_of(logic)));
      CHECK(extension(f, PQ).as_mask() == P.as_mask());
    }
}

TEST_CASE("synthesize worked examples") {
  // convex but not downward closed: the doubleton team alone
  Property pair_only;
  pair_only.insert(0b11);
  Formula f = synthesize(SynthLogic::condep, pair_only, P1);
  CHECK(extension(f, P1).as_mask() == pair_only.as_mask());

  // all nonempty teams over one atom: equivalent to ne
  Property nonempty;
  for (Team t = 1; t <= 3; ++t) nonempty.insert(t);
  Formula g = synthesize(SynthLogic::pl_ne_cases, nonempty, P1);
  CHECK(extension(g, P1).as_mask() == extension(f_ne(), P1).as_mask());

  // the empty property synthesizes to a dead bottom in every logic
  for (auto logic : {SynthLogic::condep, SynthLogic::coninq, SynthLogic::plim,
                     SynthLogic::pl_ne_flat, SynthLogic::pl_ne_cases}) {
    Formula d = synthesize(logic, Property{}, P1);
    CAPTURE(synth_logic_name(logic), print(d));
    CHECK(extension(d, P1).size() == 0);
    CHECK(in_fragment(d, fragment_of(logic)));
  }

  // out-of-class input is rejected: {emptyteam, full} u {v_p} gap is not convex
  Property bad;
  bad.insert(0);
  bad.insert(0b11);
  CHECK_THROWS_AS(synthesize(SynthLogic::condep, bad, P1), std::invalid_argument);
}

TEST_CASE("exhaustive verification over one atom") {
  int convex = 0, cu = 0;
  for (const Property& P : all_properties(P1)) {
    if (oracle::convex(P, P1.full_team())) ++convex;
    if (oracle::convex(P, P1.full_team()) && oracle::union_closed(P)) ++cu;
  }
  CHECK(convex == 13);
  for (auto logic : {SynthLogic::condep, SynthLogic::coninq, SynthLogic::plim}) {
    VerifyReport r = verify_exhaustive(logic, P1);
    CAPTURE(synth_logic_name(logic));
    CHECK(r.total == convex);
    CHECK(r.passed == r.total);
    CHECK(r.ok());
  }
  for (auto logic : {SynthLogic::pl_ne_flat, SynthLogic::pl_ne_cases}) {
    VerifyReport r = verify_exhaustive(logic, P1);
    CAPTURE(synth_logic_name(logic));
    CHECK(r.total == cu);
    CHECK(r.ok());
  }
}

TEST_CASE("sharded verification agrees with single-threaded") {
  VerifyReport one = verify_exhaustive(SynthLogic::plim, PQ, 1);
  VerifyReport four = verify_exhaustive(SynthLogic::plim, PQ, 4);
  CHECK(one.total == 3938);
  CHECK(one.ok());
  CHECK(four.total == one.total);
  CHECK(four.passed == one.passed);
}

TEST_CASE("sampled verification is seeded and clean") {
  Domain PQR{{"p", "q", "r"}};
  VerifyReport a = verify_sampled(SynthLogic::coninq, PQR, 25, 3);
  VerifyReport b = verify_sampled(SynthLogic::coninq, PQR, 25, 3);
  CHECK(a.total == 25);
  CHECK(a.ok());
  CHECK(b.passed == a.passed);
}
