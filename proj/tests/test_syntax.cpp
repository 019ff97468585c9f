#include <catch2/catch_amalgamated.hpp>

#include "teamlogic/formula.hpp"
#include "teamlogic/fragment.hpp"
#include "teamlogic/parser.hpp"

using namespace teamlogic;

static std::string roundtrip(const std::string& s) { return print(parse(s)); }

TEST_CASE("atoms and constants parse") {
  CHECK(parse("p")->kind == Kind::Atom);
  CHECK(parse("bot")->kind == Kind::Bot);
  CHECK(parse("ne")->kind == Kind::NE);
  // keywords only match whole identifiers
  CHECK(parse("mighty")->kind == Kind::Atom);
  CHECK(parse("bots")->kind == Kind::Atom);
  CHECK(parse("nearby")->name == "nearby");
}

TEST_CASE("abbreviations expand at parse time") {
  Formula top = parse("top");
  REQUIRE(top->kind == Kind::Neg);
  CHECK(top->left->kind == Kind::Bot);
  Formula nbot = parse("nbot");
  REQUIRE(nbot->kind == Kind::Might);
  CHECK(nbot->left->kind == Kind::Bot);
  Formula bang = parse("!p");
  REQUIRE(bang->kind == Kind::Impl);
  CHECK(bang->left->kind == Kind::Atom);
  CHECK(bang->right->kind == Kind::Bot);
}

TEST_CASE("precedence: unary over and over disjunction over implication") {
  Formula f = parse("~p /\\ q \\/ r -> s");
  REQUIRE(f->kind == Kind::Impl);
  REQUIRE(f->left->kind == Kind::SplitOr);
  REQUIRE(f->left->left->kind == Kind::And);
  CHECK(f->left->left->left->kind == Kind::Neg);
  CHECK(f->left->right->name == "r");
}

TEST_CASE("implication is right associative") {
  Formula f = parse("p -> q -> r");
  REQUIRE(f->kind == Kind::Impl);
  CHECK(f->left->kind == Kind::Atom);
  CHECK(f->right->kind == Kind::Impl);
}

TEST_CASE("disjunction flavors do not mix without parentheses") {
  CHECK_NOTHROW(parse("p \\/ q \\/ r"));
  CHECK_NOTHROW(parse("p \\/. q \\/. r"));
  CHECK_THROWS_AS(parse("p \\/ q \\/. r"), ParseError);
  CHECK_THROWS_AS(parse("p \\\\/ q \\/ r"), ParseError);
  CHECK_NOTHROW(parse("(p \\/ q) \\/. r"));
}

TEST_CASE("lax tokens win longest match") {
  CHECK(parse("p \\/. q")->kind == Kind::LaxSplitOr);
  CHECK(parse("p \\\\/. q")->kind == Kind::LaxGlobalOr);
  CHECK(parse("p \\\\/ q")->kind == Kind::GlobalOr);
}

TEST_CASE("dependence atoms parse with argument lists") {
  Formula f = parse("=(p, q; r)");
  REQUIRE(f->kind == Kind::Dep);
  REQUIRE(f->dep_args.size() == 2);
  CHECK(f->dep_args[1]->name == "q");
  CHECK(f->dep_head->name == "r");
  Formula c = parse("=(p)");
  REQUIRE(c->kind == Kind::Dep);
  CHECK(c->dep_args.empty());
  CHECK(c->dep_head->name == "p");
}

TEST_CASE("context holes parse") {
  Formula f = parse("_1 \\/. _2");
  REQUIRE(f->kind == Kind::LaxSplitOr);
  CHECK(f->left->hole_index == 1);
  CHECK(f->right->hole_index == 2);
  CHECK(max_hole_index(f) == 2);
}

TEST_CASE("modalities parse") {
  CHECK(parse("dia p")->kind == Kind::Dia);
  CHECK(parse("box p")->kind == Kind::Box);
  CHECK(parse("gdia p")->kind == Kind::GDia);
  CHECK(parse("gbox box p")->kind == Kind::GBox);
  CHECK(is_modal(parse("p /\\ dia q")));
  CHECK_FALSE(is_modal(parse("p /\\ might q")));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("p /\\ ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position >= 4);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("=(p; )"), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);  // atoms are lowercase
}

TEST_CASE("print then parse is identity on structure") {
  for (const char* s :
       {"p", "bot", "ne", "~p", "might (p /\\ q)", "p \\/ q \\/ r", "p \\/. q",
        "p \\\\/ q", "p \\\\/. q", "p -> q -> r", "=(p, q; r)", "=(p)",
        "dia (p \\/ q)", "box p /\\ gdia q", "(p -> q) \\/ r",
        "might p /\\ might ~p -> bot", "_1 \\/. _2",
        "(((p /\\ ne) \\/ (~p /\\ ne)) -> bot) /\\ might r"}) {
    Formula f = parse(s);
    CAPTURE(s, print(f));
    CHECK(structurally_equal(f, parse(print(f))));
  }
}

TEST_CASE("fragment membership follows the grammars") {
  CHECK(in_fragment(parse("p \\/ ~q"), FragmentId::PL_or));
  CHECK_FALSE(in_fragment(parse("p \\/. q"), FragmentId::PL_or));
  CHECK(in_fragment(parse("=(p; q) \\/. might r"), FragmentId::CONDEP));
  CHECK_FALSE(in_fragment(parse("=(p; q) \\/ r"), FragmentId::CONDEP));
  CHECK(in_fragment(parse("(p -> q) \\\\/. might r"), FragmentId::CONINQ));
  CHECK_FALSE(in_fragment(parse("(p -> q) \\\\/ r"), FragmentId::CONINQ));
  CHECK(in_fragment(parse("might (p -> q)"), FragmentId::PLIM));
  CHECK_FALSE(in_fragment(parse("~(p -> q)"), FragmentId::PLIM));
  CHECK(in_fragment(parse("p \\/ ne"), FragmentId::PL_NE));
  CHECK_FALSE(in_fragment(parse("might p"), FragmentId::PL_NE));
  // flat negation in the restricted fragments takes classical operands only
  CHECK(in_fragment(parse("~(p \\/. q)"), FragmentId::CONDEP));
  CHECK_FALSE(in_fragment(parse("~might p"), FragmentId::CONDEP));
  CHECK_FALSE(in_fragment(parse("~ne"), FragmentId::PL_NE));
  // dep atoms take plain atoms propositionally, classical formulas modally
  CHECK_FALSE(in_fragment(parse("=(p /\\ q; r)"), FragmentId::CONDEP));
  CHECK(in_fragment(parse("=(dia p; box q)"), FragmentId::CONDEP_modal));
  CHECK(in_fragment(parse("dia p \\/. might q"), FragmentId::CONDEP_modal));
  CHECK_FALSE(in_fragment(parse("gdia p"), FragmentId::CONDEP_modal));
  CHECK(in_fragment(parse("gdia p \\/ ne"), FragmentId::ML_NE_global));
}

TEST_CASE("fragment names round trip") {
  for (int i = 0; i <= static_cast<int>(FragmentId::ML_NE_global); ++i) {
    auto id = static_cast<FragmentId>(i);
    auto back = fragment_from_name(fragment_name(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK_FALSE(fragment_from_name("nope").has_value());
}
