#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "weaklog/parser.hpp"
#include "weaklog/schema.hpp"

using namespace weaklog;
using testutil::random_formula;

TEST_CASE("signatures are constructible by name") {
  CHECK(Signature::by_name("int") == Signature::l_int());
  CHECK(Signature::by_name("L_inq") == Signature::l_inq());
  CHECK(Signature::l_int().arity_checked("imp") == 2);
  CHECK(Signature::l_int().arity_checked("bot") == 0);
  CHECK_FALSE(Signature::l_int().has("tensor"));
  CHECK(Signature::l_inq().has("tensor"));
  CHECK_THROWS_AS(Signature::by_name("modal"), std::invalid_argument);
}

TEST_CASE("parsing respects precedence and associativity") {
  auto sig = Signature::l_inq();
  CHECK(parse_formula("p0 -> p1 | p2", sig) == limp(lvar(0), lor(lvar(1), lvar(2))));
  CHECK(parse_formula("p0 & p1 | p2", sig) == lor(land(lvar(0), lvar(1)), lvar(2)));
  CHECK(parse_formula("~p0 & p1", sig) == land(lnot(lvar(0)), lvar(1)));
  CHECK(parse_formula("p0 -> p1 -> p2", sig) == limp(lvar(0), limp(lvar(1), lvar(2))));
  // | and * share one level and associate to the left
  CHECK(parse_formula("p0 | p1 * p2", sig) == ltensor(lor(lvar(0), lvar(1)), lvar(2)));
  CHECK(parse_formula("p0 * p1 | p2", sig) == lor(ltensor(lvar(0), lvar(1)), lvar(2)));
  CHECK(parse_formula("(p0 | p1) & p2", sig) == land(lor(lvar(0), lvar(1)), lvar(2)));
  CHECK(parse_formula("p12", sig) == lvar(12));
}

TEST_CASE("sugar desugars to imp/and/bot") {
  auto sig = Signature::l_int();
  CHECK(parse_formula("~p0", sig) == limp(lvar(0), lbot()));
  CHECK(parse_formula("~~p0", sig) == lnot(lnot(lvar(0))));
  CHECK(parse_formula("p0 <-> p1", sig) ==
        land(limp(lvar(0), lvar(1)), limp(lvar(1), lvar(0))));
  CHECK_THROWS_AS(parse_formula("p0 <-> p1 <-> p2", sig), parse_error);
}

TEST_CASE("tensor is rejected outside L_inq") {
  CHECK_THROWS_AS(parse_formula("p0 * p1", Signature::l_int()), parse_error);
  CHECK_NOTHROW(parse_formula("p0 * p1", Signature::l_inq()));
}

TEST_CASE("parse errors carry positions") {
  auto sig = Signature::l_int();
  CHECK_THROWS_AS(parse_formula("p0 ->", sig), parse_error);
  CHECK_THROWS_AS(parse_formula("(p0 -> p1", sig), parse_error);
  CHECK_THROWS_AS(parse_formula("p0 p1", sig), parse_error);
  CHECK_THROWS_AS(parse_formula("q0", sig), parse_error);
  CHECK_THROWS_AS(parse_formula("", sig), parse_error);
  CHECK_THROWS_AS(parse_formula("_phi", sig), parse_error);  // metas off by default
  CHECK_NOTHROW(parse_formula("_phi", sig, /*allow_meta=*/true));
}

TEST_CASE("printer emits minimal parentheses and round-trips") {
  auto sig = Signature::l_inq();
  CHECK(to_string(lor(lvar(0), lor(lvar(1), lvar(2)))) == "p0 | (p1 | p2)");
  CHECK(to_string(lor(lor(lvar(0), lvar(1)), lvar(2))) == "p0 | p1 | p2");
  CHECK(to_string(limp(limp(lvar(0), lvar(1)), lvar(2))) == "(p0 -> p1) -> p2");
  CHECK(to_string(limp(lvar(0), limp(lvar(1), lvar(2)))) == "p0 -> p1 -> p2");
  CHECK(to_string(lnot(lnot(lvar(0)))) == "~~p0");
  CHECK(to_string(lnot(limp(lvar(0), lvar(1)))) == "~(p0 -> p1)");
  CHECK(to_string(land(lvar(0), lnot(lvar(1)))) == "p0 & ~p1");
  CHECK(to_string(ltensor(lvar(0), lvar(1))) == "p0 * p1");

  std::mt19937_64 rng(20260823);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, sig, 5, 3);
    CAPTURE(to_string(f));
    CHECK(parse_formula(to_string(f), sig) == f);
  }
}

TEST_CASE("equation syntax uses ~ as the equality sign") {
  auto sig = Signature::l_int();
  Equation e = parse_equation("p0 ~ ~p1", sig);
  CHECK(e.lhs == lvar(0));
  CHECK(e.rhs == lnot(lvar(1)));
  CHECK(to_string(e) == "p0 ~ ~p1");
  Equation rt = parse_equation(to_string(e), sig);
  CHECK(rt.lhs == e.lhs);
  CHECK(rt.rhs == e.rhs);
  CHECK_THROWS_AS(parse_equation("p0", sig), parse_error);
}

TEST_CASE("substitution application is homomorphic and preserves sharing") {
  auto sig = Signature::l_inq();
  Substitution s(std::map<int, Formula>{{0, lor(lvar(1), lvar(2))}});
  Formula split = parse_formula("(p0 -> p1 | p2) -> (p0 -> p1) | (p0 -> p2)", sig);
  Formula inst = s.apply(split);
  CHECK(inst == parse_formula(
                    "((p1 | p2) -> p1 | p2) -> ((p1 | p2) -> p1) | ((p1 | p2) -> p2)", sig));

  // untouched subtrees keep identity
  Formula g = land(lvar(3), lvar(4));
  CHECK(s.apply(g).node() == g.node());

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Formula a = random_formula(rng, sig, 3, 4);
    Formula b = random_formula(rng, sig, 3, 4);
    CHECK(s.apply(land(a, b)) == land(s.apply(a), s.apply(b)));
    CHECK(s.apply(ltensor(a, b)) == ltensor(s.apply(a), s.apply(b)));
  }
}

TEST_CASE("substitution composition matches sequential application") {
  auto sig = Signature::l_inq();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Substitution s1(std::map<int, Formula>{{0, random_formula(rng, sig, 2, 3)},
                                           {1, random_formula(rng, sig, 2, 3)}});
    Substitution s2(std::map<int, Formula>{{1, random_formula(rng, sig, 2, 3)},
                                           {2, random_formula(rng, sig, 2, 3)}});
    Substitution c = Substitution::compose(s2, s1);
    Formula f = random_formula(rng, sig, 4, 3);
    CHECK(c.apply(f) == s2.apply(s1.apply(f)));
  }
}

TEST_CASE("substitutions are classified by their images") {
  Substitution atomic(std::map<int, Formula>{{0, lvar(5)}, {1, lvar(0)}});
  CHECK(atomic.classify() == SubstClass::atomic);

  Substitution orfree(std::map<int, Formula>{{0, land(lvar(1), lnot(lvar(1)))}});
  CHECK(orfree.classify() == SubstClass::or_free);

  Substitution tensor_only(std::map<int, Formula>{{0, ltensor(lvar(1), lvar(2))}});
  CHECK(tensor_only.classify() == SubstClass::or_free);  // tensor keeps a formula standard

  Substitution general(std::map<int, Formula>{{0, lor(lvar(1), lvar(2))}});
  CHECK(general.classify() == SubstClass::general);

  // atoms outside the map count as fixed (hence atomic) images
  std::vector<int> atoms{0, 7};
  CHECK(general.classify(atoms) == SubstClass::general);
  std::vector<int> untouched{7, 8};
  CHECK(general.classify(untouched) == SubstClass::atomic);
}

TEST_CASE("schema matching binds metavariables once and checks sorts") {
  auto sig = Signature::l_int();
  Schema a10{"A10",
             parse_formula("(_alpha -> _phi | _psi) -> (_alpha -> _phi) | (_alpha -> _psi)",
                           sig, true),
             {{"alpha", Sort::standard}}};

  Formula good = parse_formula("(p0 -> p1 | p2) -> (p0 -> p1) | (p0 -> p2)", sig);
  auto b = match_schema(a10, good);
  REQUIRE(b.has_value());
  CHECK(b->at("alpha") == lvar(0));
  CHECK(b->at("phi") == lvar(1));
  CHECK(b->at("psi") == lvar(2));
  CHECK(instantiate_schema(a10, *b) == good);

  // alpha slot filled by a disjunction: sort violation
  Formula bad = parse_formula(
      "((p1 | p2) -> p1 | p2) -> ((p1 | p2) -> p1) | ((p1 | p2) -> p2)", sig);
  CHECK_FALSE(match_schema(a10, bad).has_value());

  // repeated metavariable must take one value
  Schema contraction{"C", parse_formula("_phi -> _phi", sig, true), {}};
  CHECK(match_schema(contraction, parse_formula("p0 -> p0", sig)).has_value());
  CHECK_FALSE(match_schema(contraction, parse_formula("p0 -> p1", sig)).has_value());
}

TEST_CASE("formula helpers: atoms, or-freeness, tensor rewrite") {
  auto sig = Signature::l_inq();
  Formula f = parse_formula("p2 & (p0 * ~p2) -> p5", sig);
  CHECK(atoms_of(f) == std::vector<int>{0, 2, 5});
  CHECK(is_or_free(f));
  CHECK_FALSE(is_or_free(parse_formula("p0 | p1", sig)));
  CHECK(tensor_as_or(f) == parse_formula("p2 & (p0 | ~p2) -> p5", sig));
  CHECK(tensor_as_or(f.args()[1]) == f.args()[1]);  // no tensor, same node
  CHECK(well_formed_over(f, sig));
  CHECK_FALSE(well_formed_over(f, Signature::l_int()));
}
