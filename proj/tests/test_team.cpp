#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "weaklog/team.hpp"

using namespace weaklog;
using testutil::random_formula;

namespace {

const Signature li = Signature::l_int();
const Signature lq = Signature::l_inq();

Formula fi(const char* text) { return parse_formula(text, li); }
Formula fq(const char* text) { return parse_formula(text, lq); }

// Reference evaluator, deliberately unoptimized and structured differently
// from ClassicalEvaluator: no memo, implication filters all masks, tensor
// tries every cover pair.
bool naive_supports(const ClassicalTeamModel& m, uint32_t team, const Formula& f) {
  if (f.is_atom()) return (team & ~m.atom_worlds(f.atom_index())) == 0;
  const auto& n = f.name();
  if (n == "bot") return team == 0;
  if (n == "and")
    return naive_supports(m, team, f.args()[0]) && naive_supports(m, team, f.args()[1]);
  if (n == "or")
    return naive_supports(m, team, f.args()[0]) || naive_supports(m, team, f.args()[1]);
  if (n == "imp") {
    for (uint32_t u = 0; u <= m.full_team(); ++u)
      if ((u & ~team) == 0 && naive_supports(m, u, f.args()[0]) &&
          !naive_supports(m, u, f.args()[1]))
        return false;
    return true;
  }
  // tensor: any cover of the team by two supporting subteams
  for (uint32_t u = 0; u <= m.full_team(); ++u)
    for (uint32_t v = 0; v <= m.full_team(); ++v)
      if ((u | v) == team && naive_supports(m, u, f.args()[0]) &&
          naive_supports(m, v, f.args()[1]))
        return true;
  return false;
}

bool truth_at(const Formula& f, int world) {
  if (f.is_atom()) return (world >> f.atom_index()) & 1;
  const auto& n = f.name();
  if (n == "bot") return false;
  if (n == "and") return truth_at(f.args()[0], world) && truth_at(f.args()[1], world);
  if (n == "or" || n == "tensor")
    return truth_at(f.args()[0], world) || truth_at(f.args()[1], world);
  return !truth_at(f.args()[0], world) || truth_at(f.args()[1], world);
}

}  // namespace

TEST_CASE("two-atom support vectors") {
  // worlds: bit 0 = p0, bit 1 = p1; the four worlds are 11 -> 3, 10 -> 1,
  // 01 -> 2, 00 -> 0
  ClassicalTeamModel m(2);
  uint32_t bd = (1u << 1) | (1u << 0);  // p only at the first world
  CHECK(supports_classical(m, bd, fi("~~(p0 | ~p0)")));
  CHECK_FALSE(supports_classical(m, bd, fi("p0 | ~p0")));
  CHECK_FALSE(supports_classical(m, bd, fi("p0")));

  uint32_t ab = (1u << 3) | (1u << 1);  // both worlds make p true
  CHECK(supports_classical(m, ab, fi("p0")));
  CHECK(supports_classical(m, ab, fi("p0 | ~p0")));

  CHECK(supports_classical(m, 0, fi("bot")));
  CHECK_FALSE(supports_classical(m, 1, fi("bot")));
}

TEST_CASE("empty team supports every formula") {
  std::mt19937_64 rng(11);
  ClassicalTeamModel m(3);
  for (int t = 0; t < 100; ++t)
    CHECK(supports_classical(m, 0, random_formula(rng, lq, 3, 3)));
}

TEST_CASE("support is downward closed") {
  std::mt19937_64 rng(12);
  ClassicalTeamModel m(3);
  ClassicalEvaluator ev(m);
  for (int t = 0; t < 200; ++t) {
    Formula f = random_formula(rng, lq, 3, 3);
    uint32_t team = static_cast<uint32_t>(rng()) & m.full_team();
    if (!ev.supports(team, f)) continue;
    uint32_t sub = team & static_cast<uint32_t>(rng());
    CHECK(ev.supports(sub, f));
  }
}

TEST_CASE("singleton teams reduce to truth for or-free tensor-free formulas") {
  std::mt19937_64 rng(13);
  Signature flat({{"and", 2}, {"imp", 2}, {"bot", 0}});
  ClassicalTeamModel m(3);
  for (int t = 0; t < 200; ++t) {
    Formula f = random_formula(rng, flat, 3, 3);
    for (int w = 0; w < m.world_count(); ++w)
      CHECK(supports_classical(m, 1u << w, f) == truth_at(f, w));
  }
}

TEST_CASE("evaluator agrees with the naive reference") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 150; ++t) {
    ClassicalTeamModel m(2);
    ClassicalEvaluator ev(m);
    Formula f = random_formula(rng, lq, 3, 2);
    for (uint32_t team = 0; team <= m.full_team(); ++team)
      REQUIRE(ev.supports(team, f) == naive_supports(m, team, f));
  }
  for (int t = 0; t < 25; ++t) {
    ClassicalTeamModel m(3);
    ClassicalEvaluator ev(m);
    Formula f = random_formula(rng, lq, 2, 3);
    for (uint32_t team = 0; team <= m.full_team(); ++team)
      REQUIRE(ev.supports(team, f) == naive_supports(m, team, f));
  }
}

TEST_CASE("classical entailment oracle") {
  SECTION("the split axiom is valid") {
    auto r = inqb_entails({}, fi("(p0 -> (p1 | p2)) -> ((p0 -> p1) | (p0 -> p2))"));
    CHECK(r.entails);
  }

  SECTION("its uniform substitution instance fails with the frozen counter-team") {
    auto r = inqb_entails(
        {}, fi("((p1 | p2) -> (p1 | p2)) -> (((p1 | p2) -> p1) | ((p1 | p2) -> p2))"));
    REQUIRE_FALSE(r.entails);
    CHECK(r.atoms == std::vector<int>{1, 2});
    CHECK(r.counter_team == 6u);
    CHECK(team_to_string(r.counter_team, 2) == "{10, 01}");
  }

  SECTION("premises count") {
    std::vector<Formula> g{fi("p0")};
    CHECK(inqb_entails(g, fi("p0")).entails);
    CHECK(inqb_entails(g, fi("~~p0")).entails);
    CHECK_FALSE(inqb_entails({}, fi("p0")).entails);
  }

  SECTION("tensor excluded middle holds while split disjunction fails") {
    CHECK(inqb_entails({}, fq("p0 * ~p0")).entails);
    CHECK_FALSE(inqb_entails({}, fq("p0 | ~p0")).entails);
  }

  SECTION("double negation elimination for standard formulas") {
    CHECK(inqb_entails({}, fq("~~(p0 & ~p1) -> (p0 & ~p1)")).entails);
    CHECK(inqb_entails({}, fq("~~(p0 * p1) -> (p0 * p1)")).entails);
    // not for disjunctions
    CHECK_FALSE(inqb_entails({}, fi("~~(p0 | ~p0) -> (p0 | ~p0)")).entails);
  }

  SECTION("atom cap") {
    CHECK_THROWS_AS(inqb_entails({}, fi("p0 & p1 & p2 & p3 & p4")), std::invalid_argument);
  }
}

TEST_CASE("axiom soundness under the classical oracle, sampled") {
  std::mt19937_64 rng(15);
  Signature standard({{"and", 2}, {"imp", 2}, {"tensor", 2}, {"bot", 0}});
  auto sys = axiom_system("inqbt");
  for (const auto& schema : sys.schemas) {
    for (int t = 0; t < 15; ++t) {
      MetaBinding b;
      for (const auto& mv : meta_names(schema.tmpl)) {
        bool std_sort = schema.sort_of(mv) == Sort::standard;
        b[mv] = random_formula(rng, std_sort ? standard : lq, 2, 2);
      }
      Formula inst = instantiate_schema(schema, b);
      INFO(schema.name << ": " << to_string(inst));
      CHECK(inqb_entails({}, inst).entails);
    }
  }
}

TEST_CASE("derivations are sound for the semantic oracle") {
  auto inqb = axiom_system("inqb");
  std::vector<Formula> premises{fi("p0")};
  Derivation d;
  d.lines.push_back({fi("p0"), Justification::premise(1)});
  d.lines.push_back({fi("p0 -> (p1 -> p0)"), Justification::axiom("A1")});
  d.lines.push_back({fi("p1 -> p0"), Justification::mp(2, 1)});
  REQUIRE(check_derivation(inqb, premises, d).ok);
  CHECK(inqb_entails(premises, d.lines.back().formula).entails);
}

TEST_CASE("kripke models validate their valuations") {
  CHECK_THROWS_AS(KripkeTeamModel(FinitePoset::chain(2), {{0, 0b01u}}), std::invalid_argument);
  CHECK_NOTHROW(KripkeTeamModel(FinitePoset::chain(2), {{0, 0b10u}}));
}

TEST_CASE("one-point kripke models reduce to truth tables") {
  std::mt19937_64 rng(16);
  auto point = FinitePoset::antichain(1);
  for (int t = 0; t < 150; ++t) {
    Formula f = random_formula(rng, lq, 3, 2);
    for (uint32_t v0 : {0u, 1u})
      for (uint32_t v1 : {0u, 1u}) {
        KripkeTeamModel m(point, {{0, v0}, {1, v1}});
        int world = static_cast<int>(v0 | (v1 << 1));
        CHECK(supports_kripke(m, 1u, f) == truth_at(f, world));
      }
  }
}

TEST_CASE("double negation at the root of a chain") {
  KripkeTeamModel m(FinitePoset::chain(2), {{0, 0b10u}});
  CHECK(supports_kripke(m, 0b01u, fi("~~p0")));
  CHECK_FALSE(supports_kripke(m, 0b01u, fi("p0")));
  CHECK(supports_kripke(m, 0b01u, fi("~~p0 -> ~~p0")));
}

TEST_CASE("kripke support is downward closed") {
  std::mt19937_64 rng(17);
  const auto& posets = all_posets_upto_iso(4);
  for (int t = 0; t < 150; ++t) {
    const auto& poset = posets[rng() % posets.size()];
    auto upsets = poset.all_upsets();
    std::map<int, uint32_t> val{{0, upsets[rng() % upsets.size()]},
                                {1, upsets[rng() % upsets.size()]}};
    KripkeTeamModel m(poset, val);
    KripkeEvaluator ev(m);
    Formula f = random_formula(rng, lq, 3, 2);
    uint32_t team = static_cast<uint32_t>(rng()) & m.full_team();
    if (!ev.supports(team, f)) continue;
    CHECK(ev.supports(team & static_cast<uint32_t>(rng()), f));
  }
}

TEST_CASE("countermodel search enumeration is frozen") {
  SECTION("negated atom dies at the single point") {
    auto r = inqi_countermodel_search(fi("~p0"), 2);
    REQUIRE(r.has_value());
    CHECK(r->poset_index == 0);
    CHECK(r->model.valuation.at(0) == 0b1u);
    CHECK(r->team == 0b1u);
  }

  SECTION("double negation elimination needs the two-chain") {
    auto r = inqi_countermodel_search(fi("~~p0 -> p0"), 2);
    REQUIRE(r.has_value());
    CHECK(r->poset_index == 2);
    CHECK(r->model.poset == FinitePoset::chain(2));
    CHECK(r->model.valuation.at(0) == 0b10u);
    CHECK(r->team == 0b01u);
  }

  SECTION("the substituted split axiom falls on the two-antichain") {
    auto r = inqi_countermodel_search(
        fi("((p1 | p2) -> (p1 | p2)) -> (((p1 | p2) -> p1) | ((p1 | p2) -> p2))"), 2);
    REQUIRE(r.has_value());
    CHECK(r->poset_index == 1);
    CHECK(r->model.valuation.at(1) == 0b01u);
    CHECK(r->model.valuation.at(2) == 0b10u);
    CHECK(r->team == 0b11u);
  }

  SECTION("axioms admit no countermodels at small bounds") {
    for (const char* text :
         {"p0 -> (p1 -> p0)", "(p0 -> (p1 | p1)) -> ((p0 -> p1) | (p0 -> p1))",
          "p0 * p1 -> p1 * p0", "(p0 -> p1) -> ((p1 -> p0) -> (p0 * p1 -> p1 * p0))"}) {
      INFO(text);
      CHECK_FALSE(inqi_countermodel_search(fq(text), 3).has_value());
    }
  }

  SECTION("full-team restriction") {
    auto r = inqi_countermodel_search(fi("~p0"), 2, TeamChoice::full_only);
    REQUIRE(r.has_value());
    CHECK(r->team == r->model.full_team());
  }

  SECTION("a disjunction with refutable disjuncts is refuted") {
    Formula a = fi("~~p0 -> p0");
    Formula b = fi("p0 | ~p0");
    REQUIRE(inqi_countermodel_search(a, 3).has_value());
    REQUIRE(inqi_countermodel_search(b, 3).has_value());
    CHECK(inqi_countermodel_search(lor(a, b), 3).has_value());
  }
}

TEST_CASE("admissible substitutions for the classical systems") {
  Substitution atomic;
  atomic.set(0, fi("p2"));
  CHECK(is_admissible_inqb(atomic));

  Substitution orfree;
  orfree.set(0, fi("~(p1 | p2)"));  // normal form has a single disjunct
  CHECK(is_admissible_inqb(orfree));

  Substitution dup;
  dup.set(0, fi("p1 | p1"));  // join collapses onto its own disjunct
  CHECK(is_admissible_inqb(dup));

  Substitution split;
  split.set(0, fi("p1 | p2"));
  CHECK_FALSE(is_admissible_inqb(split));

  // a genuine question: neither disjunct of p | ~p is equivalent to it
  Substitution question;
  question.set(0, fi("p1 | ~p1"));
  CHECK_FALSE(is_admissible_inqb(question));
}

TEST_CASE("support masks agree with the evaluator") {
  std::mt19937_64 rng(18);
  for (int n = 1; n <= 3; ++n) {
    SupportMasks masks(n);
    ClassicalTeamModel m(n);
    int trials = n == 3 ? 60 : 200;
    for (int t = 0; t < trials; ++t) {
      Formula f = random_formula(rng, lq, 3, n);
      const auto& mask = masks.compute(f);
      ClassicalEvaluator ev(m);
      for (uint32_t team = 0; team < masks.team_count(); ++team)
        REQUIRE(SupportMasks::get(mask, team) == ev.supports(team, f));
    }
  }

  SECTION("validity reads off the full mask") {
    SupportMasks masks(3);
    auto valid = masks.compute(fi("(p0 -> (p1 | p2)) -> ((p0 -> p1) | (p0 -> p2))"));
    CHECK(valid == masks.all_teams());
    auto invalid = masks.compute(fi("p0 | ~p0"));
    CHECK_FALSE(invalid == masks.all_teams());
  }
}
