#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "weaklog/proofsys.hpp"

using namespace weaklog;
using testutil::random_formula;

namespace {

const Signature li = Signature::l_int();
const Signature lq = Signature::l_inq();

Formula fi(const char* text) { return parse_formula(text, li); }
Formula fq(const char* text) { return parse_formula(text, lq); }

// classical two-valued validity of /\gamma -> phi, tensor read as or
bool classically_valid(std::span<const Formula> gamma, const Formula& phi) {
  std::set<int> atom_set;
  for (const auto& g : gamma) collect_atoms(g, atom_set);
  collect_atoms(phi, atom_set);
  std::vector<int> atoms(atom_set.begin(), atom_set.end());
  std::function<bool(const Formula&, uint32_t)> ev = [&](const Formula& f, uint32_t val) {
    if (f.is_atom()) {
      size_t i = std::lower_bound(atoms.begin(), atoms.end(), f.atom_index()) - atoms.begin();
      return ((val >> i) & 1u) != 0;
    }
    const auto& n = f.name();
    if (n == "bot") return false;
    if (n == "and") return ev(f.args()[0], val) && ev(f.args()[1], val);
    if (n == "or" || n == "tensor") return ev(f.args()[0], val) || ev(f.args()[1], val);
    return !ev(f.args()[0], val) || ev(f.args()[1], val);
  };
  for (uint32_t val = 0; val < (1u << atoms.size()); ++val) {
    bool prem = true;
    for (const auto& g : gamma) prem = prem && ev(g, val);
    if (prem && !ev(phi, val)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("axiom system construction") {
  CHECK(axiom_system("inqi").schemas.size() == 10);
  CHECK(axiom_system("inqb").schemas.size() == 11);
  CHECK(axiom_system("inqit").schemas.size() == 15);
  CHECK(axiom_system("inqbt").schemas.size() == 16);
  CHECK(axiom_system("InqB").name == "InqB");
  CHECK(axiom_system("inqi").sig == li);
  CHECK(axiom_system("inqbt").sig == lq);
  CHECK_THROWS_AS(axiom_system("ipc"), std::invalid_argument);
}

TEST_CASE("axiom instances are recognized with their sort constraints") {
  auto sys = axiom_system("inqbt");
  auto ok = [&](const char* ax, const char* inst) {
    const Schema* s = sys.find_schema(ax);
    REQUIRE(s != nullptr);
    return match_schema(*s, fq(inst)).has_value();
  };
  CHECK(ok("A1", "p0 -> (p1 | p2 -> p0)"));
  CHECK(ok("A2", "(p0 -> (p1 -> p2)) -> (p0 -> p1) -> (p0 -> p2)"));
  CHECK(ok("A6", "p0 -> p0 | p1"));
  CHECK(ok("A8", "(p0 -> p2) -> ((p1 -> p2) -> (p0 | p1 -> p2))"));
  CHECK(ok("A10", "(p0 & p1 -> (p2 | p2)) -> ((p0 & p1 -> p2) | (p0 & p1 -> p2))"));
  CHECK_FALSE(ok("A10", "(p0 | p1 -> (p2 | p2)) -> ((p0 | p1 -> p2) | (p0 | p1 -> p2))"));
  CHECK(ok("A11", "p0 * p1 -> ((p0 * p1) * ~p2)"));
  CHECK_FALSE(ok("A11", "p0 | p1 -> ((p0 | p1) * p2)"));
  CHECK(ok("A13", "(p0 | p1) * (p1 | p2) -> ((p0 | p1) * p1) | ((p0 | p1) * p2)"));
  CHECK(ok("A14", "(p0 -> p1 | p2) -> ((p2 -> p0) -> (p0 * p2 -> (p1 | p2) * p0))"));
  CHECK(ok("A15", "(p0 -> p2) -> ((p1 * p1 -> p2) -> (p0 * (p1 * p1) -> p2))"));
  CHECK_FALSE(ok("A15", "(p0 -> p2 | p2) -> ((p1 -> p2 | p2) -> (p0 * p1 -> p2 | p2))"));
  CHECK(ok("DNE", "~~(p0 * ~p1) -> (p0 * ~p1)"));
  CHECK_FALSE(ok("DNE", "~~(p0 | p1) -> (p0 | p1)"));
}

TEST_CASE("derivation checking") {
  auto inqb = axiom_system("inqb");

  SECTION("premise + axiom + modus ponens") {
    std::vector<Formula> premises{fi("p0")};
    Derivation d;
    d.lines.push_back({fi("p0"), Justification::premise(1)});
    d.lines.push_back({fi("p0 -> (p1 -> p0)"), Justification::axiom("A1")});
    d.lines.push_back({fi("p1 -> p0"), Justification::mp(2, 1)});
    auto r = check_derivation(inqb, premises, d, fi("p1 -> p0"));
    CHECK(r.ok);
  }

  SECTION("sort violations are caught at the offending line") {
    Derivation d;
    d.lines.push_back(
        {fi("((p0 | p1) -> (p2 | p2)) -> (((p0 | p1) -> p2) | ((p0 | p1) -> p2))"),
         Justification::axiom("A10")});
    auto r = check_derivation(inqb, {}, d);
    REQUIRE_FALSE(r.ok);
    CHECK(r.first_bad_line == 1);
  }

  SECTION("an empty derivation cannot establish a conclusion") {
    auto r = check_derivation(inqb, {}, Derivation{}, fi("p0 -> p0"));
    CHECK_FALSE(r.ok);
  }

  SECTION("modus ponens index discipline") {
    Derivation d;
    d.lines.push_back({fi("p0 -> p0"), Justification::mp(2, 3)});
    CHECK_FALSE(check_derivation(inqb, {}, d).ok);  // forward references

    Derivation d2;
    d2.lines.push_back({fi("p0 & p1"), Justification::premise(1)});
    d2.lines.push_back({fi("p0"), Justification::mp(1, 1)});  // major is not an implication
    auto r2 = check_derivation(inqb, std::vector<Formula>{fi("p0 & p1")}, d2);
    REQUIRE_FALSE(r2.ok);
    CHECK(r2.first_bad_line == 2);
  }

  SECTION("premise indexing") {
    Derivation d;
    d.lines.push_back({fi("p0"), Justification::premise(2)});
    CHECK_FALSE(check_derivation(inqb, std::vector<Formula>{fi("p0")}, d).ok);
    Derivation d2;
    d2.lines.push_back({fi("p1"), Justification::premise(1)});
    CHECK_FALSE(check_derivation(inqb, std::vector<Formula>{fi("p0")}, d2).ok);
  }

  SECTION("formulas must stay inside the system signature") {
    Derivation d;
    d.lines.push_back({fq("p0 * p1 -> p0 * p1"), Justification::axiom("A1")});
    auto r = check_derivation(inqb, {}, d);
    REQUIRE_FALSE(r.ok);
    CHECK(r.reason == "formula outside the system signature");
  }

  SECTION("double negation elimination is only available classically") {
    Derivation d;
    d.lines.push_back({fi("~~p0 -> p0"), Justification::axiom("DNE")});
    CHECK(check_derivation(inqb, {}, d).ok);
    CHECK_FALSE(check_derivation(axiom_system("inqi"), {}, d).ok);
  }

  SECTION("explicit bindings are verified") {
    MetaBinding good{{"phi", fi("p0")}, {"psi", fi("p1")}};
    Derivation d;
    d.lines.push_back({fi("p0 -> (p1 -> p0)"), Justification::axiom("A1", good)});
    CHECK(check_derivation(inqb, {}, d).ok);

    MetaBinding wrong{{"phi", fi("p1")}, {"psi", fi("p0")}};
    Derivation d2;
    d2.lines.push_back({fi("p0 -> (p1 -> p0)"), Justification::axiom("A1", wrong)});
    CHECK_FALSE(check_derivation(inqb, {}, d2).ok);
  }
}

TEST_CASE("derivation files round-trip") {
  std::string text =
      "p0 ; premise 1\n"
      "\n"
      "p0 -> (p1 -> p0) ; axiom A1\n"
      "p1 -> p0 ; mp 2 1\n";
  auto d = parse_derivation(text, li);
  REQUIRE(d.lines.size() == 3);
  CHECK(d.lines[0].just.kind == Justification::Kind::premise);
  CHECK(d.lines[1].just.axiom_name == "A1");
  CHECK(d.lines[2].just.i == 2);
  CHECK(d.lines[2].just.j == 1);
  CHECK(check_derivation(axiom_system("inqb"), std::vector<Formula>{fi("p0")}, d).ok);

  CHECK_THROWS_AS(parse_derivation("p0 -> p0 axiom A1", li), parse_error);
  CHECK_THROWS_AS(parse_derivation("p0 ; lemma 1", li), parse_error);
  CHECK_THROWS_AS(parse_derivation("p0 ; premise", li), parse_error);
  CHECK_THROWS_AS(parse_derivation("p0 ; mp 1", li), parse_error);
}

TEST_CASE("disjunctive normal form") {
  SECTION("frozen shapes") {
    auto d1 = dnf(fi("p0 | p1"), li);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == fi("p0"));
    CHECK(d1[1] == fi("p1"));

    auto d2 = dnf(fi("p0 -> (p1 | p2)"), li);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0] == fi("p0 -> p1"));
    CHECK(d2[1] == fi("p0 -> p2"));

    auto d3 = dnf(fi("(p0 | p1) -> p2"), li);
    REQUIRE(d3.size() == 1);
    CHECK(d3[0] == fi("(p0 -> p2) & (p1 -> p2)"));

    auto d4 = dnf(fi("(p0 | p1) & (p2 | p0)"), li);
    REQUIRE(d4.size() == 4);
    CHECK(d4[0] == fi("p0 & p2"));
    CHECK(d4[1] == fi("p0 & p0"));
    CHECK(d4[2] == fi("p1 & p2"));
    CHECK(d4[3] == fi("p1 & p0"));

    auto d5 = dnf(fq("(p0 | p1) * p2"), lq);
    REQUIRE(d5.size() == 2);
    CHECK(d5[0] == fq("p0 * p2"));
    CHECK(d5[1] == fq("p1 * p2"));

    // nested choice: ((p0|p1) -> (p2|p0)) has 2^2 = 4 disjuncts
    auto d6 = dnf(fi("(p0 | p1) -> (p2 | p0)"), li);
    REQUIRE(d6.size() == 4);
    CHECK(d6[0] == fi("(p0 -> p2) & (p1 -> p2)"));
    CHECK(d6[1] == fi("(p0 -> p2) & (p1 -> p0)"));
    CHECK(d6[2] == fi("(p0 -> p0) & (p1 -> p2)"));
    CHECK(d6[3] == fi("(p0 -> p0) & (p1 -> p0)"));
  }

  SECTION("outputs are or-free") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
      Formula f = random_formula(rng, lq, 3, 3);
      for (const auto& a : dnf(f, lq)) CHECK(is_or_free(a));
    }
  }

  SECTION("choice-function blowup is capped") {
    std::string ante = "p0";
    for (int i = 1; i <= 12; ++i) ante += " | p" + std::to_string(i);
    CHECK_THROWS_AS(dnf(parse_formula("(" + ante + ") -> (p0 | p1)", li), li), cap_exceeded);
    CHECK_NOTHROW(dnf(parse_formula("(" + ante + ") -> (p0 | p1)", li), li, 8192));
  }

  SECTION("signature discipline") {
    CHECK_THROWS_AS(dnf(fq("p0 * p1"), li), std::invalid_argument);
  }
}

TEST_CASE("univariate fixpoint iteration") {
  SECTION("the five one-variable fixpoints return themselves") {
    for (const char* text : {"bot -> bot", "~~p0", "p0 * ~p0", "p0", "bot"}) {
      auto r = fixpoint_iterate(fq(text));
      INFO(text);
      REQUIRE(r.cycle.size() == 1);
      CHECK(r.cycle[0] == fq(text));
    }
  }

  SECTION("iteration counts") {
    CHECK(fixpoint_iterate(fi("p0")).n == 1);
    auto r = fixpoint_iterate(fi("~~p0"));
    CHECK(r.n == 2);
    CHECK(r.cycle[0] == fi("~~p0"));
  }

  SECTION("negation cycles with period 2") {
    auto r = fixpoint_iterate(fi("~p0"));
    CHECK(r.n == 3);
    REQUIRE(r.cycle.size() == 2);
    CHECK(r.cycle[0] == fi("~p0"));
    CHECK(r.cycle[1] == fi("~~p0"));
  }

  SECTION("preconditions") {
    CHECK_THROWS_AS(fixpoint_iterate(fi("p0 | p1")), std::invalid_argument);
    CHECK_THROWS_AS(fixpoint_iterate(fi("p0 & p1")), std::invalid_argument);
    CHECK_THROWS_AS(fixpoint_iterate(fi("~p0"), 1), std::runtime_error);
  }
}

TEST_CASE("schematic-fragment sampling mechanics") {
  // IPC validity is closed under every substitution, so no sample rejects it
  LogicOracle ipc = [](std::span<const Formula> gamma, const Formula& phi) {
    Formula f = phi;
    for (const auto& g : gamma) f = limp(g, f);
    return ipc_equiv_bounded(f, ltop(), 4);
  };
  std::vector<Substitution> substs;
  Substitution s1;
  s1.set(0, fi("p1 | p2"));
  substs.push_back(s1);
  Substitution s2;
  s2.set(0, fi("~p0"));
  substs.push_back(s2);

  auto r = schm_sample(ipc, {}, fi("p0 -> p0"), substs);
  CHECK(r.in_schm_up_to_sample);
  CHECK_FALSE(r.rejected_by.has_value());

  // an oracle sensitive to or picks out the substitution that introduced it
  LogicOracle orfree = [](std::span<const Formula>, const Formula& phi) {
    return is_or_free(phi);
  };
  auto r2 = schm_sample(orfree, {}, fi("p0 -> p0"), substs);
  REQUIRE_FALSE(r2.in_schm_up_to_sample);
  REQUIRE(r2.rejected_by.has_value());
  CHECK(r2.rejected_by->image(0) == fi("p1 | p2"));
}

TEST_CASE("atomic instances") {
  std::vector<Formula> lambda{fi("~~p0 -> p0")};
  std::vector<int> atoms{2, 5};
  auto inst = atomic_instances(lambda, atoms);
  REQUIRE(inst.size() == 2);
  CHECK(inst[0] == fi("~~p2 -> p2"));
  CHECK(inst[1] == fi("~~p5 -> p5"));

  // closed formulas survive even with no atoms available
  std::vector<Formula> closed{fi("bot -> bot")};
  CHECK(atomic_instances(closed, {}).size() == 1);
  CHECK(atomic_instances(lambda, {}).empty());

  // two-variable template: all pairs, deduplicated
  std::vector<Formula> pair{fi("p0 -> p1")};
  CHECK(atomic_instances(pair, atoms).size() == 4);
}

TEST_CASE("representability cases compare the two oracles") {
  LogicOracle classical = classically_valid;
  LogicOracle intuitionistic = [](std::span<const Formula> gamma, const Formula& phi) {
    Formula f = phi;
    for (const auto& g : gamma) f = limp(g, f);
    return ipc_equiv_bounded(f, ltop(), 4);
  };
  std::vector<Formula> lambda{fi("~~p0 -> p0")};

  std::vector<RepresentabilityCase> cases;
  cases.push_back({{}, fi("~~p1 -> p1")});   // both sides accept
  cases.push_back({{}, fi("p0 | ~p0")});     // classical yes; atom-level DNE cannot recover it
  cases.push_back({{fi("p0")}, fi("p0")});   // premise use

  auto rep = representability_check(classical, intuitionistic, lambda, cases);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].weak);
  CHECK(rep.entries[0].schematic);
  CHECK(rep.entries[0].agree);
  CHECK(rep.entries[1].weak);
  CHECK_FALSE(rep.entries[1].schematic);
  CHECK_FALSE(rep.entries[1].agree);
  CHECK(rep.entries[2].agree);
  CHECK_FALSE(rep.all_agree);
}
