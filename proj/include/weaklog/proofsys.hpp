#pragma once

#include <functional>
#include <sstream>
#include <unordered_set>

#include "weaklog/heyting.hpp"
#include "weaklog/parser.hpp"
#include "weaklog/schema.hpp"

namespace weaklog {

// Hilbert system over a fixed signature: named axiom schemas plus modus
// ponens.
struct AxiomSystem {
  std::string name;
  Signature sig;
  std::vector<Schema> schemas;

  const Schema* find_schema(std::string_view id) const {
    for (const auto& s : schemas)
      if (s.name == id) return &s;
    return nullptr;
  }
};

namespace detail {

inline std::vector<Schema> base_schemas(const Signature& sig) {
  auto mk = [&](const char* name, const char* text,
                std::initializer_list<const char*> standard) {
    Schema s;
    s.name = name;
    s.tmpl = parse_formula(text, sig, /*allow_meta=*/true);
    for (const char* v : standard) s.sorts[v] = Sort::standard;
    return s;
  };
  return {
      mk("A1", "_phi -> (_psi -> _phi)", {}),
      mk("A2", "(_phi -> (_psi -> _chi)) -> (_phi -> _psi) -> (_phi -> _chi)", {}),
      mk("A3", "_phi & _psi -> _phi", {}),
      mk("A4", "_phi & _psi -> _psi", {}),
      mk("A5", "_phi -> (_psi -> _phi & _psi)", {}),
      mk("A6", "_phi -> _phi | _psi", {}),
      mk("A7", "_psi -> _phi | _psi", {}),
      mk("A8", "(_phi -> _chi) -> ((_psi -> _chi) -> (_phi | _psi -> _chi))", {}),
      mk("A9", "bot -> _phi", {}),
      mk("A10", "(_alpha -> (_phi | _psi)) -> ((_alpha -> _phi) | (_alpha -> _psi))",
         {"alpha"}),
  };
}

inline std::vector<Schema> tensor_schemas(const Signature& sig) {
  auto mk = [&](const char* name, const char* text,
                std::initializer_list<const char*> standard) {
    Schema s;
    s.name = name;
    s.tmpl = parse_formula(text, sig, /*allow_meta=*/true);
    for (const char* v : standard) s.sorts[v] = Sort::standard;
    return s;
  };
  return {
      mk("A11", "_alpha -> (_alpha * _beta)", {"alpha", "beta"}),
      mk("A12", "(_alpha * _beta) -> (_beta * _alpha)", {"alpha", "beta"}),
      mk("A13", "_phi * (_psi | _chi) -> (_phi * _psi) | (_phi * _chi)", {}),
      mk("A14", "(_phi -> _chi) -> ((_psi -> _tau) -> (_phi * _psi -> _chi * _tau))", {}),
      mk("A15", "(_alpha -> _gamma) -> ((_beta -> _gamma) -> (_alpha * _beta -> _gamma))",
         {"alpha", "beta", "gamma"}),
  };
}

inline Schema dne_schema(const Signature& sig) {
  Schema s;
  s.name = "DNE";
  s.tmpl = parse_formula("~~_alpha -> _alpha", sig, /*allow_meta=*/true);
  s.sorts["alpha"] = Sort::standard;
  return s;
}

}  // namespace detail

// inqi:  A1-A10 over and/or/imp/bot
// inqb:  inqi plus double negation elimination for or-free formulas
// inqit: A1-A15 over the tensor signature
// inqbt: inqit plus double negation elimination for or-free formulas
inline AxiomSystem axiom_system(std::string_view name) {
  AxiomSystem sys;
  if (name == "inqi" || name == "InqI") {
    sys = {"InqI", Signature::l_int(), detail::base_schemas(Signature::l_int())};
  } else if (name == "inqb" || name == "InqB") {
    sys = {"InqB", Signature::l_int(), detail::base_schemas(Signature::l_int())};
    sys.schemas.push_back(detail::dne_schema(sys.sig));
  } else if (name == "inqit" || name == "InqIt") {
    sys = {"InqIt", Signature::l_inq(), detail::base_schemas(Signature::l_inq())};
    auto extra = detail::tensor_schemas(sys.sig);
    sys.schemas.insert(sys.schemas.end(), extra.begin(), extra.end());
  } else if (name == "inqbt" || name == "InqBt") {
    sys = axiom_system("inqit");
    sys.name = "InqBt";
    sys.schemas.push_back(detail::dne_schema(sys.sig));
  } else {
    throw std::invalid_argument("unknown axiom system: " + std::string(name));
  }
  return sys;
}

struct Justification {
  enum class Kind { axiom, premise, mp };
  Kind kind;
  std::string axiom_name;               // axiom lines
  std::optional<MetaBinding> binding;   // optional: verified when provided
  int i = 0;                            // premise index, or implication line for mp (1-based)
  int j = 0;                            // antecedent line for mp (1-based)

  static Justification axiom(std::string name, std::optional<MetaBinding> b = std::nullopt) {
    return {Kind::axiom, std::move(name), std::move(b), 0, 0};
  }
  static Justification premise(int i) { return {Kind::premise, "", std::nullopt, i, 0}; }
  static Justification mp(int i, int j) { return {Kind::mp, "", std::nullopt, i, j}; }
};

struct DerivationLine {
  Formula formula;
  Justification just;
};

struct Derivation {
  std::vector<DerivationLine> lines;
};

struct DerivationCheck {
  bool ok = true;
  int first_bad_line = -1;  // 1-based
  std::string reason;
};

// Verifies a Hilbert derivation line by line.  Axiom lines must match the
// named schema including its sort constraints; mp i j requires line i to be
// (line j) -> (current line), with both indices strictly earlier.
inline DerivationCheck check_derivation(const AxiomSystem& sys,
                                        std::span<const Formula> premises, const Derivation& d,
                                        std::optional<Formula> conclusion = std::nullopt) {
  auto fail = [](int line, std::string reason) {
    return DerivationCheck{false, line, std::move(reason)};
  };
  for (size_t k = 0; k < d.lines.size(); ++k) {
    int lineno = static_cast<int>(k) + 1;
    const auto& [f, just] = d.lines[k];
    if (!well_formed_over(f, sys.sig))
      return fail(lineno, "formula outside the system signature");
    switch (just.kind) {
      case Justification::Kind::axiom: {
        const Schema* s = sys.find_schema(just.axiom_name);
        if (!s) return fail(lineno, "unknown axiom " + just.axiom_name);
        if (just.binding) {
          Formula inst;
          try {
            inst = instantiate_schema(*s, *just.binding);
          } catch (const std::exception& e) {
            return fail(lineno, std::string("bad axiom binding: ") + e.what());
          }
          if (!(inst == f)) return fail(lineno, "binding does not produce the line");
        } else if (!match_schema(*s, f)) {
          return fail(lineno, "not an instance of " + just.axiom_name);
        }
        break;
      }
      case Justification::Kind::premise: {
        if (just.i < 1 || just.i > static_cast<int>(premises.size()))
          return fail(lineno, "premise index out of range");
        if (!(premises[just.i - 1] == f)) return fail(lineno, "premise mismatch");
        break;
      }
      case Justification::Kind::mp: {
        if (just.i < 1 || just.i > static_cast<int>(k) || just.j < 1 ||
            just.j > static_cast<int>(k))
          return fail(lineno, "mp indices must point at earlier lines");
        const Formula& impl = d.lines[just.i - 1].formula;
        const Formula& ante = d.lines[just.j - 1].formula;
        if (!impl.is_app() || impl.name() != "imp")
          return fail(lineno, "mp major premise is not an implication");
        if (!(impl.args()[0] == ante)) return fail(lineno, "mp antecedent mismatch");
        if (!(impl.args()[1] == f)) return fail(lineno, "mp consequent mismatch");
        break;
      }
    }
  }
  if (conclusion) {
    if (d.lines.empty() || !(d.lines.back().formula == *conclusion))
      return fail(static_cast<int>(d.lines.size()),
                  "derivation does not end in the required conclusion");
  }
  return {};
}

// One step per line: `<formula> ; axiom <name> | premise <i> | mp <i> <j>`.
// Blank lines are skipped.
inline Derivation parse_derivation(std::string_view text, const Signature& sig) {
  Derivation d;
  size_t pos = 0, lineno = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    size_t nonws = line.find_first_not_of(" \t\r");
    if (nonws == std::string_view::npos) {
      if (pos > text.size()) break;
      continue;
    }
    size_t semi = line.rfind(';');
    if (semi == std::string_view::npos)
      throw parse_error("derivation line " + std::to_string(lineno) + ": missing ';'", 0);
    Formula f = parse_formula(line.substr(0, semi), sig);
    std::istringstream just(std::string(line.substr(semi + 1)));
    std::string tag;
    just >> tag;
    if (tag == "axiom") {
      std::string name;
      just >> name;
      if (name.empty())
        throw parse_error("derivation line " + std::to_string(lineno) + ": missing axiom name",
                          0);
      d.lines.push_back({f, Justification::axiom(name)});
    } else if (tag == "premise") {
      int i;
      if (!(just >> i))
        throw parse_error("derivation line " + std::to_string(lineno) + ": missing index", 0);
      d.lines.push_back({f, Justification::premise(i)});
    } else if (tag == "mp") {
      int i, j;
      if (!(just >> i >> j))
        throw parse_error("derivation line " + std::to_string(lineno) + ": mp needs two indices",
                          0);
      d.lines.push_back({f, Justification::mp(i, j)});
    } else {
      throw parse_error("derivation line " + std::to_string(lineno) + ": unknown justification '" +
                            tag + "'",
                        0);
    }
    if (pos > text.size()) break;
  }
  return d;
}

// Disjunctive normal form: a list of or-free formulas whose join is
// team-equivalent to the input.  No simplification is applied.
//   atoms, bot        -> singleton
//   f | g             -> concatenation
//   f & g, f (x) g    -> pairwise combination, left operand outermost
//   f -> g            -> for antecedent disjuncts a_0..a_{I-1} and consequent
//                        disjuncts b_0..b_{J-1}, one conjunction
//                        (a_0 -> b_{c(0)}) & ... per choice c, enumerated
//                        with the leftmost index most significant
inline std::vector<Formula> dnf(const Formula& f, const Signature& sig, size_t cap = 4096) {
  if (!well_formed_over(f, sig))
    throw std::invalid_argument("dnf: formula outside the signature");
  std::function<std::vector<Formula>(const Formula&)> rec =
      [&](const Formula& g) -> std::vector<Formula> {
    if (g.is_atom()) return {g};
    const auto& name = g.name();
    if (name == "bot") return {g};
    if (name == "or") {
      auto l = rec(g.args()[0]), r = rec(g.args()[1]);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    if (name == "and" || name == "tensor") {
      auto l = rec(g.args()[0]), r = rec(g.args()[1]);
      std::vector<Formula> out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l)
        for (const auto& b : r) out.push_back(Formula::app(name, {a, b}));
      return out;
    }
    if (name == "imp") {
      auto as = rec(g.args()[0]), bs = rec(g.args()[1]);
      size_t count = 1;
      for (size_t i = 0; i < as.size(); ++i) {
        count *= bs.size();
        if (count > cap)
          throw cap_exceeded("dnf: implication needs " + std::to_string(bs.size()) + "^" +
                             std::to_string(as.size()) + " choice functions (cap " +
                             std::to_string(cap) + ")");
      }
      std::vector<Formula> out;
      out.reserve(count);
      std::vector<size_t> choice(as.size(), 0);
      while (true) {
        Formula conj = limp(as[0], bs[choice[0]]);
        for (size_t i = 1; i < as.size(); ++i) conj = land(conj, limp(as[i], bs[choice[i]]));
        out.push_back(conj);
        size_t i = as.size();
        while (i > 0 && choice[i - 1] == bs.size() - 1) choice[--i] = 0;
        if (i == 0) break;
        ++choice[i - 1];
      }
      return out;
    }
    throw std::invalid_argument("dnf: unsupported connective '" + name + "'");
  };
  return rec(f);
}

struct FixpointResult {
  int n = 0;                   // iterations applied when detection fired
  std::vector<Formula> cycle;  // one element: fixpoint; two: period-2 alternation
};

// Iterates substitution of a one-variable or-free formula into itself,
// comparing successive iterates with bounded Heyting-algebra equivalence
// (tensor read as join).  rho^0 is the variable itself; the result reports
// either the stabilized iterate or a period-2 cycle.
inline FixpointResult fixpoint_iterate(const Formula& rho, int max_n = 8, int bound = 6) {
  if (contains_connective(rho, "or"))
    throw std::invalid_argument("fixpoint_iterate: rho must be or-free");
  auto atoms = atoms_of(rho);
  if (atoms.size() > 1)
    throw std::invalid_argument("fixpoint_iterate: rho must have at most one atom");
  int var = atoms.empty() ? 0 : atoms[0];

  std::vector<Formula> iterates{Formula::atom(var)};  // rho^0
  for (int n = 1; n <= max_n; ++n) {
    Substitution s;
    s.set(var, iterates.back());
    iterates.push_back(s.apply(rho));
    if (ipc_equiv_bounded(iterates[n], iterates[n - 1], bound))
      return {n, {iterates[n - 1]}};
    if (n >= 2 && ipc_equiv_bounded(iterates[n], iterates[n - 2], bound))
      return {n, {iterates[n - 2], iterates[n - 1]}};
  }
  throw std::runtime_error("fixpoint_iterate: no fixpoint or 2-cycle within " +
                           std::to_string(max_n) + " iterations");
}

// Decides Gamma |- phi for some logic; used to plug semantic deciders into
// the schematic-fragment utilities.
using LogicOracle = std::function<bool(std::span<const Formula>, const Formula&)>;

struct SchmSampleResult {
  bool in_schm_up_to_sample = true;
  std::optional<Substitution> rejected_by;
};

// Tests closure of Gamma |- phi under the supplied substitutions.  A negative
// answer is conclusive for schematic-fragment membership; a positive one is
// only as strong as the sample.
inline SchmSampleResult schm_sample(const LogicOracle& oracle, std::span<const Formula> gamma,
                                    const Formula& phi, std::span<const Substitution> substs) {
  for (const auto& s : substs) {
    std::vector<Formula> sg;
    sg.reserve(gamma.size());
    for (const auto& g : gamma) sg.push_back(s.apply(g));
    if (!oracle(sg, s.apply(phi))) return {false, s};
  }
  return {};
}

// All substitution instances of the formulas in lambda sending their atoms
// into `atoms` (deduplicated).
inline std::vector<Formula> atomic_instances(std::span<const Formula> lambda,
                                             std::span<const int> atoms) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  for (const auto& l : lambda) {
    auto vars = atoms_of(l);
    std::vector<size_t> choice(vars.size(), 0);
    if (vars.empty()) {
      if (seen.insert(l).second) out.push_back(l);
      continue;
    }
    if (atoms.empty()) continue;
    while (true) {
      Substitution s;
      for (size_t i = 0; i < vars.size(); ++i) s.set(vars[i], Formula::atom(atoms[choice[i]]));
      Formula inst = s.apply(l);
      if (seen.insert(inst).second) out.push_back(inst);
      size_t i = vars.size();
      while (i > 0 && choice[i - 1] == atoms.size() - 1) choice[--i] = 0;
      if (i == 0) break;
      ++choice[i - 1];
    }
  }
  return out;
}

struct RepresentabilityCase {
  std::vector<Formula> gamma;
  Formula phi;
};

struct RepresentabilityReport {
  struct Entry {
    bool weak = false;        // Gamma |- phi in the weak logic
    bool schematic = false;   // Gamma + At[Lambda] |- phi in the standard logic
    bool agree = false;
  };
  std::vector<Entry> entries;
  bool all_agree = true;
};

// Tests, case by case, whether the weak logic coincides with the standard
// logic augmented by the atomic instances of lambda on the case's atoms.
inline RepresentabilityReport representability_check(const LogicOracle& weak_oracle,
                                                     const LogicOracle& schm_oracle,
                                                     std::span<const Formula> lambda,
                                                     std::span<const RepresentabilityCase> cases) {
  RepresentabilityReport rep;
  for (const auto& c : cases) {
    std::set<int> atom_set;
    for (const auto& g : c.gamma) collect_atoms(g, atom_set);
    collect_atoms(c.phi, atom_set);
    std::vector<int> atoms(atom_set.begin(), atom_set.end());

    RepresentabilityReport::Entry e;
    e.weak = weak_oracle(c.gamma, c.phi);
    std::vector<Formula> augmented = c.gamma;
    for (auto& inst : atomic_instances(lambda, atoms)) augmented.push_back(std::move(inst));
    e.schematic = schm_oracle(augmented, c.phi);
    e.agree = e.weak == e.schematic;
    rep.all_agree = rep.all_agree && e.agree;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace weaklog
