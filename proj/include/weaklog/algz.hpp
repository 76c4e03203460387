#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weaklog/expanded.hpp"
#include "weaklog/proofsys.hpp"

namespace weaklog {

// Structural transformers between formulas and equations.  tau maps a formula
// to a finite set of equations, delta maps an equation to a finite set of
// formulas; both are given by templates, tau over the metavariable _phi and
// delta over _x, _y.  Structurality (substitution commutes with application)
// is automatic for templates instantiated this way.
struct TransformerPair {
  std::vector<Equation> tau;
  std::vector<Formula> delta;
};

// tau = { _phi ~ (bot -> bot) }, delta = { (_x -> _y) & (_y -> _x) }: the
// transformer pair algebraizing the classical team logics over upset-algebra
// families with regular cores.
inline TransformerPair inqb_pair() {
  return {{Equation{Formula::meta("phi"), ltop()}},
          {land(limp(Formula::meta("x"), Formula::meta("y")),
                limp(Formula::meta("y"), Formula::meta("x")))}};
}

namespace detail {

inline void push_unique(std::vector<Equation>& out, Equation e) {
  for (const auto& o : out)
    if (o == e) return;
  out.push_back(std::move(e));
}

inline void push_unique(std::vector<Formula>& out, Formula f) {
  for (const auto& o : out)
    if (o == f) return;
  out.push_back(std::move(f));
}

}  // namespace detail

// Instantiates the tau templates at f.  A template mentioning any
// metavariable other than _phi raises.
inline std::vector<Equation> tau_apply(const TransformerPair& t, const Formula& f) {
  std::vector<Equation> out;
  MetaBinding b{{"phi", f}};
  for (const auto& e : t.tau)
    detail::push_unique(out, Equation{subst_meta(e.lhs, b), subst_meta(e.rhs, b)});
  return out;
}

// tau[Gamma]: union over the members, deduplicated in first-occurrence order.
inline std::vector<Equation> tau_apply(const TransformerPair& t, std::span<const Formula> gamma) {
  std::vector<Equation> out;
  for (const auto& f : gamma)
    for (auto& e : tau_apply(t, f)) detail::push_unique(out, std::move(e));
  return out;
}

inline std::vector<Formula> delta_apply(const TransformerPair& t, const Equation& e) {
  std::vector<Formula> out;
  MetaBinding b{{"x", e.lhs}, {"y", e.rhs}};
  for (const auto& d : t.delta) detail::push_unique(out, subst_meta(d, b));
  return out;
}

inline std::vector<Formula> delta_apply(const TransformerPair& t, std::span<const Equation> theta) {
  std::vector<Formula> out;
  for (const auto& e : theta)
    for (auto& f : delta_apply(t, e)) detail::push_unique(out, std::move(f));
  return out;
}

// delta[tau(f)], the round trip used by the third algebraizability condition.
inline std::vector<Formula> delta_tau(const TransformerPair& t, const Formula& f) {
  auto eqs = tau_apply(t, f);
  return delta_apply(t, std::span<const Equation>(eqs));
}

// ---------------------------------------------------------------------------
// Condition checks on finite families.

struct Alg4Report {
  bool ok = true;
  int algebra_index = -1;
  int a = -1, b = -1;     // first core pair violating the equivalence
  bool expected = false;  // true: a == b but the equations fail; false: distinct pair not separated
  std::string detail;
};

// For every family member and every pair of core elements: a == b must hold
// exactly when all equations of tau[delta(x, y)] hold under {x -> a, y -> b}.
// Pairs are scanned family order first, then lexicographically.
inline Alg4Report check_alg4(std::span<const ExpandedAlgebra> K, const TransformerPair& t) {
  auto ds = delta_apply(t, Equation{Formula::atom(0), Formula::atom(1)});
  std::vector<Equation> eqs = tau_apply(t, std::span<const Formula>(ds));

  Alg4Report r;
  for (size_t ki = 0; ki < K.size(); ++ki) {
    const auto& A = K[ki];
    for (int a : A.core)
      for (int b : A.core) {
        std::map<int, int> assign{{0, a}, {1, b}};
        bool holds = true;
        for (const auto& e : eqs)
          if (!A.alg.holds(e, assign)) {
            holds = false;
            break;
          }
        if (holds == (a == b)) continue;
        r.ok = false;
        r.algebra_index = static_cast<int>(ki);
        r.a = a;
        r.b = b;
        r.expected = (a == b);
        r.detail = r.expected ? "equations fail on an equal pair"
                              : "equations hold on a distinct pair";
        return r;
      }
  }
  return r;
}

struct Alg3Failure {
  Formula phi;
  bool forward;  // true: phi does not prove some member of delta[tau(phi)]
};

struct Alg3Report {
  bool ok = true;
  int checked = 0;
  std::vector<Alg3Failure> failures;
};

// phi and delta[tau(phi)] must be interderivable; both directions go through
// the provided consequence oracle.
inline Alg3Report check_alg3(const LogicOracle& oracle, const TransformerPair& t,
                             std::span<const Formula> corpus) {
  Alg3Report r;
  for (const auto& phi : corpus) {
    ++r.checked;
    auto ds = delta_tau(t, phi);
    std::vector<Formula> just_phi{phi};
    bool fwd = true;
    for (const auto& d : ds)
      if (!oracle(just_phi, d)) {
        fwd = false;
        break;
      }
    if (!fwd) {
      r.ok = false;
      r.failures.push_back({phi, true});
      continue;
    }
    if (!oracle(ds, phi)) {
      r.ok = false;
      r.failures.push_back({phi, false});
    }
  }
  return r;
}

enum class Alg1Verdict { agree_true, agree_false, k_too_small, genuine_failure };

struct Alg1Case {
  std::vector<Formula> gamma;
  Formula phi;
};

struct Alg1CaseResult {
  Alg1Verdict verdict;
  bool oracle_holds;
  bool family_holds;
  CoreEntailment refutation;  // populated when the family side refutes
};

struct Alg1Report {
  bool ok = true;  // false only on a genuine failure
  std::vector<Alg1CaseResult> results;
};

// Compares the oracle verdict on Gamma |- phi against the core consequence
// tau[Gamma] |=c tau(phi) over the finite family K.  A finite family can miss
// refutations of a false oracle verdict, so oracle-false/family-true is
// classified "K too small" rather than failing; oracle-true/family-false is a
// genuine failure.
inline Alg1Report check_alg1_sampled(const LogicOracle& oracle, std::span<const ExpandedAlgebra> K,
                                     const TransformerPair& t, std::span<const Alg1Case> cases) {
  Alg1Report r;
  for (const auto& c : cases) {
    Alg1CaseResult res{};
    res.oracle_holds = oracle(c.gamma, c.phi);
    auto prem = tau_apply(t, std::span<const Formula>(c.gamma));
    res.family_holds = true;
    for (const auto& eq : tau_apply(t, c.phi)) {
      auto ce = core_entails(K, prem, eq);
      if (!ce.entails) {
        res.family_holds = false;
        res.refutation = ce;
        break;
      }
    }
    if (res.oracle_holds == res.family_holds)
      res.verdict = res.oracle_holds ? Alg1Verdict::agree_true : Alg1Verdict::agree_false;
    else if (!res.oracle_holds)
      res.verdict = Alg1Verdict::k_too_small;
    else {
      res.verdict = Alg1Verdict::genuine_failure;
      r.ok = false;
    }
    r.results.push_back(std::move(res));
  }
  return r;
}

struct UniquenessReport {
  bool delta_equivalent = true;
  bool tau_equivalent = true;
  std::optional<Formula> tau_witness;  // corpus formula on which the taus differ
  int algebra_index = -1;
  std::map<int, int> assignment;  // separating core assignment
};

// Two transformer pairs witnessing algebraizability of the same logic must be
// interchangeable: the delta sets interderivable over fresh atoms, and the
// tau images core-equivalent over every family member.
inline UniquenessReport cross_check_uniqueness(const TransformerPair& t0,
                                               const TransformerPair& t1,
                                               const LogicOracle& oracle,
                                               std::span<const ExpandedAlgebra> K,
                                               std::span<const Formula> corpus) {
  UniquenessReport r;

  Equation xy{Formula::atom(0), Formula::atom(1)};
  auto d0 = delta_apply(t0, xy);
  auto d1 = delta_apply(t1, xy);
  for (const auto& f : d1)
    if (!oracle(d0, f)) r.delta_equivalent = false;
  for (const auto& f : d0)
    if (!oracle(d1, f)) r.delta_equivalent = false;

  for (const auto& phi : corpus) {
    auto e0 = tau_apply(t0, phi);
    auto e1 = tau_apply(t1, phi);
    std::set<int> atom_set;
    for (const auto& e : e0) {
      collect_atoms(e.lhs, atom_set);
      collect_atoms(e.rhs, atom_set);
    }
    for (const auto& e : e1) {
      collect_atoms(e.lhs, atom_set);
      collect_atoms(e.rhs, atom_set);
    }
    std::vector<int> atoms(atom_set.begin(), atom_set.end());

    for (size_t ki = 0; ki < K.size(); ++ki) {
      const auto& A = K[ki];
      if (A.core.empty() && !atoms.empty()) continue;
      std::vector<size_t> choice(atoms.size(), 0);
      while (true) {
        std::map<int, int> assign;
        for (size_t i = 0; i < atoms.size(); ++i) assign[atoms[i]] = A.core[choice[i]];
        auto all_hold = [&](const std::vector<Equation>& eqs) {
          for (const auto& e : eqs)
            if (!A.alg.holds(e, assign)) return false;
          return true;
        };
        if (all_hold(e0) != all_hold(e1)) {
          r.tau_equivalent = false;
          r.tau_witness = phi;
          r.algebra_index = static_cast<int>(ki);
          r.assignment = std::move(assign);
          return r;
        }
        size_t i = atoms.size();
        while (i > 0 && ++choice[i - 1] == A.core.size()) choice[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  return r;
}

}  // namespace weaklog
