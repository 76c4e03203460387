#pragma once

#include <array>
#include <unordered_map>

#include "weaklog/proofsys.hpp"

namespace weaklog {

// Classical team semantics: worlds are all valuations of n_atoms atoms, so
// world w makes atom i true iff bit i of w is set.  Teams are world sets.
struct ClassicalTeamModel {
  int n_atoms;

  explicit ClassicalTeamModel(int n) : n_atoms(n) {
    if (n < 0 || n > 5) throw std::invalid_argument("classical team model: 0..5 atoms");
  }
  int world_count() const { return 1 << n_atoms; }
  uint32_t full_team() const {
    return world_count() == 32 ? ~0u : (1u << world_count()) - 1;
  }
  // worlds where atom p holds
  uint32_t atom_worlds(int p) const {
    uint32_t m = 0;
    for (int w = 0; w < world_count(); ++w)
      if ((w >> p) & 1) m |= 1u << w;
    return m;
  }
};

// Recursive support evaluation with memoization keyed by (subformula node,
// team).  Clauses:
//   t |= p        iff every world of t makes p true
//   t |= bot      iff t is empty
//   t |= f & g    iff both
//   t |= f | g    iff either
//   t |= f -> g   iff every subteam supporting f supports g
//   t |= f (x) g  iff t = u union v with u |= f, v |= g
class ClassicalEvaluator {
 public:
  explicit ClassicalEvaluator(ClassicalTeamModel m) : m_(m) {}

  bool supports(uint32_t team, const Formula& f) {
    if (team & ~m_.full_team()) throw std::invalid_argument("team outside the model");
    return eval(team, f);
  }

 private:
  bool eval(uint32_t team, const Formula& f) {
    auto& node_memo = memo_[f.share()];
    auto it = node_memo.find(team);
    if (it != node_memo.end()) return it->second != 0;
    bool r;
    if (f.is_atom()) {
      if (f.atom_index() >= m_.n_atoms)
        throw std::invalid_argument("atom index outside the model");
      r = (team & ~m_.atom_worlds(f.atom_index())) == 0;
    } else {
      const auto& name = f.name();
      if (name == "bot") {
        r = team == 0;
      } else if (name == "and") {
        r = eval(team, f.args()[0]) && eval(team, f.args()[1]);
      } else if (name == "or") {
        r = eval(team, f.args()[0]) || eval(team, f.args()[1]);
      } else if (name == "imp") {
        r = true;
        for (uint32_t u = team;; u = (u - 1) & team) {
          if (eval(u, f.args()[0]) && !eval(u, f.args()[1])) {
            r = false;
            break;
          }
          if (u == 0) break;
        }
      } else if (name == "tensor") {
        // splits t = u + (t \ u) suffice by downward closure
        r = false;
        for (uint32_t u = team;; u = (u - 1) & team) {
          if (eval(u, f.args()[0]) && eval(team & ~u, f.args()[1])) {
            r = true;
            break;
          }
          if (u == 0) break;
        }
      } else {
        throw std::invalid_argument("unsupported connective '" + name + "'");
      }
    }
    node_memo[team] = r ? 1 : 0;
    return r;
  }

  ClassicalTeamModel m_;
  std::unordered_map<std::shared_ptr<const FormulaNode>, std::unordered_map<uint32_t, char>> memo_;
};

inline bool supports_classical(const ClassicalTeamModel& m, uint32_t team, const Formula& f) {
  ClassicalEvaluator ev(m);
  return ev.supports(team, f);
}

// world printed with atom 0 leftmost
inline std::string world_to_string(int world, int n_atoms) {
  std::string s;
  for (int i = 0; i < n_atoms; ++i) s += ((world >> i) & 1) ? '1' : '0';
  return s;
}

inline std::string team_to_string(uint32_t team, int n_atoms) {
  std::string s = "{";
  bool first = true;
  for (int w = 0; w < (1 << n_atoms); ++w)
    if ((team >> w) & 1u) {
      if (!first) s += ", ";
      s += world_to_string(w, n_atoms);
      first = false;
    }
  return s + "}";
}

struct InqbEntailment {
  bool entails = true;
  std::vector<int> atoms;     // occurring atoms, ascending; bit i of a world = atoms[i]
  uint32_t counter_team = 0;  // least counterexample team when refuted
};

// Decision oracle for the classical systems: entailment over every team of
// the canonical model on the occurring atoms.  Works for both the or-only
// fragment and the tensor signature.
inline InqbEntailment inqb_entails(std::span<const Formula> gamma, const Formula& f) {
  std::set<int> atom_set;
  for (const auto& g : gamma) collect_atoms(g, atom_set);
  collect_atoms(f, atom_set);
  InqbEntailment out;
  out.atoms.assign(atom_set.begin(), atom_set.end());
  int n = static_cast<int>(out.atoms.size());
  if (n > 4) throw std::invalid_argument("inqb_entails: more than 4 atoms");

  Substitution compact;
  for (int i = 0; i < n; ++i) compact.set(out.atoms[i], Formula::atom(i));
  std::vector<Formula> cg;
  for (const auto& g : gamma) cg.push_back(compact.apply(g));
  Formula cf = compact.apply(f);

  ClassicalTeamModel m(n);
  ClassicalEvaluator ev(m);
  uint64_t teams = uint64_t{1} << m.world_count();
  for (uint64_t t = 0; t < teams; ++t) {
    uint32_t team = static_cast<uint32_t>(t);
    bool prem = true;
    for (const auto& g : cg)
      if (!ev.supports(team, g)) {
        prem = false;
        break;
      }
    if (prem && !ev.supports(team, cf)) {
      out.entails = false;
      out.counter_team = team;
      return out;
    }
  }
  return out;
}

// Kripke team semantics over a poset with persistent valuations.
struct KripkeTeamModel {
  FinitePoset poset;
  std::map<int, uint32_t> valuation;  // atom -> upward-closed point set

  KripkeTeamModel(FinitePoset p, std::map<int, uint32_t> v)
      : poset(std::move(p)), valuation(std::move(v)) {
    for (const auto& [atom, up] : valuation) {
      if (atom < 0) throw std::invalid_argument("negative atom");
      if (!poset.is_upset(up))
        throw std::invalid_argument("valuation of p" + std::to_string(atom) +
                                    " is not upward closed");
    }
  }

  uint32_t full_team() const {
    return poset.size() == 32 ? ~0u : (1u << poset.size()) - 1;
  }
  // all points reachable upward from the team
  uint32_t successors(uint32_t team) const {
    uint32_t r = 0;
    for (int w = 0; w < poset.size(); ++w)
      if ((team >> w) & 1u) r |= poset.up_mask(w);
    return r;
  }
};

// Clauses as in the classical case except that implication quantifies over
// the teams inside the upward closure of t:
//   t |= f -> g  iff every u inside successors(t) with u |= f has u |= g
class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(KripkeTeamModel m) : m_(std::move(m)) {}

  const KripkeTeamModel& model() const { return m_; }

  bool supports(uint32_t team, const Formula& f) {
    if (team & ~m_.full_team()) throw std::invalid_argument("team outside the model");
    return eval(team, f);
  }

 private:
  bool eval(uint32_t team, const Formula& f) {
    auto& node_memo = memo_[f.share()];
    auto it = node_memo.find(team);
    if (it != node_memo.end()) return it->second != 0;
    bool r;
    if (f.is_atom()) {
      auto vit = m_.valuation.find(f.atom_index());
      if (vit == m_.valuation.end())
        throw std::invalid_argument("no valuation for p" + std::to_string(f.atom_index()));
      r = (team & ~vit->second) == 0;
    } else {
      const auto& name = f.name();
      if (name == "bot") {
        r = team == 0;
      } else if (name == "and") {
        r = eval(team, f.args()[0]) && eval(team, f.args()[1]);
      } else if (name == "or") {
        r = eval(team, f.args()[0]) || eval(team, f.args()[1]);
      } else if (name == "imp") {
        uint32_t range = m_.successors(team);
        r = true;
        for (uint32_t u = range;; u = (u - 1) & range) {
          if (eval(u, f.args()[0]) && !eval(u, f.args()[1])) {
            r = false;
            break;
          }
          if (u == 0) break;
        }
      } else if (name == "tensor") {
        r = false;
        for (uint32_t u = team;; u = (u - 1) & team) {
          if (eval(u, f.args()[0]) && eval(team & ~u, f.args()[1])) {
            r = true;
            break;
          }
          if (u == 0) break;
        }
      } else {
        throw std::invalid_argument("unsupported connective '" + name + "'");
      }
    }
    node_memo[team] = r ? 1 : 0;
    return r;
  }

  KripkeTeamModel m_;
  std::unordered_map<std::shared_ptr<const FormulaNode>, std::unordered_map<uint32_t, char>> memo_;
};

inline bool supports_kripke(const KripkeTeamModel& m, uint32_t team, const Formula& f) {
  KripkeEvaluator ev(m);
  return ev.supports(team, f);
}

enum class TeamChoice { all, full_only };

struct KripkeCountermodel {
  int poset_index;  // into all_posets_upto_iso(frame_size)
  KripkeTeamModel model;
  uint32_t team;
};

// First refuting (frame, valuation, team) in a fixed enumeration order:
// frames as listed by all_posets_upto_iso; valuations as an odometer over
// each atom's upsets (ascending), first atom most significant; teams
// ascending.  Deterministic, so specific countermodels can be frozen.
inline std::optional<KripkeCountermodel> inqi_countermodel_search(
    const Formula& f, int frame_size = 4, TeamChoice team_choice = TeamChoice::all) {
  auto atoms = atoms_of(f);
  const auto& posets = all_posets_upto_iso(frame_size);
  for (size_t pi = 0; pi < posets.size(); ++pi) {
    const auto& poset = posets[pi];
    auto upsets = poset.all_upsets();
    std::vector<size_t> choice(atoms.size(), 0);
    while (true) {
      std::map<int, uint32_t> val;
      for (size_t i = 0; i < atoms.size(); ++i) val[atoms[i]] = upsets[choice[i]];
      KripkeEvaluator ev(KripkeTeamModel(poset, std::move(val)));
      uint32_t full = ev.model().full_team();
      if (team_choice == TeamChoice::full_only) {
        if (!ev.supports(full, f))
          return KripkeCountermodel{static_cast<int>(pi), ev.model(), full};
      } else {
        for (uint32_t t = 0; t <= full; ++t)
          if (!ev.supports(t, f))
            return KripkeCountermodel{static_cast<int>(pi), ev.model(), t};
      }
      size_t i = atoms.size();
      while (i > 0 && choice[i - 1] == upsets.size() - 1) choice[--i] = 0;
      if (i == 0) break;
      ++choice[i - 1];
    }
  }
  return std::nullopt;
}

// A substitution is admissible for the classical systems when each image has
// a normal form whose join collapses, up to team equivalence, onto one of
// its own disjuncts.
inline bool is_admissible_inqb(const Substitution& s) {
  for (const auto& [atom, image] : s.map()) {
    (void)atom;
    auto disjuncts = dnf(image, Signature::l_inq());
    if (disjuncts.size() == 1) continue;  // or-free image
    Formula join = disjuncts[0];
    for (size_t i = 1; i < disjuncts.size(); ++i) join = lor(join, disjuncts[i]);
    bool ok = false;
    for (const auto& a : disjuncts) {
      std::vector<Formula> left{join}, right{a};
      if (inqb_entails(left, a).entails && inqb_entails(right, join).entails) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

// Support profile of formulas over the full team space of an n-atom
// classical model (n <= 3, so at most 256 teams), as 256-bit masks.  This is
// the throughput engine behind the batch validity checks; it must agree with
// ClassicalEvaluator everywhere, which the tests enforce.
class SupportMasks {
 public:
  using Mask = std::array<uint64_t, 4>;

  explicit SupportMasks(int n_atoms) : m_(n_atoms) {
    if (n_atoms > 3) throw std::invalid_argument("SupportMasks: at most 3 atoms");
    teams_ = 1u << m_.world_count();
    subsets_.resize(teams_);
    for (uint32_t t = 0; t < teams_; ++t) {
      Mask m{};
      for (uint32_t u = t;; u = (u - 1) & t) {
        set(m, u);
        if (u == 0) break;
      }
      subsets_[t] = m;
    }
    atom_masks_.resize(m_.n_atoms);
    for (int p = 0; p < m_.n_atoms; ++p) {
      Mask m{};
      uint32_t worlds = m_.atom_worlds(p);
      for (uint32_t t = 0; t < teams_; ++t)
        if ((t & ~worlds) == 0) set(m, t);
      atom_masks_[p] = m;
    }
    bot_ = Mask{};
    set(bot_, 0);
  }

  int n_atoms() const { return m_.n_atoms; }
  uint32_t team_count() const { return teams_; }

  static bool get(const Mask& m, uint32_t team) {
    return (m[team >> 6] >> (team & 63)) & 1u;
  }
  static void set(Mask& m, uint32_t team) { m[team >> 6] |= uint64_t{1} << (team & 63); }

  const Mask& atom_mask(int p) const { return atom_masks_.at(p); }
  const Mask& bot_mask() const { return bot_; }

  Mask m_and(const Mask& a, const Mask& b) const {
    return {a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]};
  }
  Mask m_or(const Mask& a, const Mask& b) const {
    return {a[0] | b[0], a[1] | b[1], a[2] | b[2], a[3] | b[3]};
  }
  Mask m_imp(const Mask& a, const Mask& b) const {
    Mask bad{a[0] & ~b[0], a[1] & ~b[1], a[2] & ~b[2], a[3] & ~b[3]};
    Mask out{};
    for (uint32_t t = 0; t < teams_; ++t) {
      const Mask& sub = subsets_[t];
      if (((sub[0] & bad[0]) | (sub[1] & bad[1]) | (sub[2] & bad[2]) | (sub[3] & bad[3])) == 0)
        set(out, t);
    }
    return out;
  }
  Mask m_tensor(const Mask& a, const Mask& b) const {
    Mask out{};
    for (uint32_t t = 0; t < teams_; ++t) {
      for (uint32_t u = t;; u = (u - 1) & t) {
        if (get(a, u) && get(b, t & ~u)) {
          set(out, t);
          break;
        }
        if (u == 0) break;
      }
    }
    return out;
  }

  // memoized by subformula node identity
  const Mask& compute(const Formula& f) {
    auto it = memo_.find(f.share());
    if (it != memo_.end()) return it->second;
    Mask m;
    if (f.is_atom()) {
      m = atom_mask(f.atom_index());
    } else if (f.name() == "bot") {
      m = bot_;
    } else {
      const Mask& a = compute(f.args()[0]);
      const Mask& b = compute(f.args()[1]);
      if (f.name() == "and") m = m_and(a, b);
      else if (f.name() == "or") m = m_or(a, b);
      else if (f.name() == "imp") m = m_imp(a, b);
      else if (f.name() == "tensor") m = m_tensor(a, b);
      else throw std::invalid_argument("unsupported connective '" + f.name() + "'");
    }
    return memo_.emplace(f.share(), m).first->second;
  }

  // full-team mask: the valid formulas are those supported by every team
  Mask all_teams() const {
    Mask m{};
    for (uint32_t t = 0; t < teams_; ++t) set(m, t);
    return m;
  }

 private:
  ClassicalTeamModel m_;
  uint32_t teams_;
  std::vector<Mask> subsets_;
  std::vector<Mask> atom_masks_;
  Mask bot_;
  std::unordered_map<std::shared_ptr<const FormulaNode>, Mask> memo_;
};

}  // namespace weaklog
