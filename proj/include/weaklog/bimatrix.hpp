#pragma once

#include <map>
#include <string>
#include <vector>

#include "weaklog/expanded.hpp"

namespace weaklog {

// A finite algebra with two designated predicates: a truth set driving
// consequence, and a core restricting admissible valuations.
struct Bimatrix {
  FiniteAlgebra alg;
  std::vector<int> truth;
  std::vector<int> core;

  Bimatrix(FiniteAlgebra a, std::vector<int> t, std::vector<int> c)
      : alg(std::move(a)), truth(std::move(t)), core(std::move(c)) {
    for (auto* s : {&truth, &core}) {
      std::sort(s->begin(), s->end());
      s->erase(std::unique(s->begin(), s->end()), s->end());
      for (int x : *s)
        if (x < 0 || x >= alg.size())
          throw std::invalid_argument("designated element outside the universe");
    }
  }

  bool in_truth(int x) const { return std::binary_search(truth.begin(), truth.end(), x); }
  bool in_core(int x) const { return std::binary_search(core.begin(), core.end(), x); }

  bool operator==(const Bimatrix& o) const {
    return alg == o.alg && truth == o.truth && core == o.core;
  }
};

struct BimatrixEntailment {
  bool entails = true;
  bool vacuous = false;     // no core valuation existed anywhere in K
  int matrix_index = -1;    // set when refuted
  std::map<int, int> witness;  // atom -> core element of the refuting valuation
};

// Gamma entails phi over the family when every valuation of the occurring
// atoms into core elements that sends all premises into the truth set also
// sends phi there.  Valuations are enumerated lexicographically (atoms
// ascending, core ascending), premises pruned as soon as their atoms are
// assigned, so the first witness is deterministic.
inline BimatrixEntailment bimatrix_entails(std::span<const Bimatrix> K,
                                           std::span<const Formula> gamma, const Formula& phi) {
  std::set<int> atom_set;
  for (const auto& g : gamma) collect_atoms(g, atom_set);
  collect_atoms(phi, atom_set);
  std::vector<int> atoms(atom_set.begin(), atom_set.end());

  BimatrixEntailment result;
  result.vacuous = true;

  for (size_t ki = 0; ki < K.size(); ++ki) {
    const auto& M = K[ki];
    if (M.core.empty() && !atoms.empty()) continue;
    result.vacuous = false;

    std::vector<CompiledTerm> prems;
    std::vector<int> prem_last;  // deepest atom position occurring in the premise
    for (const auto& g : gamma) {
      prems.emplace_back(M.alg, g, atoms);
      std::set<int> own;
      collect_atoms(g, own);
      int last = -1;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (own.count(atoms[i])) last = static_cast<int>(i);
      prem_last.push_back(last);
    }
    CompiledTerm head(M.alg, phi, atoms);

    std::vector<int> assign(atoms.size(), 0);
    auto rec = [&](auto&& self, size_t depth) -> bool {
      for (size_t pi = 0; pi < prems.size(); ++pi)
        if (prem_last[pi] == static_cast<int>(depth) - 1 &&
            !M.in_truth(prems[pi].eval(assign)))
          return true;  // premise escapes the truth set: prune, no refutation here
      if (depth == atoms.size()) {
        if (M.in_truth(head.eval(assign))) return true;
        result.entails = false;
        result.matrix_index = static_cast<int>(ki);
        for (size_t i = 0; i < atoms.size(); ++i) result.witness[atoms[i]] = assign[i];
        return false;
      }
      for (int c : M.core) {
        assign[depth] = c;
        if (!self(self, depth + 1)) return false;
      }
      return true;
    };
    if (!rec(rec, 0)) return result;
  }
  return result;
}

struct LeibnizReduction {
  Bimatrix reduced;
  std::vector<int> projection;  // old element -> new element
};

// Quotients the matrix by the largest congruence whose blocks are pure for
// both predicates: elements start partitioned by (truth, core) membership and
// are refined until stable under every operation with parameters.  On finite
// matrices this computes indistinguishability under all unary polynomial
// translations at once.
inline LeibnizReduction leibniz_reduce(const Bimatrix& m) {
  int n = m.alg.size();
  Partition init;
  init.block.resize(n);
  for (int a = 0; a < n; ++a)
    init.block[a] = (m.in_truth(a) ? 2 : 0) | (m.in_core(a) ? 1 : 0);

  Partition cong = coarsest_stable_partition(m.alg, init);
  auto [qalg, proj] = quotient_algebra(m.alg, cong);

  int q = qalg.size();
  std::vector<int> qtruth, qcore;
  std::vector<int> seen_truth(q, -1), seen_core(q, -1);
  for (int a = 0; a < n; ++a) {
    int b = proj[a];
    int t = m.in_truth(a) ? 1 : 0, c = m.in_core(a) ? 1 : 0;
    if (seen_truth[b] == -1) {
      seen_truth[b] = t;
      seen_core[b] = c;
      if (t) qtruth.push_back(b);
      if (c) qcore.push_back(b);
    } else if (seen_truth[b] != t || seen_core[b] != c) {
      throw std::logic_error("reduction block mixes predicate membership");
    }
  }
  return {Bimatrix(std::move(qalg), std::move(qtruth), std::move(qcore)), std::move(proj)};
}

// Isomorphism of bimatrices: a bijective homomorphism matching both
// predicates exactly.  Intended for small universes.
inline bool bimatrix_isomorphic(const Bimatrix& a, const Bimatrix& b) {
  if (a.alg.size() != b.alg.size() || a.truth.size() != b.truth.size() ||
      a.core.size() != b.core.size())
    return false;
  for (const auto& h : find_homomorphisms(a.alg, b.alg)) {
    std::vector<char> hit(b.alg.size(), 0);
    bool ok = true;
    for (int x = 0; x < a.alg.size() && ok; ++x) {
      if (hit[h[x]]) ok = false;
      hit[h[x]] = 1;
      if (a.in_truth(x) != b.in_truth(h[x])) ok = false;
      if (a.in_core(x) != b.in_core(h[x])) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Horn export.

struct LogicPair {
  std::vector<Formula> gamma;
  Formula phi;
};

// One pair per line: comma-separated premises, "|-", conclusion; premises may
// be empty.  '#' starts a comment, blank lines are skipped.
inline std::vector<LogicPair> parse_logic_pairs(std::string_view text, const Signature& sig) {
  std::vector<LogicPair> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);

    size_t turn = line.find("|-");
    if (turn == std::string_view::npos)
      throw std::invalid_argument("logic pair line lacks '|-': " + std::string(line));
    std::string_view left = line.substr(0, turn), right = line.substr(turn + 2);

    LogicPair p{{}, parse_formula(right, sig)};
    size_t at = 0;
    while (at <= left.size()) {
      size_t comma = left.find(',', at);
      std::string_view part =
          left.substr(at, comma == std::string_view::npos ? comma : comma - at);
      at = comma == std::string_view::npos ? left.size() + 1 : comma + 1;
      if (part.find_first_not_of(" \t") == std::string_view::npos) continue;
      p.gamma.push_back(parse_formula(part, sig));
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline void horn_term(const Formula& f, const std::map<int, int>& var, std::string& out) {
  if (f.is_atom()) {
    out += "X" + std::to_string(var.at(f.atom_index()));
    return;
  }
  out += f.name();
  if (f.args().empty()) return;
  out += "(";
  for (size_t i = 0; i < f.args().size(); ++i) {
    if (i) out += ",";
    horn_term(f.args()[i], var, out);
  }
  out += ")";
}

inline void horn_vars(const Formula& f, std::map<int, int>& var) {
  if (f.is_atom()) {
    var.emplace(f.atom_index(), static_cast<int>(var.size()));
    return;
  }
  for (const auto& a : f.args()) horn_vars(a, var);
}

}  // namespace detail

// Renders each pair as one strict universal Horn sentence in an equality-free
// TPTP-like syntax: t/1 marks truth, d/1 core membership.  Variables are
// numbered by first occurrence across the premises then the conclusion; the
// weak form conjoins a d-atom per variable, the standard form omits them.
// Output is byte-stable.
inline std::string export_horn(std::span<const LogicPair> pairs, bool weak) {
  std::string out;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    std::map<int, int> var;  // atom -> variable number
    for (const auto& g : p.gamma) detail::horn_vars(g, var);
    detail::horn_vars(p.phi, var);

    std::vector<std::string> body;
    for (const auto& g : p.gamma) {
      std::string t = "t(";
      detail::horn_term(g, var, t);
      body.push_back(t + ")");
    }
    if (weak)
      for (size_t v = 0; v < var.size(); ++v)
        body.push_back("d(X" + std::to_string(v) + ")");

    std::string head = "t(";
    detail::horn_term(p.phi, var, head);
    head += ")";

    std::string matrix;
    if (body.empty()) {
      matrix = head;
    } else {
      std::string conj = body[0];
      for (size_t b = 1; b < body.size(); ++b) conj += " & " + body[b];
      if (body.size() > 1) conj = "(" + conj + ")";
      matrix = "(" + conj + " => " + head + ")";
    }

    out += "fof(c" + std::to_string(i) + ", axiom, ";
    if (!var.empty()) {
      out += "![X0";
      for (size_t v = 1; v < var.size(); ++v) out += ",X" + std::to_string(v);
      out += "]: ";
    }
    out += matrix + ").\n";
  }
  return out;
}

}  // namespace weaklog
