#pragma once

#include <optional>

#include "weaklog/algebra.hpp"
#include "weaklog/parser.hpp"

namespace weaklog {

// Algebra expanded by a unary core predicate, given as the sorted list of
// core elements.  Core semantics restricts assignments to core elements.
struct ExpandedAlgebra {
  FiniteAlgebra alg;
  std::vector<int> core;

  ExpandedAlgebra(FiniteAlgebra a, std::vector<int> c) : alg(std::move(a)), core(std::move(c)) {
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    for (int x : core)
      if (x < 0 || x >= alg.size())
        throw std::invalid_argument("core element out of range");
  }

  bool in_core(int a) const { return std::binary_search(core.begin(), core.end(), a); }
};

// Solution set of a finite system of one-variable equations (variable p0).
inline std::vector<int> sigma_core(const FiniteAlgebra& alg, std::span<const Equation> sigma) {
  for (const auto& e : sigma) {
    auto check = [](const Formula& t) {
      for (int a : atoms_of(t))
        if (a != 0)
          throw std::invalid_argument(
              "sigma equations may mention only p0; found p" + std::to_string(a));
    };
    check(e.lhs);
    check(e.rhs);
  }
  std::vector<int> out;
  for (int a = 0; a < alg.size(); ++a) {
    bool ok = true;
    for (const auto& e : sigma)
      if (!alg.holds(e, {{0, a}})) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return out;
}

inline ExpandedAlgebra with_sigma_core(FiniteAlgebra alg, std::span<const Equation> sigma) {
  auto core = sigma_core(alg, sigma);
  return ExpandedAlgebra(std::move(alg), std::move(core));
}

// Whether the core generates the whole algebra.
inline bool is_core_generated(const ExpandedAlgebra& A) {
  return static_cast<int>(generate_subalgebra(A.alg, A.core).size()) == A.alg.size();
}

struct CoreEntailment {
  bool entails = true;
  bool vacuous = false;              // no core assignment existed anywhere in K
  int algebra_index = -1;            // set when refuted
  std::map<int, int> witness;        // atom -> element, first in lexicographic order
};

// Theta |=c concl over the family K: every assignment of the occurring atoms
// into core elements that satisfies all premises satisfies the conclusion.
// Assignments are enumerated lexicographically (atoms ascending, core elements
// ascending) with premises checked as soon as their atoms are all assigned,
// so the first witness returned is deterministic.
inline CoreEntailment core_entails(std::span<const ExpandedAlgebra> K,
                                   std::span<const Equation> theta, const Equation& concl) {
  std::set<int> atom_set;
  for (const auto& e : theta) {
    collect_atoms(e.lhs, atom_set);
    collect_atoms(e.rhs, atom_set);
  }
  collect_atoms(concl.lhs, atom_set);
  collect_atoms(concl.rhs, atom_set);
  std::vector<int> atoms(atom_set.begin(), atom_set.end());

  CoreEntailment result;
  result.vacuous = true;

  for (size_t ki = 0; ki < K.size(); ++ki) {
    const auto& A = K[ki];
    if (A.core.empty() && !atoms.empty()) continue;

    std::vector<CompiledTerm> prem_l, prem_r;
    // position of the last atom each premise depends on (-1: closed premise)
    std::vector<int> prem_last;
    for (const auto& e : theta) {
      prem_l.emplace_back(A.alg, e.lhs, atoms);
      prem_r.emplace_back(A.alg, e.rhs, atoms);
      int last = -1;
      for (int a : atoms_of(e.lhs)) last = std::max(last, static_cast<int>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin()));
      for (int a : atoms_of(e.rhs)) last = std::max(last, static_cast<int>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin()));
      prem_last.push_back(last);
    }
    CompiledTerm concl_l(A.alg, concl.lhs, atoms), concl_r(A.alg, concl.rhs, atoms);

    std::vector<int> assign(atoms.size(), -1);
    bool found = false;
    std::function<void(int)> rec = [&](int depth) {
      if (found) return;
      for (size_t pi = 0; pi < prem_l.size(); ++pi)  // premises completed at this depth
        if (prem_last[pi] == depth - 1 && prem_l[pi].eval(assign) != prem_r[pi].eval(assign))
          return;
      if (depth == static_cast<int>(atoms.size())) {
        result.vacuous = false;
        if (concl_l.eval(assign) != concl_r.eval(assign)) {
          found = true;
          result.entails = false;
          result.algebra_index = static_cast<int>(ki);
          for (size_t i = 0; i < atoms.size(); ++i) result.witness[atoms[i]] = assign[i];
        }
        return;
      }
      for (int c : A.core) {
        assign[depth] = c;
        rec(depth + 1);
        if (found) return;
      }
    };
    rec(0);
    if (!result.entails) return result;
  }
  return result;
}

struct QuasiEquation {
  std::vector<Equation> premises;
  Equation conclusion;
};

inline bool core_satisfies(const ExpandedAlgebra& A, const QuasiEquation& q) {
  return core_entails(std::span<const ExpandedAlgebra>(&A, 1), q.premises, q.conclusion).entails;
}

enum class ClassOp { S, P, C };

struct PreservationReport {
  ClassOp op;
  bool family_satisfies = false;  // q holds (core semantics) on every member of K
  int images_checked = 0;
  bool core_recompute_ok = true;  // sigma-core of each image matched the expected core
  bool validity_preserved = true; // no image lost q while K satisfied it
  std::string detail;             // first violation, if any
};

namespace detail {

// Substructure of A induced on the (closed) subuniverse U, with the strict
// core core(A) /\ U.
inline ExpandedAlgebra induced_substructure(const ExpandedAlgebra& A, const std::vector<int>& U) {
  std::map<int, int> idx;
  for (size_t i = 0; i < U.size(); ++i) idx[U[i]] = static_cast<int>(i);
  int m = static_cast<int>(U.size());
  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, arity] : A.alg.sig().ops()) {
    const auto& t = A.alg.table(name);
    int n = A.alg.size();
    if (arity == 0) {
      tables[name] = {idx.at(t[0])};
    } else if (arity == 1) {
      std::vector<int> q(m);
      for (int i = 0; i < m; ++i) q[i] = idx.at(t[U[i]]);
      tables[name] = std::move(q);
    } else if (arity == 2) {
      std::vector<int> q(static_cast<size_t>(m) * m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          q[static_cast<size_t>(i) * m + j] = idx.at(t[static_cast<size_t>(U[i]) * n + U[j]]);
      tables[name] = std::move(q);
    } else {
      std::vector<int> q(static_cast<size_t>(m) * m * m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            q[(static_cast<size_t>(i) * m + j) * m + k] =
                idx.at(t[(static_cast<size_t>(U[i]) * n + U[j]) * n + U[k]]);
      tables[name] = std::move(q);
    }
  }
  std::vector<int> core;
  for (int i = 0; i < m; ++i)
    if (A.in_core(U[i])) core.push_back(i);
  return ExpandedAlgebra(FiniteAlgebra(A.alg.sig(), m, std::move(tables)), std::move(core));
}

// Subuniverses of A: exhaustive over all subsets for small universes, else
// generated from seeds of size <= 2.
inline std::vector<std::vector<int>> enumerate_subuniverses(const FiniteAlgebra& alg) {
  std::set<std::vector<int>> seen;
  int n = alg.size();
  if (n <= 12) {
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> seed;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) seed.push_back(i);
      seen.insert(generate_subalgebra(alg, seed));
    }
  } else {
    seen.insert(generate_subalgebra(alg, std::vector<int>{}));
    for (int a = 0; a < n; ++a) {
      seen.insert(generate_subalgebra(alg, std::vector<int>{a}));
      for (int b = a + 1; b < n; ++b)
        seen.insert(generate_subalgebra(alg, std::vector<int>{a, b}));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// Validates that sigma-cores are preserved by the class operator and that
// core validity of q transfers from K to the operator's images.
//   S: substructures on every subuniverse of every member
//   P: binary products of members (within the product cap)
//   C: core superalgebras of members located inside `ambient`
inline PreservationReport check_preservation(std::span<const ExpandedAlgebra> K,
                                             std::span<const Equation> sigma,
                                             const QuasiEquation& q, ClassOp op,
                                             std::span<const ExpandedAlgebra> ambient = {},
                                             int product_cap = 1000) {
  for (const auto& A : K)
    if (sigma_core(A.alg, sigma) != A.core)
      throw std::invalid_argument("check_preservation: member of K is not sigma-cored");
  for (const auto& B : ambient)
    if (sigma_core(B.alg, sigma) != B.core)
      throw std::invalid_argument("check_preservation: ambient member is not sigma-cored");

  PreservationReport rep;
  rep.op = op;
  rep.family_satisfies = true;
  for (const auto& A : K)
    if (!core_satisfies(A, q)) {
      rep.family_satisfies = false;
      break;
    }

  auto inspect = [&](const ExpandedAlgebra& img, const std::string& origin) {
    ++rep.images_checked;
    if (sigma_core(img.alg, sigma) != img.core) {
      rep.core_recompute_ok = false;
      if (rep.detail.empty()) rep.detail = "sigma-core mismatch on " + origin;
    }
    if (rep.family_satisfies && !core_satisfies(img, q)) {
      rep.validity_preserved = false;
      if (rep.detail.empty()) rep.detail = "q lost on " + origin;
    }
  };

  switch (op) {
    case ClassOp::S: {
      for (size_t ki = 0; ki < K.size(); ++ki)
        for (const auto& U : detail::enumerate_subuniverses(K[ki].alg))
          inspect(detail::induced_substructure(K[ki], U),
                  "substructure of K[" + std::to_string(ki) + "]");
      break;
    }
    case ClassOp::P: {
      for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i; j < K.size(); ++j) {
          if (static_cast<long long>(K[i].alg.size()) * K[j].alg.size() > product_cap) continue;
          std::vector<FiniteAlgebra> fs{K[i].alg, K[j].alg};
          FiniteAlgebra prod = product(fs, product_cap);
          // componentwise core; must coincide with the recomputed sigma-core
          std::vector<int> sizes{K[i].alg.size(), K[j].alg.size()};
          std::vector<int> core;
          for (int a : K[i].core)
            for (int b : K[j].core)
              core.push_back(product_tuple_index(std::vector<int>{a, b}, sizes));
          inspect(ExpandedAlgebra(std::move(prod), std::move(core)),
                  "product K[" + std::to_string(i) + "] x K[" + std::to_string(j) + "]");
        }
      break;
    }
    case ClassOp::C: {
      for (size_t ki = 0; ki < K.size(); ++ki)
        for (size_t bi = 0; bi < ambient.size(); ++bi) {
          const auto& A = K[ki];
          const auto& B = ambient[bi];
          if (B.alg.sig() != A.alg.sig() || B.alg.size() < A.alg.size()) continue;
          bool pair_found = false;
          for (const auto& h :
               find_homomorphisms(A.alg, B.alg, HomMode::strict, A.core, B.core)) {
            std::vector<int> img(h.begin(), h.end());
            std::sort(img.begin(), img.end());
            if (std::unique(img.begin(), img.end()) != img.end()) continue;  // not injective
            // a core superalgebra has the same core as its substructure
            std::vector<int> hcore;
            for (int a : A.core) hcore.push_back(h[a]);
            std::sort(hcore.begin(), hcore.end());
            if (hcore != B.core) continue;
            pair_found = true;
            break;
          }
          if (pair_found)
            inspect(B, "core superalgebra ambient[" + std::to_string(bi) + "] of K[" +
                           std::to_string(ki) + "]");
        }
      break;
    }
  }
  return rep;
}

struct LocalEmbedding {
  bool found = false;
  int target_index = -1;
  std::map<int, int> map;  // X element -> target element
};

// Searches K (in order) for an injective map of the partial structure induced
// on X that preserves every defined operation application and sends core
// elements of X into the target core.  First embedding in lexicographic order
// of images is returned.
inline LocalEmbedding local_subgraph_embeds(const ExpandedAlgebra& A, std::span<const int> X,
                                            std::span<const ExpandedAlgebra> K) {
  std::vector<int> xs(X.begin(), X.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (int x : xs)
    if (x < 0 || x >= A.alg.size()) throw std::invalid_argument("X element out of range");

  // defined operation applications within X: (op, args..., result)
  struct App {
    const std::string* op;
    std::vector<int> args;
    int result;
  };
  std::vector<App> apps;
  auto inX = [&](int a) { return std::binary_search(xs.begin(), xs.end(), a); };
  for (const auto& [name, arity] : A.alg.sig().ops()) {
    if (arity == 0) {
      int r = A.alg.constant(name);
      if (inX(r)) apps.push_back({&name, {}, r});
    } else if (arity == 1) {
      for (int a : xs) {
        int r = A.alg.table(name)[a];
        if (inX(r)) apps.push_back({&name, {a}, r});
      }
    } else if (arity == 2) {
      for (int a : xs)
        for (int b : xs) {
          int r = A.alg.table(name)[static_cast<size_t>(a) * A.alg.size() + b];
          if (inX(r)) apps.push_back({&name, {a, b}, r});
        }
    } else {
      for (int a : xs)
        for (int b : xs)
          for (int c : xs) {
            int r = A.alg.table(
                name)[(static_cast<size_t>(a) * A.alg.size() + b) * A.alg.size() + c];
            if (inX(r)) apps.push_back({&name, {a, b, c}, r});
          }
    }
  }

  LocalEmbedding out;
  for (size_t ki = 0; ki < K.size() && !out.found; ++ki) {
    const auto& B = K[ki];
    if (B.alg.sig() != A.alg.sig()) continue;
    std::map<int, int> h;
    std::vector<char> used(B.alg.size(), 0);

    auto consistent = [&]() {
      for (const auto& app : apps) {
        bool all = h.count(app.result) > 0;
        for (int a : app.args) all = all && h.count(a) > 0;
        if (!all) continue;
        std::vector<int> img;
        for (int a : app.args) img.push_back(h.at(a));
        if (B.alg.apply(*app.op, img) != h.at(app.result)) return false;
      }
      return true;
    };

    std::function<bool(size_t)> rec = [&](size_t i) {
      if (i == xs.size()) return true;
      int x = xs[i];
      for (int img = 0; img < B.alg.size(); ++img) {
        if (used[img]) continue;
        if (A.in_core(x) && !B.in_core(img)) continue;
        h[x] = img;
        used[img] = 1;
        if (consistent() && rec(i + 1)) return true;
        h.erase(x);
        used[img] = 0;
      }
      return false;
    };

    if (rec(0)) {
      out.found = true;
      out.target_index = static_cast<int>(ki);
      out.map = h;
    }
  }
  return out;
}

}  // namespace weaklog
