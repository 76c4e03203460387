#pragma once

#include <random>

#include "weaklog/algebra.hpp"
#include "weaklog/parser.hpp"

namespace testutil {

using namespace weaklog;

// n-element Heyting chain 0 < 1 < ... < n-1 over L_int.
inline FiniteAlgebra chain_algebra(int n) {
  std::vector<int> andt(n * n), ort(n * n), impt(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      andt[a * n + b] = std::min(a, b);
      ort[a * n + b] = std::max(a, b);
      impt[a * n + b] = a <= b ? n - 1 : b;
    }
  return FiniteAlgebra(Signature::l_int(), n,
                       {{"and", andt}, {"or", ort}, {"imp", impt}, {"bot", {0}}});
}

inline FiniteAlgebra boolean2() { return chain_algebra(2); }

// Heyting algebra of upsets of the 3-point poset {a'} , {b'} , {a',b'} ordered
// by reverse inclusion (the nonempty subsets of a 2-element set).  Elements by
// point-set mask: 0 = {}, 1 = {a'}, 2 = {b'}, 3 = {a',b'} (as an upset:
// {{a'},{b'},{a',b'}} restricted to the two maximal points), 4 = everything.
// Tables computed by hand from the poset; the algebra-construction code must
// reproduce them.
inline FiniteAlgebra upset5_algebra() {
  std::vector<int> andt = {0, 0, 0, 0, 0,
                           0, 1, 0, 1, 1,
                           0, 0, 2, 2, 2,
                           0, 1, 2, 3, 3,
                           0, 1, 2, 3, 4};
  std::vector<int> ort = {0, 1, 2, 3, 4,
                          1, 1, 3, 3, 4,
                          2, 3, 2, 3, 4,
                          3, 3, 3, 3, 4,
                          4, 4, 4, 4, 4};
  std::vector<int> impt = {4, 4, 4, 4, 4,
                           2, 4, 2, 4, 4,
                           1, 1, 4, 4, 4,
                           0, 1, 2, 4, 4,
                           0, 1, 2, 3, 4};
  return FiniteAlgebra(Signature::l_int(), 5,
                       {{"and", andt}, {"or", ort}, {"imp", impt}, {"bot", {0}}});
}

// 1-element algebra over L_int.
inline FiniteAlgebra trivial_algebra() {
  return FiniteAlgebra(Signature::l_int(), 1,
                       {{"and", {0}}, {"or", {0}}, {"imp", {0}}, {"bot", {0}}});
}

// Random formula over the binary connectives of sig, with leaves drawn from
// p0..p(atoms-1) and bot.
inline Formula random_formula(std::mt19937_64& rng, const Signature& sig, int depth, int atoms) {
  std::vector<std::string> binops;
  for (const auto& [name, ar] : sig.ops())
    if (ar == 2) binops.push_back(name);
  std::uniform_int_distribution<int> leaf(0, atoms);  // atoms => bot
  if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    int k = leaf(rng);
    return k == atoms ? lbot() : Formula::atom(k);
  }
  const auto& op = binops[std::uniform_int_distribution<size_t>(0, binops.size() - 1)(rng)];
  return Formula::app(op, {random_formula(rng, sig, depth - 1, atoms),
                           random_formula(rng, sig, depth - 1, atoms)});
}

// Arbitrary operation tables; not a Heyting algebra in general.
inline FiniteAlgebra random_algebra(std::mt19937_64& rng, const Signature& sig, int size) {
  std::uniform_int_distribution<int> el(0, size - 1);
  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, arity] : sig.ops()) {
    size_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= size;
    std::vector<int> t(cells);
    for (auto& v : t) v = el(rng);
    tables[name] = std::move(t);
  }
  return FiniteAlgebra(sig, size, std::move(tables));
}

// All partitions of {0..n-1} as restricted growth strings.
inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      Partition p;
      p.block = rgs;
      out.push_back(p);
      return;
    }
    for (int b = 0; b <= maxb + 1 && b < n; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  rec(0, -1);
  return out;
}

// Largest congruence refining init, by exhaustive enumeration of partitions.
// Independent of the refinement algorithm; usable for sizes up to ~8.
inline Partition brute_force_largest_congruence(const FiniteAlgebra& alg, const Partition& init) {
  std::vector<Partition> candidates;
  for (auto& p : all_partitions(alg.size()))
    if (p.refines(init) && is_congruence(alg, p)) candidates.push_back(p);
  // congruences below init are closed under join, so a greatest one exists
  for (const auto& top : candidates) {
    bool all_below = true;
    for (const auto& q : candidates)
      if (!q.refines(top)) {
        all_below = false;
        break;
      }
    if (all_below) {
      Partition t = top;
      t.normalize();
      return t;
    }
  }
  throw std::logic_error("no greatest congruence found (should be impossible)");
}

}  // namespace testutil
