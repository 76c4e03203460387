#pragma once

#include <random>

#include "weaklog/expanded.hpp"
#include "weaklog/poset.hpp"

namespace weaklog {

// A Heyting algebra realized as the upsets of a poset.  Element i of the
// algebra is the point set upsets[i].  When the poset is a powerset frame,
// point_subsets[p] is the underlying subset mask of point p (empty otherwise).
struct HeytingAlgebraHandle {
  FiniteAlgebra alg;
  FinitePoset poset;
  std::vector<uint32_t> upsets;
  std::vector<uint32_t> point_subsets;
};

// Heyting algebra of all upsets: meet/join are intersection/union and
// U -> V contains p iff the whole upper cone of p maps U into V.
inline HeytingAlgebraHandle upset_algebra(const FinitePoset& poset, int cap = 200000) {
  // enumerating upsets walks all 2^n point sets; bail out before that blows up
  if (poset.size() > 24) throw cap_exceeded("upset enumeration infeasible for this frame");
  auto upsets = poset.all_upsets();
  int m = static_cast<int>(upsets.size());
  if (m > cap) throw cap_exceeded("upset algebra larger than cap");
  std::map<uint32_t, int> index;
  for (int i = 0; i < m; ++i) index[upsets[i]] = i;

  std::vector<int> andt(static_cast<size_t>(m) * m), ort(andt.size()), impt(andt.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      andt[static_cast<size_t>(a) * m + b] = index.at(upsets[a] & upsets[b]);
      ort[static_cast<size_t>(a) * m + b] = index.at(upsets[a] | upsets[b]);
      uint32_t imp = 0;
      for (int p = 0; p < poset.size(); ++p)
        if ((poset.up_mask(p) & upsets[a] & ~upsets[b]) == 0) imp |= 1u << p;
      impt[static_cast<size_t>(a) * m + b] = index.at(imp);
    }
  FiniteAlgebra alg(Signature::l_int(), m,
                    {{"and", std::move(andt)},
                     {"or", std::move(ort)},
                     {"imp", std::move(impt)},
                     {"bot", {index.at(0)}}});

  // residuation: z <= x -> y  iff  z /\ x <= y
  auto le = [&](int a, int b) { return (upsets[a] & ~upsets[b]) == 0; };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int i = alg.table("imp")[static_cast<size_t>(x) * m + y];
      for (int z = 0; z < m; ++z) {
        bool lhs = le(z, i);
        bool rhs = le(alg.table("and")[static_cast<size_t>(z) * m + x], y);
        if (lhs != rhs) throw std::logic_error("upset algebra violates residuation");
      }
    }

  return HeytingAlgebraHandle{std::move(alg), poset, std::move(upsets), {}};
}

// Upset algebra of the powerset frame, with point provenance attached.
inline HeytingAlgebraHandle medvedev_algebra(int s, int cap = 200000) {
  auto handle = upset_algebra(medvedev_frame(s), cap);
  handle.point_subsets.resize(handle.poset.size());
  for (int p = 0; p < handle.poset.size(); ++p)
    handle.point_subsets[p] = static_cast<uint32_t>(p + 1);
  return handle;
}

inline std::vector<Equation> regularity_sigma() {
  Formula x = Formula::atom(0);
  return {Equation{x, lnot(lnot(x))}};
}

// The double-negation-stable elements, as an expanded algebra.
inline ExpandedAlgebra regular_core(const FiniteAlgebra& alg) {
  auto sigma = regularity_sigma();
  return with_sigma_core(alg, sigma);
}

// Extends an upset algebra over a powerset frame with the tensor operation
//   U (x) V = U, V, and all unions of a point of U with a point of V.
inline FiniteAlgebra add_tensor(const HeytingAlgebraHandle& h) {
  if (h.point_subsets.empty())
    throw std::invalid_argument("add_tensor: point provenance required (powerset frame)");
  int m = h.alg.size();
  int n = h.poset.size();

  // subset mask -> point index
  uint32_t width = 0;
  for (uint32_t s : h.point_subsets) width |= s;
  std::vector<int> point_of(width + 1, -1);
  for (int p = 0; p < n; ++p) point_of[h.point_subsets[p]] = p;

  std::map<uint32_t, int> index;
  for (int i = 0; i < m; ++i) index[h.upsets[i]] = i;

  std::vector<int> tens(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      uint32_t r = h.upsets[a] | h.upsets[b];
      for (int i = 0; i < n; ++i) {
        if (!((h.upsets[a] >> i) & 1u)) continue;
        for (int j = 0; j < n; ++j) {
          if (!((h.upsets[b] >> j) & 1u)) continue;
          int p = point_of[h.point_subsets[i] | h.point_subsets[j]];
          r |= 1u << p;
        }
      }
      if (!h.poset.is_upset(r)) throw std::logic_error("tensor image is not an upset");
      tens[static_cast<size_t>(a) * m + b] = index.at(r);
    }

  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, arity] : h.alg.sig().ops()) {
    (void)arity;
    tables[name] = h.alg.table(name);
  }
  tables["tensor"] = std::move(tens);
  return FiniteAlgebra(Signature::l_inq(), m, std::move(tables));
}

struct TensorReport {
  bool dist_ok = true;         // x (x) (y | z) == (x (x) y) | (x (x) z)
  bool mon_ok = true;          // ((x->z) -> ((y->k) -> ((x(x)y) -> (z(x)k)))) == top
  bool mon_exhaustive = true;  // false when the 4-tuple space was sampled
  bool regular_closed = true;  // tensor of regular elements is regular
  bool regular_join = true;    // on regulars, tensor is the double negation of join
};

// Structural checks for a tensor-extended algebra; `samples` bounds the
// number of 4-tuples inspected for the monotonicity identity.
inline TensorReport verify_tensor(const FiniteAlgebra& alg, uint64_t seed = 1,
                                  size_t samples = 2'000'000) {
  int n = alg.size();
  const auto& ort = alg.table("or");
  const auto& impt = alg.table("imp");
  const auto& tens = alg.table("tensor");
  auto bin = [n](const std::vector<int>& t, int a, int b) {
    return t[static_cast<size_t>(a) * n + b];
  };
  int bot = alg.constant("bot");
  int top = bin(impt, bot, bot);

  TensorReport rep;
  for (int x = 0; x < n && rep.dist_ok; ++x)
    for (int y = 0; y < n && rep.dist_ok; ++y)
      for (int z = 0; z < n; ++z)
        if (bin(tens, x, bin(ort, y, z)) != bin(ort, bin(tens, x, y), bin(tens, x, z))) {
          rep.dist_ok = false;
          break;
        }

  auto mon_at = [&](int x, int y, int z, int k) {
    int inner = bin(impt, bin(tens, x, y), bin(tens, z, k));
    return bin(impt, bin(impt, x, z), bin(impt, bin(impt, y, k), inner)) == top;
  };
  size_t total = static_cast<size_t>(n) * n * n * n;
  if (total <= samples) {
    for (int x = 0; x < n && rep.mon_ok; ++x)
      for (int y = 0; y < n && rep.mon_ok; ++y)
        for (int z = 0; z < n && rep.mon_ok; ++z)
          for (int k = 0; k < n; ++k)
            if (!mon_at(x, y, z, k)) {
              rep.mon_ok = false;
              break;
            }
  } else {
    rep.mon_exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> el(0, n - 1);
    for (size_t i = 0; i < samples && rep.mon_ok; ++i)
      if (!mon_at(el(rng), el(rng), el(rng), el(rng))) rep.mon_ok = false;
  }

  std::vector<int> regs;
  auto neg = [&](int a) { return bin(impt, a, bot); };
  for (int a = 0; a < n; ++a)
    if (neg(neg(a)) == a) regs.push_back(a);
  for (int a : regs)
    for (int b : regs) {
      int t = bin(tens, a, b);
      if (neg(neg(t)) != t) rep.regular_closed = false;
      if (t != neg(neg(bin(ort, a, b)))) rep.regular_join = false;
    }
  return rep;
}

// Upset algebras of every poset on 1..bound points; cached.
inline const std::vector<FiniteAlgebra>& upset_algebras_upto(int bound) {
  static std::mutex mu;
  static std::map<int, std::vector<FiniteAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<FiniteAlgebra> out;
  for (const auto& poset : all_posets_upto_iso(bound)) out.push_back(upset_algebra(poset).alg);
  return cache.emplace(bound, std::move(out)).first->second;
}

// Equivalence of f and g over every Heyting algebra of upsets of posets with
// at most `bound` points (tensor read as join).  A refutation is conclusive;
// agreement certifies equivalence only up to the bound.
inline bool ipc_equiv_bounded(const Formula& f, const Formula& g, int bound = 6) {
  Formula ff = tensor_as_or(f), gg = tensor_as_or(g);
  auto atoms = atoms_of(std::vector<Formula>{ff}, gg);
  if (atoms.size() > 8) throw std::invalid_argument("ipc_equiv_bounded: too many atoms");
  for (const auto& alg : upset_algebras_upto(bound)) {
    CompiledTerm cf(alg, ff, atoms), cg(alg, gg, atoms);
    std::vector<int> assign(atoms.size(), 0);
    while (true) {
      if (cf.eval(assign) != cg.eval(assign)) return false;
      size_t i = 0;
      while (i < assign.size() && assign[i] == alg.size() - 1) assign[i++] = 0;
      if (i == assign.size()) break;
      ++assign[i];
    }
  }
  return true;
}

}  // namespace weaklog
