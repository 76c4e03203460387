#pragma once

#include <cstdint>
#include <mutex>

#include "weaklog/algebra.hpp"

namespace weaklog {

// Finite partial order on points 0..n-1 (n <= 32), kept as bit rows:
// bit j of row i set iff i <= j.
class FinitePoset {
 public:
  FinitePoset(int n, std::vector<uint32_t> leq_rows) : n_(n), rows_(std::move(leq_rows)) {
    if (n < 1 || n > 32) throw std::invalid_argument("poset size must be in 1..32");
    if (rows_.size() != static_cast<size_t>(n)) throw std::invalid_argument("poset: bad row count");
    uint32_t universe = n == 32 ? ~0u : (1u << n) - 1;
    for (int i = 0; i < n; ++i) {
      if (rows_[i] & ~universe) throw std::invalid_argument("poset: bit out of range");
      if (!leq(i, i)) throw std::invalid_argument("poset: not reflexive");
      for (int j = 0; j < n; ++j) {
        if (i != j && leq(i, j) && leq(j, i))
          throw std::invalid_argument("poset: not antisymmetric");
        // transitivity: everything above j must be above i when i <= j
        if (leq(i, j) && (rows_[j] & ~rows_[i]))
          throw std::invalid_argument("poset: not transitive");
      }
    }
  }

  static FinitePoset antichain(int n) {
    std::vector<uint32_t> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = 1u << i;
    return FinitePoset(n, std::move(rows));
  }

  // 0 < 1 < ... < n-1
  static FinitePoset chain(int n) {
    std::vector<uint32_t> rows(n);
    uint32_t universe = n == 32 ? ~0u : (1u << n) - 1;
    for (int i = 0; i < n; ++i) rows[i] = universe & ~((1u << i) - 1);
    return FinitePoset(n, std::move(rows));
  }

  int size() const { return n_; }
  bool leq(int i, int j) const { return (rows_[i] >> j) & 1u; }
  uint32_t up_mask(int i) const { return rows_[i]; }

  bool is_upset(uint32_t mask) const {
    for (int i = 0; i < n_; ++i)
      if ((mask >> i) & 1u) {
        if (rows_[i] & ~mask) return false;
      }
    return true;
  }

  // All upward-closed point sets, ascending as numbers (so 0 = empty first).
  std::vector<uint32_t> all_upsets() const {
    std::vector<uint32_t> out;
    uint64_t total = uint64_t{1} << n_;
    for (uint64_t m = 0; m < total; ++m)
      if (is_upset(static_cast<uint32_t>(m))) out.push_back(static_cast<uint32_t>(m));
    return out;
  }

  // Row-major bitmask of the full relation; usable as an equality key.
  uint64_t relation_key() const {
    if (n_ > 8) throw std::invalid_argument("relation_key: poset too large");
    uint64_t key = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (leq(i, j)) key |= uint64_t{1} << (i * n_ + j);
    return key;
  }

  // Least relation key over all relabellings; equal keys mean isomorphic.
  uint64_t canonical_key() const {
    if (n_ > 8) throw std::invalid_argument("canonical_key: poset too large");
    std::vector<int> perm(n_);
    for (int i = 0; i < n_; ++i) perm[i] = i;
    uint64_t best = ~uint64_t{0};
    do {
      uint64_t key = 0;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          if (leq(i, j)) key |= uint64_t{1} << (perm[i] * n_ + perm[j]);
      best = std::min(best, key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  bool isomorphic_to(const FinitePoset& other) const {
    return n_ == other.n_ && canonical_key() == other.canonical_key();
  }

  bool operator==(const FinitePoset& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
  }

 private:
  int n_;
  std::vector<uint32_t> rows_;
};

// Points are the nonempty subsets of an s-element set, ordered by reverse
// inclusion (larger subsets below).  Point i carries subset mask i+1.
inline FinitePoset medvedev_frame(int s) {
  if (s < 1 || s > 4) throw std::invalid_argument("medvedev_frame: s must be in 1..4");
  int n = (1 << s) - 1;
  std::vector<uint32_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    uint32_t mi = static_cast<uint32_t>(i + 1);
    for (int j = 0; j < n; ++j) {
      uint32_t mj = static_cast<uint32_t>(j + 1);
      if ((mj & ~mi) == 0) rows[i] |= 1u << j;  // i <= j iff subset j is inside subset i
    }
  }
  return FinitePoset(n, std::move(rows));
}

// Every poset on 1..max_n points, one representative per isomorphism class.
// Enumeration is deterministic: sizes ascending; within a size, strict-order
// edge sets over pairs (i, j) with i < j are scanned as ascending bitmasks
// (pair bits in lexicographic order), keeping the first representative of
// each class.  The antichain (empty edge set) therefore leads each size.
inline const std::vector<FinitePoset>& all_posets_upto_iso(int max_n) {
  if (max_n < 1 || max_n > 6) throw std::invalid_argument("all_posets_upto_iso: max_n in 1..6");
  static std::mutex mu;
  static std::map<int, std::vector<FinitePoset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(max_n);
  if (it != cache.end()) return it->second;

  std::vector<FinitePoset> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<uint64_t> seen;
    for (uint32_t edges = 0; edges < (1u << pairs.size()); ++edges) {
      auto has = [&](int i, int j) {
        for (size_t p = 0; p < pairs.size(); ++p)
          if (pairs[p] == std::make_pair(i, j)) return ((edges >> p) & 1u) != 0;
        return false;
      };
      bool transitive = true;
      for (size_t p = 0; p < pairs.size() && transitive; ++p) {
        if (!((edges >> p) & 1u)) continue;
        auto [i, j] = pairs[p];
        for (int k = j + 1; k < n; ++k)
          if (has(j, k) && !has(i, k)) {
            transitive = false;
            break;
          }
      }
      if (!transitive) continue;
      std::vector<uint32_t> rows(n);
      for (int i = 0; i < n; ++i) rows[i] = 1u << i;
      for (size_t p = 0; p < pairs.size(); ++p)
        if ((edges >> p) & 1u) rows[pairs[p].first] |= 1u << pairs[p].second;
      FinitePoset poset(n, std::move(rows));
      if (seen.insert(poset.canonical_key()).second) out.push_back(std::move(poset));
    }
  }
  return cache.emplace(max_n, std::move(out)).first->second;
}

}  // namespace weaklog
