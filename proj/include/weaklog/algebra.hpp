#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "weaklog/formula.hpp"

namespace weaklog {

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite algebra over a Signature.  Operation tables are dense and row-major:
// for arity k, the value at arguments (a0,..,a_{k-1}) sits at index
// ((a0*n + a1)*n + a2)...  Elements are 0..size-1.
class FiniteAlgebra {
 public:
  FiniteAlgebra(Signature sig, int size, std::map<std::string, std::vector<int>> tables)
      : sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
    if (size_ <= 0) throw std::invalid_argument("algebra size must be positive");
    for (const auto& [name, arity] : sig_.ops()) {
      auto it = tables_.find(name);
      if (it == tables_.end()) throw std::invalid_argument("missing table for '" + name + "'");
      size_t want = 1;
      for (int i = 0; i < arity; ++i) want *= static_cast<size_t>(size_);
      if (it->second.size() != want)
        throw std::invalid_argument("table for '" + name + "' has wrong length");
      for (int v : it->second)
        if (v < 0 || v >= size_)
          throw std::invalid_argument("table for '" + name + "' maps outside the universe");
    }
    if (tables_.size() != sig_.ops().size())
      throw std::invalid_argument("table present for an operation not in the signature");
  }

  const Signature& sig() const { return sig_; }
  int size() const { return size_; }

  const std::vector<int>& table(const std::string& op) const {
    auto it = tables_.find(op);
    if (it == tables_.end()) throw std::invalid_argument("operation '" + op + "' not in signature");
    return it->second;
  }

  int apply(const std::string& op, std::span<const int> args) const {
    const auto& t = table(op);
    size_t idx = 0;
    for (int a : args) idx = idx * static_cast<size_t>(size_) + static_cast<size_t>(a);
    return t[idx];
  }

  int constant(const std::string& op) const { return table(op)[0]; }

  // Term evaluation under an assignment of algebra elements to atoms.
  int eval(const Formula& f, const std::map<int, int>& assign) const {
    switch (f.kind()) {
      case NodeKind::atom: {
        auto it = assign.find(f.atom_index());
        if (it == assign.end())
          throw std::invalid_argument("eval: atom p" + std::to_string(f.atom_index()) +
                                      " unassigned");
        return check_elem(it->second);
      }
      case NodeKind::meta:
        throw std::invalid_argument("eval: formula contains a metavariable");
      case NodeKind::app: {
        const auto& t = table(f.name());
        size_t idx = 0;
        for (const auto& a : f.args())
          idx = idx * static_cast<size_t>(size_) + static_cast<size_t>(eval(a, assign));
        return t[idx];
      }
    }
    throw std::logic_error("unreachable");
  }

  bool holds(const Equation& e, const std::map<int, int>& assign) const {
    return eval(e.lhs, assign) == eval(e.rhs, assign);
  }

  bool operator==(const FiniteAlgebra& o) const {
    return sig_ == o.sig_ && size_ == o.size_ && tables_ == o.tables_;
  }

 private:
  int check_elem(int a) const {
    if (a < 0 || a >= size_) throw std::invalid_argument("eval: element out of range");
    return a;
  }

  Signature sig_;
  int size_;
  std::map<std::string, std::vector<int>> tables_;
};

// Term compiled to a postfix program against one algebra; atoms become slots
// into a dense assignment vector.  Used on hot evaluation paths.
class CompiledTerm {
 public:
  CompiledTerm(const FiniteAlgebra& alg, const Formula& f, std::span<const int> atom_order)
      : alg_(&alg) {
    compile(f, atom_order);
  }

  // assign[i] is the element for atom_order[i].
  int eval(std::span<const int> assign) const {
    stack_.clear();
    for (const auto& ins : prog_) {
      if (ins.table == nullptr) {
        stack_.push_back(assign[ins.slot]);
      } else {
        size_t idx = 0;
        size_t base = stack_.size() - ins.arity;
        for (int i = 0; i < ins.arity; ++i)
          idx = idx * static_cast<size_t>(alg_->size()) + static_cast<size_t>(stack_[base + i]);
        stack_.resize(base);
        stack_.push_back((*ins.table)[idx]);
      }
    }
    return stack_.back();
  }

 private:
  struct Ins {
    const std::vector<int>* table;  // null => push assignment slot
    int slot = 0;
    int arity = 0;
  };

  void compile(const Formula& f, std::span<const int> atom_order) {
    switch (f.kind()) {
      case NodeKind::atom: {
        for (size_t i = 0; i < atom_order.size(); ++i)
          if (atom_order[i] == f.atom_index()) {
            prog_.push_back({nullptr, static_cast<int>(i), 0});
            return;
          }
        throw std::invalid_argument("compile: atom p" + std::to_string(f.atom_index()) +
                                    " not in atom order");
      }
      case NodeKind::meta:
        throw std::invalid_argument("compile: formula contains a metavariable");
      case NodeKind::app: {
        for (const auto& a : f.args()) compile(a, atom_order);
        prog_.push_back({&alg_->table(f.name()), 0, static_cast<int>(f.args().size())});
        return;
      }
    }
  }

  const FiniteAlgebra* alg_;
  std::vector<Ins> prog_;
  mutable std::vector<int> stack_;
};

// Least subuniverse containing the seed; always contains all constants.
inline std::vector<int> generate_subalgebra(const FiniteAlgebra& alg, std::span<const int> seed) {
  std::vector<char> in(alg.size(), 0);
  std::vector<int> members;
  auto add = [&](int a) {
    if (!in[a]) {
      in[a] = 1;
      members.push_back(a);
    }
  };
  for (int a : seed) {
    if (a < 0 || a >= alg.size()) throw std::invalid_argument("seed element out of range");
    add(a);
  }
  for (const auto& [name, arity] : alg.sig().ops())
    if (arity == 0) add(alg.constant(name));

  while (true) {
    size_t limit = members.size();
    for (const auto& [name, arity] : alg.sig().ops()) {
      if (arity == 0) continue;
      const auto& t = alg.table(name);
      if (arity == 1) {
        for (size_t i = 0; i < limit; ++i) add(t[members[i]]);
      } else if (arity == 2) {
        for (size_t i = 0; i < limit; ++i)
          for (size_t j = 0; j < limit; ++j)
            add(t[static_cast<size_t>(members[i]) * alg.size() + members[j]]);
      } else {
        for (size_t i = 0; i < limit; ++i)
          for (size_t j = 0; j < limit; ++j)
            for (size_t k = 0; k < limit; ++k)
              add(t[(static_cast<size_t>(members[i]) * alg.size() + members[j]) * alg.size() +
                    members[k]]);
      }
    }
    if (members.size() == limit) break;  // rescan until stable; universes are small
  }
  std::sort(members.begin(), members.end());
  return members;
}

// Index helpers for product algebras.  Element order is lexicographic over
// factor indices with the first factor most significant.
inline int product_tuple_index(std::span<const int> tuple, std::span<const int> sizes) {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + tuple[i];
  return idx;
}

inline std::vector<int> product_index_tuple(int idx, std::span<const int> sizes) {
  std::vector<int> tuple(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    tuple[i] = idx % sizes[i];
    idx /= sizes[i];
  }
  return tuple;
}

// Componentwise product of finitely many algebras over one signature.
inline FiniteAlgebra product(std::span<const FiniteAlgebra> algs, int max_size = 1000) {
  if (algs.empty()) throw std::invalid_argument("product of zero algebras");
  const Signature& sig = algs[0].sig();
  long long n = 1;
  std::vector<int> sizes;
  for (const auto& a : algs) {
    if (a.sig() != sig) throw std::invalid_argument("product: signature mismatch");
    sizes.push_back(a.size());
    n *= a.size();
    if (n > max_size)
      throw cap_exceeded("product size exceeds cap of " + std::to_string(max_size));
  }
  int size = static_cast<int>(n);

  std::vector<std::vector<int>> tuples(size);
  for (int e = 0; e < size; ++e) tuples[e] = product_index_tuple(e, sizes);

  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, arity] : sig.ops()) {
    size_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= static_cast<size_t>(size);
    if (cells > 8'000'000) throw cap_exceeded("product table for '" + name + "' too large");
    std::vector<int> t(cells);
    std::vector<int> comp(algs.size());
    if (arity == 0) {
      for (size_t f = 0; f < algs.size(); ++f) comp[f] = algs[f].constant(name);
      t[0] = product_tuple_index(comp, sizes);
    } else if (arity == 1) {
      for (int a = 0; a < size; ++a) {
        for (size_t f = 0; f < algs.size(); ++f) comp[f] = algs[f].table(name)[tuples[a][f]];
        t[a] = product_tuple_index(comp, sizes);
      }
    } else if (arity == 2) {
      for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
          for (size_t f = 0; f < algs.size(); ++f)
            comp[f] =
                algs[f].table(name)[static_cast<size_t>(tuples[a][f]) * sizes[f] + tuples[b][f]];
          t[static_cast<size_t>(a) * size + b] = product_tuple_index(comp, sizes);
        }
    } else {
      for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
          for (int c = 0; c < size; ++c) {
            for (size_t f = 0; f < algs.size(); ++f)
              comp[f] = algs[f].table(
                  name)[(static_cast<size_t>(tuples[a][f]) * sizes[f] + tuples[b][f]) * sizes[f] +
                        tuples[c][f]];
            t[(static_cast<size_t>(a) * size + b) * size + c] = product_tuple_index(comp, sizes);
          }
    }
    tables.emplace(name, std::move(t));
  }
  return FiniteAlgebra(sig, size, std::move(tables));
}

enum class HomMode { all, strong, strict };

// Backtracking enumeration of homomorphisms src -> dst in lexicographic order
// of the image vector.  Core handling:
//   all:    cores ignored
//   strong: h[core(src)] subset of core(dst)
//   strict: a in core(src)  iff  h(a) in core(dst)
inline std::vector<std::vector<int>> find_homomorphisms(
    const FiniteAlgebra& src, const FiniteAlgebra& dst, HomMode mode = HomMode::all,
    std::span<const int> src_core = {}, std::span<const int> dst_core = {},
    size_t max_results = SIZE_MAX) {
  if (src.sig() != dst.sig()) throw std::invalid_argument("homomorphism: signature mismatch");
  int n = src.size();
  std::vector<char> in_src_core(n, 0), in_dst_core(dst.size(), 0);
  for (int a : src_core) in_src_core.at(a) = 1;
  for (int a : dst_core) in_dst_core.at(a) = 1;

  std::vector<int> h(n, -1);
  std::vector<std::vector<int>> out;

  // Checks every operation application whose arguments and result are all
  // assigned and involve element `last`.
  auto consistent = [&](int last) {
    for (const auto& [name, arity] : src.sig().ops()) {
      const auto& ts = src.table(name);
      const auto& td = dst.table(name);
      if (arity == 0) {
        int r = ts[0];
        if (h[r] != -1 && h[r] != td[0]) return false;
      } else if (arity == 1) {
        for (int a = 0; a < n; ++a) {
          int r = ts[a];
          if ((a == last || r == last) && h[a] != -1 && h[r] != -1 &&
              td[h[a]] != h[r])
            return false;
        }
      } else if (arity == 2) {
        for (int a = 0; a < n; ++a) {
          if (h[a] == -1) continue;
          for (int b = 0; b < n; ++b) {
            if (h[b] == -1) continue;
            int r = ts[static_cast<size_t>(a) * n + b];
            if (h[r] == -1) continue;
            if (a != last && b != last && r != last) continue;
            if (td[static_cast<size_t>(h[a]) * dst.size() + h[b]] != h[r]) return false;
          }
        }
      } else {
        for (int a = 0; a < n; ++a) {
          if (h[a] == -1) continue;
          for (int b = 0; b < n; ++b) {
            if (h[b] == -1) continue;
            for (int c = 0; c < n; ++c) {
              if (h[c] == -1) continue;
              int r = ts[(static_cast<size_t>(a) * n + b) * n + c];
              if (h[r] == -1) continue;
              if (a != last && b != last && c != last && r != last) continue;
              if (td[(static_cast<size_t>(h[a]) * dst.size() + h[b]) * dst.size() + h[c]] != h[r])
                return false;
            }
          }
        }
      }
    }
    return true;
  };

  auto core_ok = [&](int a, int img) {
    if (mode == HomMode::all) return true;
    if (in_src_core[a] && !in_dst_core[img]) return false;
    if (mode == HomMode::strict && !in_src_core[a] && in_dst_core[img]) return false;
    return true;
  };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::function<void(int)> rec = [&](int depth) {
    if (out.size() >= max_results) return;
    if (depth == n) {
      out.push_back(h);
      return;
    }
    int a = order[depth];
    for (int img = 0; img < dst.size(); ++img) {
      if (!core_ok(a, img)) continue;
      h[a] = img;
      if (consistent(a)) rec(depth + 1);
      h[a] = -1;
      if (out.size() >= max_results) return;
    }
  };
  rec(0);
  return out;
}

// Partition of 0..n-1 as a block-id vector; normal form numbers blocks by
// first occurrence, so block(0) == 0.
struct Partition {
  std::vector<int> block;

  int size() const { return static_cast<int>(block.size()); }

  int num_blocks() const {
    int m = -1;
    for (int b : block) m = std::max(m, b);
    return m + 1;
  }

  void normalize() {
    std::map<int, int> renum;
    for (int& b : block) {
      auto it = renum.emplace(b, static_cast<int>(renum.size())).first;
      b = it->second;
    }
  }

  bool same_block(int a, int b) const { return block[a] == block[b]; }

  // true iff every block of *this is contained in a block of coarser
  bool refines(const Partition& coarser) const {
    for (size_t a = 0; a < block.size(); ++a)
      for (size_t b = a + 1; b < block.size(); ++b)
        if (block[a] == block[b] && coarser.block[a] != coarser.block[b]) return false;
    return true;
  }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(num_blocks());
    for (size_t a = 0; a < block.size(); ++a) out[block[a]].push_back(static_cast<int>(a));
    return out;
  }

  bool operator==(const Partition& o) const { return block == o.block; }

  static Partition discrete(int n) {
    Partition p;
    p.block.resize(n);
    std::iota(p.block.begin(), p.block.end(), 0);
    return p;
  }

  static Partition one_block(int n) {
    Partition p;
    p.block.assign(n, 0);
    return p;
  }
};

inline bool is_congruence(const FiniteAlgebra& alg, const Partition& p) {
  int n = alg.size();
  for (const auto& [name, arity] : alg.sig().ops()) {
    const auto& t = alg.table(name);
    if (arity == 1) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (p.same_block(a, b) && !p.same_block(t[a], t[b])) return false;
    } else if (arity == 2) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!p.same_block(a, b)) continue;
          for (int c = 0; c < n; ++c) {
            if (!p.same_block(t[static_cast<size_t>(a) * n + c], t[static_cast<size_t>(b) * n + c]))
              return false;
            if (!p.same_block(t[static_cast<size_t>(c) * n + a], t[static_cast<size_t>(c) * n + b]))
              return false;
          }
        }
    } else if (arity == 3) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!p.same_block(a, b)) continue;
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              auto at = [&](int x, int y, int z) {
                return t[(static_cast<size_t>(x) * n + y) * n + z];
              };
              if (!p.same_block(at(a, c, d), at(b, c, d))) return false;
              if (!p.same_block(at(c, a, d), at(c, b, d))) return false;
              if (!p.same_block(at(c, d, a), at(c, d, b))) return false;
            }
        }
    }
  }
  return true;
}

// Greatest congruence refining init, by signature refinement: elements are
// repeatedly split by the blocks reached when one coordinate of an operation
// varies and the others run over all parameters.  Terminates in <= n rounds.
inline Partition coarsest_stable_partition(const FiniteAlgebra& alg, const Partition& init) {
  int n = alg.size();
  if (init.size() != n) throw std::invalid_argument("partition size mismatch");
  Partition cur = init;
  cur.normalize();

  while (true) {
    // signature of an element: current block plus the result blocks under
    // every (op, position, parameter tuple)
    std::vector<std::vector<int>> key(n);
    for (int a = 0; a < n; ++a) key[a].push_back(cur.block[a]);
    for (const auto& [name, arity] : alg.sig().ops()) {
      const auto& t = alg.table(name);
      if (arity == 1) {
        for (int a = 0; a < n; ++a) key[a].push_back(cur.block[t[a]]);
      } else if (arity == 2) {
        for (int a = 0; a < n; ++a)
          for (int par = 0; par < n; ++par) {
            key[a].push_back(cur.block[t[static_cast<size_t>(a) * n + par]]);
            key[a].push_back(cur.block[t[static_cast<size_t>(par) * n + a]]);
          }
      } else if (arity == 3) {
        for (int a = 0; a < n; ++a)
          for (int p1 = 0; p1 < n; ++p1)
            for (int p2 = 0; p2 < n; ++p2) {
              auto at = [&](int x, int y, int z) {
                return t[(static_cast<size_t>(x) * n + y) * n + z];
              };
              key[a].push_back(cur.block[at(a, p1, p2)]);
              key[a].push_back(cur.block[at(p1, a, p2)]);
              key[a].push_back(cur.block[at(p1, p2, a)]);
            }
      }
    }
    Partition next;
    next.block.resize(n);
    std::map<std::vector<int>, int> ids;
    for (int a = 0; a < n; ++a) {
      auto it = ids.emplace(std::move(key[a]), static_cast<int>(ids.size())).first;
      next.block[a] = it->second;
    }
    next.normalize();
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

// Quotient by a congruence; block ids follow Partition normal form (numbered
// by least element), and the returned map sends old elements to new ones.
inline std::pair<FiniteAlgebra, std::vector<int>> quotient_algebra(const FiniteAlgebra& alg,
                                                                   const Partition& congruence) {
  Partition p = congruence;
  p.normalize();
  int m = p.num_blocks();
  std::vector<int> rep(m, -1);
  for (int a = 0; a < alg.size(); ++a)
    if (rep[p.block[a]] == -1) rep[p.block[a]] = a;

  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, arity] : alg.sig().ops()) {
    const auto& t = alg.table(name);
    if (arity == 0) {
      tables[name] = {p.block[t[0]]};
    } else if (arity == 1) {
      std::vector<int> q(m);
      for (int a = 0; a < m; ++a) q[a] = p.block[t[rep[a]]];
      tables[name] = std::move(q);
    } else if (arity == 2) {
      std::vector<int> q(static_cast<size_t>(m) * m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          q[static_cast<size_t>(a) * m + b] =
              p.block[t[static_cast<size_t>(rep[a]) * alg.size() + rep[b]]];
      tables[name] = std::move(q);
    } else {
      std::vector<int> q(static_cast<size_t>(m) * m * m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c)
            q[(static_cast<size_t>(a) * m + b) * m + c] =
                p.block[t[(static_cast<size_t>(rep[a]) * alg.size() + rep[b]) * alg.size() +
                          rep[c]]];
      tables[name] = std::move(q);
    }
  }
  return {FiniteAlgebra(alg.sig(), m, std::move(tables)), p.block};
}

}  // namespace weaklog
