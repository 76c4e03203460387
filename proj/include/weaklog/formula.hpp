#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weaklog/signature.hpp"

namespace weaklog {

class Formula;

enum class NodeKind : uint8_t { atom, meta, app };

// Immutable formula node; formulas are shared_ptr values with structural
// sharing, so copying a Formula is cheap and subtrees can be reused freely.
// Metavariable nodes only appear in schema/transformer templates.
struct FormulaNode {
  NodeKind kind;
  int atom = -1;                // kind == atom
  std::string name;             // connective (app) or metavariable name (meta)
  std::vector<Formula> args;    // kind == app
  uint64_t hash = 0;            // structural hash, precomputed
  int size = 1;                 // node count
  int depth = 0;                // leaf = 0
};

class Formula {
 public:
  Formula() = default;  // null formula; only valid as a placeholder

  static Formula atom(int index);
  static Formula meta(std::string name);
  static Formula app(std::string conn, std::vector<Formula> args);

  bool valid() const { return node_ != nullptr; }
  NodeKind kind() const { return check()->kind; }
  bool is_atom() const { return check()->kind == NodeKind::atom; }
  bool is_meta() const { return check()->kind == NodeKind::meta; }
  bool is_app() const { return check()->kind == NodeKind::app; }
  int atom_index() const { return check()->atom; }
  const std::string& name() const { return check()->name; }
  const std::vector<Formula>& args() const { return check()->args; }
  uint64_t hash() const { return check()->hash; }
  int size() const { return check()->size; }
  int depth() const { return check()->depth; }

  // Pointer identity; stable key for memoization over one shared tree.
  const FormulaNode* node() const { return node_.get(); }
  // shared handle, for caches that must keep the node alive (a raw-pointer
  // key could be reused by a later allocation once the formula dies)
  const std::shared_ptr<const FormulaNode>& share() const { return node_; }

  bool operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    return equal(*node_, *o.node_);
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  static bool equal(const FormulaNode& a, const FormulaNode& b) {
    if (a.hash != b.hash || a.kind != b.kind) return false;
    switch (a.kind) {
      case NodeKind::atom: return a.atom == b.atom;
      case NodeKind::meta: return a.name == b.name;
      case NodeKind::app:
        if (a.name != b.name || a.args.size() != b.args.size()) return false;
        for (size_t i = 0; i < a.args.size(); ++i)
          if (a.args[i] != b.args[i]) return false;
        return true;
    }
    return false;
  }

  const FormulaNode* check() const {
    if (!node_) throw std::logic_error("null formula");
    return node_.get();
  }

  std::shared_ptr<const FormulaNode> node_;
};

namespace detail {
inline uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
inline uint64_t str_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}
}  // namespace detail

inline Formula Formula::atom(int index) {
  if (index < 0) throw std::invalid_argument("atom index must be non-negative");
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::atom;
  n->atom = index;
  n->hash = detail::mix(0x11, static_cast<uint64_t>(index));
  Formula f;
  f.node_ = std::move(n);
  return f;
}

inline Formula Formula::meta(std::string name) {
  if (name.empty()) throw std::invalid_argument("metavariable name must be non-empty");
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::meta;
  n->name = std::move(name);
  n->hash = detail::mix(0x22, detail::str_hash(n->name));
  Formula f;
  f.node_ = std::move(n);
  return f;
}

inline Formula Formula::app(std::string conn, std::vector<Formula> args) {
  if (conn.empty()) throw std::invalid_argument("connective name must be non-empty");
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::app;
  n->name = std::move(conn);
  n->args = std::move(args);
  uint64_t h = detail::mix(0x33, detail::str_hash(n->name));
  int size = 1, depth = 0;
  for (const auto& a : n->args) {
    if (!a.valid()) throw std::invalid_argument("null argument in formula application");
    h = detail::mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
  }
  n->hash = h;
  n->size = size;
  n->depth = depth;
  Formula f;
  f.node_ = std::move(n);
  return f;
}

// Builders for the connectives of L_int / L_inq.  Negation and <-> are sugar:
// formulas store the desugared shape only.
inline Formula land(Formula a, Formula b) { return Formula::app("and", {std::move(a), std::move(b)}); }
inline Formula lor(Formula a, Formula b) { return Formula::app("or", {std::move(a), std::move(b)}); }
inline Formula limp(Formula a, Formula b) { return Formula::app("imp", {std::move(a), std::move(b)}); }
inline Formula ltensor(Formula a, Formula b) { return Formula::app("tensor", {std::move(a), std::move(b)}); }
inline Formula lbot() { return Formula::app("bot", {}); }
inline Formula lnot(Formula a) { return limp(std::move(a), lbot()); }
inline Formula liff(Formula a, Formula b) { return land(limp(a, b), limp(b, a)); }
// The canonical top term bot -> bot (the signatures carry no top constant).
inline Formula ltop() { return limp(lbot(), lbot()); }

inline Formula lvar(int i) { return Formula::atom(i); }

struct FormulaHash {
  size_t operator()(const Formula& f) const { return static_cast<size_t>(f.hash()); }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return a == b; }
};

inline void collect_atoms(const Formula& f, std::set<int>& out) {
  switch (f.kind()) {
    case NodeKind::atom: out.insert(f.atom_index()); return;
    case NodeKind::meta: return;
    case NodeKind::app:
      for (const auto& a : f.args()) collect_atoms(a, out);
      return;
  }
}

// Sorted distinct atom indices occurring in f.
inline std::vector<int> atoms_of(const Formula& f) {
  std::set<int> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

inline std::vector<int> atoms_of(std::span<const Formula> fs, const Formula& extra) {
  std::set<int> s;
  for (const auto& f : fs) collect_atoms(f, s);
  collect_atoms(extra, s);
  return {s.begin(), s.end()};
}

inline bool contains_connective(const Formula& f, const std::string& conn) {
  if (f.is_app()) {
    if (f.name() == conn) return true;
    for (const auto& a : f.args())
      if (contains_connective(a, conn)) return true;
  }
  return false;
}

// "Standard" formulas are the or-free ones; tensor is permitted.
inline bool is_or_free(const Formula& f) { return !contains_connective(f, "or"); }

inline bool has_meta(const Formula& f) {
  if (f.is_meta()) return true;
  if (f.is_app())
    for (const auto& a : f.args())
      if (has_meta(a)) return true;
  return false;
}

inline void collect_metas(const Formula& f, std::set<std::string>& out) {
  if (f.is_meta()) out.insert(f.name());
  if (f.is_app())
    for (const auto& a : f.args()) collect_metas(a, out);
}

// Checks that every connective of f belongs to sig (atoms and metas pass).
inline bool well_formed_over(const Formula& f, const Signature& sig) {
  if (f.is_app()) {
    auto ar = sig.arity(f.name());
    if (!ar || static_cast<size_t>(*ar) != f.args().size()) return false;
    for (const auto& a : f.args())
      if (!well_formed_over(a, sig)) return false;
  }
  return true;
}

// Equation between two terms (formulas double as algebraic terms).
struct Equation {
  Formula lhs, rhs;
  bool operator==(const Equation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

// Rewrites every tensor node to or; used where a proof reads tensor as join.
inline Formula tensor_as_or(const Formula& f) {
  if (!f.is_app()) return f;
  std::vector<Formula> args;
  args.reserve(f.args().size());
  bool changed = false;
  for (const auto& a : f.args()) {
    args.push_back(tensor_as_or(a));
    changed = changed || args.back().node() != a.node();
  }
  if (f.name() == "tensor") return lor(args[0], args[1]);
  if (!changed) return f;
  return Formula::app(f.name(), std::move(args));
}

}  // namespace weaklog
