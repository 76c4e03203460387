#pragma once

#include <map>
#include <string>

#include "weaklog/formula.hpp"

namespace weaklog {

enum class SubstClass { atomic, or_free, general };

inline const char* to_string(SubstClass c) {
  switch (c) {
    case SubstClass::atomic: return "atomic";
    case SubstClass::or_free: return "or_free";
    case SubstClass::general: return "general";
  }
  return "?";
}

// Finite-support substitution of formulas for atoms; atoms outside the map
// are fixed.  apply() preserves sharing: untouched subtrees are returned
// as-is rather than rebuilt.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<int, Formula> map) : map_(std::move(map)) {}

  const std::map<int, Formula>& map() const { return map_; }
  bool empty() const { return map_.empty(); }

  void set(int atom, Formula image) { map_.insert_or_assign(atom, std::move(image)); }

  Formula image(int atom) const {
    auto it = map_.find(atom);
    return it != map_.end() ? it->second : Formula::atom(atom);
  }

  Formula apply(const Formula& f) const {
    switch (f.kind()) {
      case NodeKind::atom: {
        auto it = map_.find(f.atom_index());
        return it != map_.end() ? it->second : f;
      }
      case NodeKind::meta:
        return f;
      case NodeKind::app: {
        if (map_.empty()) return f;
        std::vector<Formula> args;
        args.reserve(f.args().size());
        bool changed = false;
        for (const auto& a : f.args()) {
          args.push_back(apply(a));
          changed = changed || args.back().node() != a.node();
        }
        if (!changed) return f;
        return Formula::app(f.name(), std::move(args));
      }
    }
    throw std::logic_error("unreachable");
  }

  std::vector<Formula> apply(std::span<const Formula> fs) const {
    std::vector<Formula> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(apply(f));
    return out;
  }

  Equation apply(const Equation& e) const { return {apply(e.lhs), apply(e.rhs)}; }

  // Composition acting as apply(compose(s2, s1), f) == apply(s2, apply(s1, f)).
  static Substitution compose(const Substitution& s2, const Substitution& s1) {
    std::map<int, Formula> out;
    for (const auto& [atom, img] : s1.map_) out.insert_or_assign(atom, s2.apply(img));
    for (const auto& [atom, img] : s2.map_) out.emplace(atom, img);  // only where s1 is silent
    return Substitution(std::move(out));
  }

  // Classifies the images of the listed atoms: atomic (all images are atoms),
  // or_free (no image contains or; tensor allowed), else general.
  SubstClass classify(std::span<const int> atoms) const {
    bool atomic = true, orfree = true;
    for (int a : atoms) {
      Formula img = image(a);
      atomic = atomic && img.is_atom();
      orfree = orfree && is_or_free(img);
    }
    if (atomic) return SubstClass::atomic;
    if (orfree) return SubstClass::or_free;
    return SubstClass::general;
  }

  SubstClass classify() const {
    std::vector<int> atoms;
    atoms.reserve(map_.size());
    for (const auto& [a, _] : map_) atoms.push_back(a);
    return classify(atoms);
  }

 private:
  std::map<int, Formula> map_;
};

// Replaces metavariables by formulas; unbound metavariables raise.
inline Formula subst_meta(const Formula& tmpl, const std::map<std::string, Formula>& binding) {
  switch (tmpl.kind()) {
    case NodeKind::atom:
      return tmpl;
    case NodeKind::meta: {
      auto it = binding.find(tmpl.name());
      if (it == binding.end()) throw std::invalid_argument("unbound metavariable _" + tmpl.name());
      return it->second;
    }
    case NodeKind::app: {
      std::vector<Formula> args;
      args.reserve(tmpl.args().size());
      bool changed = false;
      for (const auto& a : tmpl.args()) {
        args.push_back(subst_meta(a, binding));
        changed = changed || args.back().node() != a.node();
      }
      if (!changed) return tmpl;
      return Formula::app(tmpl.name(), std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace weaklog
