#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weaklog/subst.hpp"

namespace weaklog {

// Sort constraint on a schema metavariable: any formula, or standard
// (or-free; tensor permitted).
enum class Sort { any, standard };

struct Schema {
  std::string name;                    // e.g. "A10"
  Formula tmpl;                        // template with metavariable leaves
  std::map<std::string, Sort> sorts;   // metavariables absent here default to any

  Sort sort_of(const std::string& metavar) const {
    auto it = sorts.find(metavar);
    return it != sorts.end() ? it->second : Sort::any;
  }
};

using MetaBinding = std::map<std::string, Formula>;

namespace detail {

inline bool match_rec(const Formula& tmpl, const Formula& f, const Schema& s, MetaBinding& b) {
  switch (tmpl.kind()) {
    case NodeKind::atom:
      return f.is_atom() && f.atom_index() == tmpl.atom_index();
    case NodeKind::meta: {
      auto [it, inserted] = b.emplace(tmpl.name(), f);
      if (!inserted) return it->second == f;  // repeated metavariable: images must agree
      if (s.sort_of(tmpl.name()) == Sort::standard && !is_or_free(f)) {
        b.erase(it);
        return false;
      }
      return true;
    }
    case NodeKind::app: {
      if (!f.is_app() || f.name() != tmpl.name() || f.args().size() != tmpl.args().size())
        return false;
      for (size_t i = 0; i < tmpl.args().size(); ++i)
        if (!match_rec(tmpl.args()[i], f.args()[i], s, b)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// First-order matching of f against the schema template; on success returns
// the (unique) binding of metavariables, respecting sort constraints.
inline std::optional<MetaBinding> match_schema(const Schema& s, const Formula& f) {
  MetaBinding b;
  if (detail::match_rec(s.tmpl, f, s, b)) return b;
  return std::nullopt;
}

// Instantiates the template; raises if the binding misses a metavariable or
// violates a sort constraint.
inline Formula instantiate_schema(const Schema& s, const MetaBinding& b) {
  for (const auto& [name, sort] : s.sorts)
    if (sort == Sort::standard) {
      auto it = b.find(name);
      if (it != b.end() && !is_or_free(it->second))
        throw std::invalid_argument("metavariable _" + name + " requires an or-free instance");
    }
  return subst_meta(s.tmpl, b);
}

// Metavariable names occurring in a template, sorted and deduplicated.
inline std::vector<std::string> meta_names(const Formula& tmpl) {
  std::set<std::string> seen;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    if (f.is_meta()) {
      seen.insert(f.name());
      return;
    }
    if (f.is_app())
      for (const auto& a : f.args()) self(self, a);
  };
  walk(walk, tmpl);
  return {seen.begin(), seen.end()};
}

}  // namespace weaklog
