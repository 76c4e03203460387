#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weaklog {

// Algebraic signature: an ordered list of (operation name, arity).
// Two built-in signatures cover the logics handled here:
//   L_int = {and/2, or/2, imp/2, bot/0}
//   L_inq = L_int + {tensor/2}
class Signature {
 public:
  Signature() = default;

  explicit Signature(std::vector<std::pair<std::string, int>> ops) : ops_(std::move(ops)) {
    for (const auto& [name, arity] : ops_) {
      if (name.empty()) throw std::invalid_argument("signature: empty operation name");
      if (arity < 0 || arity > 3) throw std::invalid_argument("signature: arity of '" + name + "' out of range [0,3]");
      int seen = 0;
      for (const auto& [other, _] : ops_) seen += (other == name);
      if (seen != 1) throw std::invalid_argument("signature: duplicate operation '" + name + "'");
    }
  }

  static Signature l_int() {
    return Signature({{"and", 2}, {"or", 2}, {"imp", 2}, {"bot", 0}});
  }

  static Signature l_inq() {
    return Signature({{"and", 2}, {"or", 2}, {"imp", 2}, {"bot", 0}, {"tensor", 2}});
  }

  // Accepts "int", "L_int", "inq", "L_inq".
  static Signature by_name(const std::string& name) {
    if (name == "int" || name == "L_int") return l_int();
    if (name == "inq" || name == "L_inq") return l_inq();
    throw std::invalid_argument("unknown signature name '" + name + "'");
  }

  const std::vector<std::pair<std::string, int>>& ops() const { return ops_; }

  bool has(const std::string& name) const { return arity(name).has_value(); }

  std::optional<int> arity(const std::string& name) const {
    for (const auto& [op, ar] : ops_)
      if (op == name) return ar;
    return std::nullopt;
  }

  int arity_checked(const std::string& name) const {
    auto a = arity(name);
    if (!a) throw std::invalid_argument("operation '" + name + "' not in signature");
    return *a;
  }

  bool operator==(const Signature& o) const { return ops_ == o.ops_; }
  bool operator!=(const Signature& o) const { return !(*this == o); }

 private:
  std::vector<std::pair<std::string, int>> ops_;
};

}  // namespace weaklog
