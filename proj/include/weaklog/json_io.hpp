#pragma once

#include <json.hpp>

#include "weaklog/algz.hpp"
#include "weaklog/bimatrix.hpp"

namespace weaklog {

// ordered_json keeps object keys in insertion order, so serialized artifacts
// are byte-stable across runs.
using json = nlohmann::ordered_json;

inline json signature_to_json(const Signature& sig) {
  json ops = json::array();
  for (const auto& [name, arity] : sig.ops()) ops.push_back(json::array({name, arity}));
  return ops;
}

inline Signature signature_from_json(const json& j) {
  std::vector<std::pair<std::string, int>> ops;
  for (const auto& e : j) ops.emplace_back(e.at(0).get<std::string>(), e.at(1).get<int>());
  return Signature(std::move(ops));
}

inline json algebra_to_json(const FiniteAlgebra& alg) {
  json j;
  j["sig"] = signature_to_json(alg.sig());
  j["size"] = alg.size();
  json tables;
  for (const auto& [name, arity] : alg.sig().ops()) tables[name] = alg.table(name);
  j["tables"] = std::move(tables);
  return j;
}

inline FiniteAlgebra algebra_from_json(const json& j) {
  for (const char* key : {"sig", "size", "tables"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("algebra json lacks '") + key + "'");
  Signature sig = signature_from_json(j["sig"]);
  std::map<std::string, std::vector<int>> tables;
  for (const auto& [name, table] : j["tables"].items())
    tables.emplace(name, table.get<std::vector<int>>());
  return FiniteAlgebra(std::move(sig), j["size"].get<int>(), std::move(tables));
}

// Expanded algebras add the core; an optional provenance note travels along
// untouched (e.g. which frame the algebra came from).
inline json expanded_to_json(const ExpandedAlgebra& A, const std::string& provenance = "") {
  json j = algebra_to_json(A.alg);
  j["core"] = A.core;
  if (!provenance.empty()) j["provenance"] = provenance;
  return j;
}

inline ExpandedAlgebra expanded_from_json(const json& j) {
  if (!j.contains("core")) throw std::invalid_argument("expanded algebra json lacks 'core'");
  return ExpandedAlgebra(algebra_from_json(j), j["core"].get<std::vector<int>>());
}

inline json bimatrix_to_json(const Bimatrix& m, const std::string& provenance = "") {
  json j = algebra_to_json(m.alg);
  j["truth"] = m.truth;
  j["core"] = m.core;
  if (!provenance.empty()) j["provenance"] = provenance;
  return j;
}

inline Bimatrix bimatrix_from_json(const json& j) {
  for (const char* key : {"truth", "core"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("bimatrix json lacks '") + key + "'");
  return Bimatrix(algebra_from_json(j), j["truth"].get<std::vector<int>>(),
                  j["core"].get<std::vector<int>>());
}

inline json pair_to_json(const TransformerPair& t) {
  json j;
  json tau = json::array();
  for (const auto& e : t.tau)
    tau.push_back(json{{"lhs", to_string(e.lhs)}, {"rhs", to_string(e.rhs)}});
  j["tau"] = std::move(tau);
  json delta = json::array();
  for (const auto& d : t.delta) delta.push_back(to_string(d));
  j["delta"] = std::move(delta);
  return j;
}

inline TransformerPair pair_from_json(const json& j, const Signature& sig) {
  for (const char* key : {"tau", "delta"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("transformer json lacks '") + key + "'");
  TransformerPair t;
  for (const auto& e : j["tau"])
    t.tau.push_back({parse_formula(e.at("lhs").get<std::string>(), sig, true),
                     parse_formula(e.at("rhs").get<std::string>(), sig, true)});
  for (const auto& d : j["delta"])
    t.delta.push_back(parse_formula(d.get<std::string>(), sig, true));
  return t;
}

}  // namespace weaklog
