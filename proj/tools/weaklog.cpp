#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "weaklog/json_io.hpp"
#include "weaklog/suite.hpp"

namespace {

using namespace weaklog;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string trimmed(std::string s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// One formula per line; blank lines and '#' comments skipped.
std::vector<Formula> parse_formula_lines(const std::string& text, const Signature& sig) {
  std::vector<Formula> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_formula(line, sig));
  }
  return out;
}

// Equations read "lhs ~ rhs"; negation is prefix-only, so the separating
// tilde is unambiguous.  '=' is accepted as an alias for the separator.
Equation parse_cli_equation(std::string text, const Signature& sig) {
  size_t eq = text.find('=');
  if (eq != std::string::npos) text[eq] = '~';
  return parse_equation(text, sig);
}

std::vector<Equation> parse_equation_lines(const std::string& text, const Signature& sig) {
  std::vector<Equation> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_cli_equation(line, sig));
  }
  return out;
}

// A single .json file, or every .json inside a directory in name order.
std::vector<std::string> algebra_files(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  if (files.empty()) throw std::runtime_error("no algebra files under " + path);
  return files;
}

struct AlgebraStock {
  std::vector<ExpandedAlgebra> K;
  std::vector<std::string> names;
  std::vector<std::string> provenance;
};

AlgebraStock load_algebras(const std::string& path) {
  AlgebraStock stock;
  for (const auto& file : algebra_files(path)) {
    json j = json::parse(slurp(file));
    stock.K.push_back(expanded_from_json(j));
    stock.names.push_back(file);
    stock.provenance.push_back(j.contains("provenance") ? j["provenance"].get<std::string>()
                                                        : "");
  }
  return stock;
}

std::string point_set_string(uint32_t mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1u) {
      if (!first) s += ", ";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

Signature logic_signature(const std::string& logic) {
  if (logic == "inqb" || logic == "inqi") return Signature::l_int();
  if (logic == "inqbt" || logic == "inqit") return Signature::l_inq();
  throw std::invalid_argument("unknown logic '" + logic + "'");
}

bool logic_is_classical(const std::string& logic) {
  return logic == "inqb" || logic == "inqbt";
}

// Premises fold into nested implications; for these support semantics the
// folded implication is valid exactly when the consequence holds, which lets
// one countermodel search decide entailment up to the frame bound.
Formula fold_premises(std::span<const Formula> gamma, const Formula& phi) {
  Formula f = phi;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) f = limp(*it, f);
  return f;
}

void emit(bool as_json, const json& report, const std::string& human) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& text, const std::string& signame, bool meta, bool as_json) {
  Signature sig = Signature::by_name(signame);
  Formula f = parse_formula(text, sig, meta);
  auto atoms = atoms_of(f);
  json rep{{"command", "parse"},
           {"formula", to_string(f)},
           {"atoms", atoms},
           {"or_free", is_or_free(f)}};
  std::ostringstream os;
  os << to_string(f) << "\n";
  os << "atoms:";
  for (int a : atoms) os << " p" << a;
  os << (atoms.empty() ? " none" : "") << "\n";
  os << "or-free: " << (is_or_free(f) ? "yes" : "no") << "\n";
  emit(as_json, rep, os.str());
  return 0;
}

int cmd_entail(const std::string& logic, const std::string& gamma_file, const std::string& phi_text,
               int frame_size, bool as_json) {
  Signature sig = logic_signature(logic);
  std::vector<Formula> gamma;
  if (!gamma_file.empty()) gamma = parse_formula_lines(slurp(gamma_file), sig);
  Formula phi = parse_formula(phi_text, sig);
  json rep{{"command", "entail"}, {"logic", logic}};
  std::ostringstream os;

  if (logic_is_classical(logic)) {
    auto r = inqb_entails(gamma, phi);
    rep["entails"] = r.entails;
    if (r.entails) {
      os << "entails\n";
      emit(as_json, rep, os.str());
      return 0;
    }
    int n = static_cast<int>(r.atoms.size());
    rep["witness"] = json{{"atoms", r.atoms},
                          {"team", team_to_string(r.counter_team, n)}};
    os << "refuted; counter-team " << team_to_string(r.counter_team, n) << " over atoms";
    for (int a : r.atoms) os << " p" << a;
    os << "\n";
    emit(as_json, rep, os.str());
    return 1;
  }

  Formula folded = fold_premises(gamma, phi);
  auto cm = inqi_countermodel_search(folded, frame_size);
  rep["frame_size"] = frame_size;
  rep["entails"] = !cm.has_value();
  if (!cm) {
    os << "entails (no countermodel up to frame size " << frame_size << ")\n";
    emit(as_json, rep, os.str());
    return 0;
  }
  const auto& m = cm->model;
  int n = m.poset.size();
  json val = json::object();
  for (const auto& [atom, up] : m.valuation)
    val["p" + std::to_string(atom)] = point_set_string(up, n);
  rep["witness"] = json{{"frame_index", cm->poset_index},
                        {"points", n},
                        {"valuation", std::move(val)},
                        {"team", point_set_string(cm->team, n)}};
  os << "refuted; frame " << cm->poset_index << " (" << n << " points), team "
     << point_set_string(cm->team, n) << "\n";
  for (const auto& [atom, up] : m.valuation)
    os << "  V(p" << atom << ") = " << point_set_string(up, n) << "\n";
  emit(as_json, rep, os.str());
  return 1;
}

int cmd_entail_core(const std::string& algebras, const std::string& theta_file,
                    const std::string& concl_text, bool as_json) {
  Signature sig = Signature::l_inq();
  auto stock = load_algebras(algebras);
  std::vector<Equation> theta;
  if (!theta_file.empty()) theta = parse_equation_lines(slurp(theta_file), sig);
  Equation concl = parse_cli_equation(concl_text, sig);
  auto r = core_entails(stock.K, theta, concl);
  json rep{{"command", "entail-core"},
           {"algebras", stock.names},
           {"entails", r.entails},
           {"vacuous", r.vacuous}};
  std::ostringstream os;
  if (r.entails) {
    os << (r.vacuous ? "entails (vacuously: no core assignment)\n" : "entails\n");
    emit(as_json, rep, os.str());
    return 0;
  }
  json w{{"algebra_index", r.algebra_index}, {"algebra", stock.names[r.algebra_index]}};
  json assign = json::object();
  for (const auto& [atom, elem] : r.witness) assign["p" + std::to_string(atom)] = elem;
  w["assignment"] = std::move(assign);
  if (!stock.provenance[r.algebra_index].empty())
    w["provenance"] = stock.provenance[r.algebra_index];
  rep["witness"] = std::move(w);
  os << "refuted on algebra " << r.algebra_index << " (" << stock.names[r.algebra_index]
     << ")";
  if (!stock.provenance[r.algebra_index].empty())
    os << " [" << stock.provenance[r.algebra_index] << "]";
  os << "\n";
  for (const auto& [atom, elem] : r.witness)
    os << "  p" << atom << " -> element " << elem << "\n";
  emit(as_json, rep, os.str());
  return 1;
}

int cmd_check_proof(const std::string& system, const std::string& premises_file,
                    const std::string& proof_file, bool as_json) {
  AxiomSystem sys = axiom_system(system);
  std::vector<Formula> premises;
  if (!premises_file.empty()) premises = parse_formula_lines(slurp(premises_file), sys.sig);
  Derivation d = parse_derivation(slurp(proof_file), sys.sig);
  auto r = check_derivation(sys, premises, d);
  json rep{{"command", "check-proof"},
           {"system", sys.name},
           {"lines", d.lines.size()},
           {"ok", r.ok}};
  std::ostringstream os;
  if (r.ok) {
    os << "valid derivation of " << to_string(d.lines.back().formula) << " (" << d.lines.size()
       << " lines)\n";
    emit(as_json, rep, os.str());
    return 0;
  }
  rep["first_bad_line"] = r.first_bad_line;
  rep["reason"] = r.reason;
  os << "invalid at line " << r.first_bad_line << ": " << r.reason << "\n";
  emit(as_json, rep, os.str());
  return 1;
}

int cmd_nf(const std::string& text, const std::string& signame, size_t cap, bool as_json) {
  Signature sig = Signature::by_name(signame);
  Formula f = parse_formula(text, sig);
  auto disjuncts = dnf(f, sig, cap);
  json rep{{"command", "nf"}, {"formula", to_string(f)}};
  json arr = json::array();
  std::ostringstream os;
  for (const auto& d : disjuncts) {
    arr.push_back(to_string(d));
    os << to_string(d) << "\n";
  }
  rep["disjuncts"] = std::move(arr);
  emit(as_json, rep, os.str());
  return 0;
}

int cmd_gen_medvedev(int s, bool tensor, const std::string& out, bool as_json) {
  auto h = medvedev_algebra(s);
  FiniteAlgebra alg = tensor ? add_tensor(h) : h.alg;
  if (tensor) {
    auto tr = verify_tensor(alg);
    if (!tr.dist_ok || !tr.mon_ok)
      throw std::logic_error("tensor construction failed its structural checks");
  }
  ExpandedAlgebra A = regular_core(alg);
  std::string provenance = "powerset-frame s=" + std::to_string(s) +
                           (tensor ? " with tensor" : "");
  json j = expanded_to_json(A, provenance);
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    spill(out, text);
  if (!out.empty()) {
    json rep{{"command", "gen-medvedev"}, {"s", s}, {"size", A.alg.size()},
             {"core_size", A.core.size()}, {"out", out}};
    std::ostringstream os;
    os << "wrote " << out << ": " << A.alg.size() << " elements, core " << A.core.size()
       << "\n";
    emit(as_json, rep, os.str());
  }
  return 0;
}

int cmd_check_alg(const std::string& pair_file, const std::string& algebras,
                  const std::string& logic, const std::string& corpus_file, int frame_size,
                  bool as_json) {
  Signature sig = logic_signature(logic);
  TransformerPair pair = pair_from_json(json::parse(slurp(pair_file)), sig);
  auto stock = load_algebras(algebras);
  json rep{{"command", "check-alg"}, {"logic", logic}, {"algebras", stock.names}};
  std::ostringstream os;

  auto rep4 = check_alg4(stock.K, pair);
  rep["equation_equivalence"] = json{{"ok", rep4.ok}};
  if (!rep4.ok) {
    rep["equation_equivalence"]["algebra_index"] = rep4.algebra_index;
    rep["equation_equivalence"]["pair"] = json::array({rep4.a, rep4.b});
    rep["equation_equivalence"]["detail"] = rep4.detail;
    os << "equation equivalence fails on algebra " << rep4.algebra_index << ": " << rep4.detail
       << "\n";
    emit(as_json, rep, os.str());
    return 1;
  }
  os << "equation equivalence holds on " << stock.K.size() << " algebras\n";

  if (!corpus_file.empty()) {
    auto corpus = parse_formula_lines(slurp(corpus_file), sig);
    LogicOracle oracle;
    if (logic_is_classical(logic)) {
      oracle = [](std::span<const Formula> gamma, const Formula& phi) {
        return inqb_entails(gamma, phi).entails;
      };
    } else {
      oracle = [frame_size](std::span<const Formula> gamma, const Formula& phi) {
        return !inqi_countermodel_search(fold_premises(gamma, phi), frame_size).has_value();
      };
    }
    auto rep3 = check_alg3(oracle, pair, corpus);
    rep["back_translation"] = json{{"ok", rep3.ok}, {"checked", rep3.checked}};
    if (!rep3.ok) {
      rep["back_translation"]["formula"] = to_string(rep3.failures[0].phi);
      rep["back_translation"]["direction"] = rep3.failures[0].forward ? "forward" : "backward";
      os << "back-translation fails ("
         << (rep3.failures[0].forward ? "forward" : "backward") << ") at "
         << to_string(rep3.failures[0].phi) << "\n";
      emit(as_json, rep, os.str());
      return 1;
    }
    os << "back-translation holds on " << rep3.checked << " corpus formulas\n";
  }
  emit(as_json, rep, os.str());
  return 0;
}

int cmd_reduce(const std::string& matrix_file, const std::string& out, bool as_json) {
  Bimatrix m = bimatrix_from_json(json::parse(slurp(matrix_file)));
  auto red = leibniz_reduce(m);
  json j = bimatrix_to_json(red.reduced);
  j["projection"] = red.projection;
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    spill(out, text);
  if (!out.empty()) {
    json rep{{"command", "reduce"},
             {"size", m.alg.size()},
             {"reduced_size", red.reduced.alg.size()},
             {"out", out}};
    std::ostringstream os;
    os << "reduced " << m.alg.size() << " -> " << red.reduced.alg.size() << " elements, wrote "
       << out << "\n";
    emit(as_json, rep, os.str());
  }
  return 0;
}

int cmd_export_horn(const std::string& pairs_file, bool weak, const std::string& signame,
                    const std::string& out) {
  Signature sig = Signature::by_name(signame);
  auto pairs = parse_logic_pairs(slurp(pairs_file), sig);
  std::string theory = export_horn(pairs, weak);
  if (out.empty())
    std::cout << theory;
  else
    spill(out, theory);
  return 0;
}

int cmd_suite(uint64_t seed, int threads, const std::string& data_dir, bool as_json) {
  if (as_json) {
    auto results = run_acceptance(seed, threads, data_dir);
    json arr = json::array();
    bool all = true;
    for (const auto& r : results) {
      arr.push_back(json{{"index", r.index},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
      all = all && r.pass;
    }
    json rep{{"command", "suite"}, {"seed", seed}, {"threads", threads}, {"pass", all},
             {"criteria", std::move(arr)}};
    std::cout << rep.dump(2) << "\n";
    return all ? 0 : 1;
  }
  bool all = true;
  run_acceptance(seed, threads, data_dir, [&](const CriterionResult& r) {
    std::printf("[%s] criterion %d: %s - %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
  });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model toolkit for weak propositional logics"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable report");

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and print its canonical form");
  std::string p_formula, p_sig = "inq";
  bool p_meta = false;
  parse_cmd->add_option("--formula", p_formula, "formula text")->required();
  parse_cmd->add_option("--sig", p_sig, "signature: int or inq");
  parse_cmd->add_flag("--meta", p_meta, "allow metavariables");

  auto* entail_cmd = app.add_subcommand("entail", "decide consequence in a team semantics");
  std::string e_logic, e_gamma, e_phi;
  int e_frame = 4;
  entail_cmd->add_option("--logic", e_logic, "inqb, inqbt, inqi or inqit")->required();
  entail_cmd->add_option("--gamma", e_gamma, "premise file, one formula per line");
  entail_cmd->add_option("--phi", e_phi, "conclusion formula")->required();
  entail_cmd->add_option("--frame-size", e_frame, "countermodel frame bound (intuitionistic)");

  auto* core_cmd = app.add_subcommand("entail-core", "equational consequence over core assignments");
  std::string c_algebras, c_theta, c_concl;
  core_cmd->add_option("--algebras", c_algebras, "algebra JSON file or directory")->required();
  core_cmd->add_option("--theta", c_theta, "premise equations file");
  core_cmd->add_option("--concl", c_concl, "conclusion equation, 'lhs ~ rhs'")->required();

  auto* proof_cmd = app.add_subcommand("check-proof", "verify a Hilbert-style derivation");
  std::string pr_system, pr_premises, pr_proof;
  proof_cmd->add_option("--system", pr_system, "inqb, inqbt, inqi or inqit")->required();
  proof_cmd->add_option("--premises", pr_premises, "premise file");
  proof_cmd->add_option("--proof", pr_proof, "derivation file")->required();

  auto* nf_cmd = app.add_subcommand("nf", "disjunctive normal form");
  std::string n_formula, n_sig = "inq";
  size_t n_cap = 4096;
  nf_cmd->add_option("--formula", n_formula, "formula text")->required();
  nf_cmd->add_option("--sig", n_sig, "signature: int or inq");
  nf_cmd->add_option("--cap", n_cap, "disjunct cap");

  auto* gen_cmd = app.add_subcommand("gen-medvedev", "algebra of the powerset frame");
  int g_s = 0;
  bool g_tensor = false;
  std::string g_out;
  gen_cmd->add_option("--s", g_s, "base set size")->required();
  gen_cmd->add_flag("--tensor", g_tensor, "extend with the tensor connective");
  gen_cmd->add_option("--out", g_out, "output file (stdout when omitted)");

  auto* alg_cmd = app.add_subcommand("check-alg", "transformer equivalence and back-translation");
  std::string a_pair, a_algebras, a_logic = "inqb", a_corpus;
  int a_frame = 4;
  alg_cmd->add_option("--pair", a_pair, "transformer pair JSON")->required();
  alg_cmd->add_option("--algebras", a_algebras, "algebra JSON file or directory")->required();
  alg_cmd->add_option("--logic", a_logic, "inqb, inqbt, inqi or inqit");
  alg_cmd->add_option("--corpus", a_corpus, "formula corpus for back-translation");
  alg_cmd->add_option("--frame-size", a_frame, "oracle frame bound (intuitionistic)");

  auto* red_cmd = app.add_subcommand("reduce", "quotient a matrix by its largest"
                                               " predicate-compatible congruence");
  std::string r_matrix, r_out;
  red_cmd->add_option("--matrix", r_matrix, "bimatrix JSON")->required();
  red_cmd->add_option("--out", r_out, "output file (stdout when omitted)");

  auto* horn_cmd = app.add_subcommand("export-horn", "equality-free strict universal Horn theory");
  std::string h_pairs, h_sig = "inq", h_out;
  bool h_weak = false;
  horn_cmd->add_option("--logic-pairs", h_pairs, "consequence pairs file")->required();
  horn_cmd->add_flag("--weak", h_weak, "guard variables with the core predicate");
  horn_cmd->add_option("--sig", h_sig, "signature: int or inq");
  horn_cmd->add_option("--out", h_out, "output file (stdout when omitted)");

  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance batteries");
  uint64_t s_seed = 1;
  int s_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (s_threads < 1) s_threads = 1;
  std::string s_data = "tests/data";
  suite_cmd->add_option("--seed", s_seed, "sample seed");
  suite_cmd->add_option("--threads", s_threads, "worker threads");
  suite_cmd->add_option("--data-dir", s_data, "golden-file directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) return cmd_parse(p_formula, p_sig, p_meta, as_json);
    if (*entail_cmd) return cmd_entail(e_logic, e_gamma, e_phi, e_frame, as_json);
    if (*core_cmd) return cmd_entail_core(c_algebras, c_theta, c_concl, as_json);
    if (*proof_cmd) return cmd_check_proof(pr_system, pr_premises, pr_proof, as_json);
    if (*nf_cmd) return cmd_nf(n_formula, n_sig, n_cap, as_json);
    if (*gen_cmd) return cmd_gen_medvedev(g_s, g_tensor, g_out, as_json);
    if (*alg_cmd) return cmd_check_alg(a_pair, a_algebras, a_logic, a_corpus, a_frame, as_json);
    if (*red_cmd) return cmd_reduce(r_matrix, r_out, as_json);
    if (*horn_cmd) return cmd_export_horn(h_pairs, h_weak, h_sig, h_out);
    if (*suite_cmd) return cmd_suite(s_seed, s_threads, s_data, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
