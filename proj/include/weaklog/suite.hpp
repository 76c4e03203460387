#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "weaklog/algz.hpp"
#include "weaklog/bimatrix.hpp"
#include "weaklog/heyting.hpp"
#include "weaklog/team.hpp"

namespace weaklog {

// One acceptance check; detail carries instance counts or the first failure.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace suite_detail {

using Mask = SupportMasks::Mask;

inline Mask mand(const Mask& a, const Mask& b) {
  return {a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]};
}
inline bool mask_subset(const Mask& a, const Mask& b) {
  return ((a[0] & ~b[0]) | (a[1] & ~b[1]) | (a[2] & ~b[2]) | (a[3] & ~b[3])) == 0;
}
inline bool mask_eq(const Mask& a, const Mask& b) { return a == b; }
inline Mask full_mask(const SupportMasks& e) {
  Mask m{};
  for (uint32_t t = 0; t < e.team_count(); ++t) SupportMasks::set(m, t);
  return m;
}

inline std::vector<std::string> binary_ops(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [name, arity] : sig.ops())
    if (arity == 2) out.push_back(name);
  return out;
}

// Fixed connective numbering shared by the compiled-template evaluators.
inline int op_code(const std::string& name) {
  if (name == "and") return 0;
  if (name == "or") return 1;
  if (name == "imp") return 2;
  if (name == "tensor") return 3;
  throw std::logic_error("op_code: unsupported connective '" + name + "'");
}

// Every distinct formula tree of depth <= depth over p0..p_{atoms-1} and bot;
// each tree is produced exactly once because children come from the previous
// level, whose members are distinct by induction.
inline std::vector<Formula> depth_corpus(const Signature& sig, int atoms, int depth) {
  std::vector<Formula> leaves;
  for (int p = 0; p < atoms; ++p) leaves.push_back(Formula::atom(p));
  leaves.push_back(lbot());
  auto ops = binary_ops(sig);
  std::vector<Formula> cur = leaves;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> next = leaves;
    for (const auto& op : ops)
      for (const auto& a : cur)
        for (const auto& b : cur) next.push_back(Formula::app(op, {a, b}));
    cur = std::move(next);
  }
  return cur;
}

inline Formula random_tree(std::mt19937_64& rng, const std::vector<std::string>& ops, int atoms,
                           int depth) {
  if (depth == 0 || (rng() & 3u) == 0) {
    int k = static_cast<int>(rng() % static_cast<uint64_t>(atoms + 1));
    return k == atoms ? lbot() : Formula::atom(k);
  }
  const auto& op = ops[rng() % ops.size()];
  Formula a = random_tree(rng, ops, atoms, depth - 1);
  Formula b = random_tree(rng, ops, atoms, depth - 1);
  return Formula::app(op, {std::move(a), std::move(b)});
}

// Deterministic parallel fold over [0, n): workers pull fixed-size blocks off
// an atomic cursor; merging keeps the least failure index, so the outcome does
// not depend on scheduling.
struct StreamOutcome {
  uint64_t checked = 0;
  std::array<uint64_t, 4> counts{};
  size_t fail_index = SIZE_MAX;
  std::string fail_detail;

  void flag_failure(size_t index, std::string detail) {
    if (index < fail_index) {
      fail_index = index;
      fail_detail = std::move(detail);
    }
  }
  void merge(const StreamOutcome& o) {
    checked += o.checked;
    for (int i = 0; i < 4; ++i) counts[i] += o.counts[i];
    if (o.fail_index < fail_index) {
      fail_index = o.fail_index;
      fail_detail = o.fail_detail;
    }
  }
};

template <class Body>
StreamOutcome parallel_blocks(size_t n, size_t block, int threads, const Body& body) {
  std::atomic<size_t> cursor{0};
  auto run = [&]() {
    StreamOutcome acc;
    for (;;) {
      size_t b = cursor.fetch_add(block);
      if (b >= n) break;
      body(b, std::min(n, b + block), acc);
    }
    return acc;
  };
  if (threads <= 1) return run();
  std::vector<std::future<StreamOutcome>> fs;
  for (int i = 0; i < threads; ++i) fs.push_back(std::async(std::launch::async, run));
  StreamOutcome total;
  for (auto& f : fs) total.merge(f.get());
  return total;
}

template <class Fn>
CriterionResult timed_criterion(int index, std::string name, Fn&& fn) {
  CriterionResult r;
  r.index = index;
  r.name = std::move(name);
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------
// Axiom-soundness machinery.  Schema instances over the depth-<=1 corpus are
// checked through support profiles: corpus masks come from the mask engine,
// connective tables over corpus pairs are verified against the team
// evaluators, and each tuple is then a handful of word operations.

// Template compiled against metavariable slots.  op -1: slot leaf, -2: bot;
// table is set when both children are slots, so the mask is a table lookup.
struct TmplNode {
  int op = -1;
  int slot = -1;
  bool table = false;
  int sa = -1, sb = -1;
  std::unique_ptr<TmplNode> l, r;
};

inline std::unique_ptr<TmplNode> compile_tmpl(const Formula& f,
                                              const std::map<std::string, int>& slot) {
  auto n = std::make_unique<TmplNode>();
  if (f.is_meta()) {
    n->slot = slot.at(f.name());
    return n;
  }
  if (f.args().empty()) {
    if (f.name() != "bot") throw std::logic_error("compile_tmpl: unexpected leaf " + f.name());
    n->op = -2;
    return n;
  }
  n->op = op_code(f.name());
  const Formula& a = f.args()[0];
  const Formula& b = f.args()[1];
  if (a.is_meta() && b.is_meta()) {
    n->table = true;
    n->sa = slot.at(a.name());
    n->sb = slot.at(b.name());
    return n;
  }
  n->l = compile_tmpl(a, slot);
  n->r = compile_tmpl(b, slot);
  return n;
}

struct ClassicalCtx {
  const SupportMasks* engine = nullptr;
  int n = 0;
  std::vector<Formula> corpus;
  std::vector<int> std_ids;  // or-free corpus indices
  std::vector<Mask> masks;
  std::array<std::vector<Mask>, 4> tables;
  Mask all{}, bot{};
};

inline Mask apply_op_mask(const SupportMasks& e, int op, const Mask& a, const Mask& b) {
  switch (op) {
    case 0: return e.m_and(a, b);
    case 1: return e.m_or(a, b);
    case 2: return e.m_imp(a, b);
    case 3: return e.m_tensor(a, b);
  }
  throw std::logic_error("apply_op_mask: bad op");
}

// Corpus masks and pairwise connective tables, with every table entry checked
// against the engine's own tree computation and a deterministic subsample
// re-checked against the plain recursive evaluator.
inline ClassicalCtx build_classical_ctx(SupportMasks& engine, const Signature& sig, int atoms) {
  ClassicalCtx c;
  c.engine = &engine;
  c.corpus = depth_corpus(sig, atoms, 1);
  c.n = static_cast<int>(c.corpus.size());
  c.all = full_mask(engine);
  c.bot = engine.bot_mask();
  for (int i = 0; i < c.n; ++i) {
    c.masks.push_back(engine.compute(c.corpus[i]));
    if (is_or_free(c.corpus[i])) c.std_ids.push_back(i);
  }
  ClassicalEvaluator ev{ClassicalTeamModel(atoms)};
  size_t spot = 0;
  for (const auto& opname : binary_ops(sig)) {
    int op = op_code(opname);
    auto& tab = c.tables[op];
    tab.resize(static_cast<size_t>(c.n) * c.n);
    for (int i = 0; i < c.n; ++i)
      for (int j = 0; j < c.n; ++j) {
        Mask m = apply_op_mask(engine, op, c.masks[i], c.masks[j]);
        Formula f = Formula::app(opname, {c.corpus[i], c.corpus[j]});
        if (!mask_eq(m, engine.compute(f)))
          throw std::logic_error("support table disagrees with mask engine at " + to_string(f));
        if (++spot % 97 == 0) {
          for (uint32_t t = 0; t < engine.team_count(); ++t)
            if (SupportMasks::get(m, t) != ev.supports(t, f))
              throw std::logic_error("support table disagrees with evaluator at " + to_string(f));
        }
        tab[static_cast<size_t>(i) * c.n + j] = m;
      }
  }
  return c;
}

inline Mask ceval(const TmplNode& nd, const int* tuple, const ClassicalCtx& c) {
  if (nd.op == -1) return c.masks[tuple[nd.slot]];
  if (nd.op == -2) return c.bot;
  if (nd.table)
    return c.tables[nd.op][static_cast<size_t>(tuple[nd.sa]) * c.n + tuple[nd.sb]];
  Mask a = ceval(*nd.l, tuple, c);
  Mask b = ceval(*nd.r, tuple, c);
  return apply_op_mask(*c.engine, nd.op, a, b);
}

// Kripke counterpart over one (frame, valuation) pair; teams are point
// subsets, so a support profile fits one machine word per formula.
struct KModel {
  int poset_index = 0;
  int v0 = 0, v1 = 0;  // upset ordinals of the two atom valuations
  uint32_t full = 0;
  std::array<uint32_t, 8> stm{};  // per team: bitmask of teams inside its successor closure
  std::vector<uint32_t> masks;
  std::array<std::vector<uint32_t>, 4> tables;
};

inline uint32_t k_imp_mask(const KModel& m, uint32_t a, uint32_t b) {
  uint32_t bad = a & ~b, out = 0;
  for (uint32_t t = 0; t <= m.full; ++t)
    if ((bad & m.stm[t]) == 0) out |= 1u << t;
  return out;
}
// u covers t against t\u; smaller right parts are subsumed by persistence.
inline uint32_t k_tensor_mask(const KModel& m, uint32_t a, uint32_t b) {
  uint32_t out = 0;
  for (uint32_t t = 0; t <= m.full; ++t)
    for (uint32_t u = t;; u = (u - 1) & t) {
      if (((a >> u) & 1u) && ((b >> (t & ~u)) & 1u)) {
        out |= 1u << t;
        break;
      }
      if (u == 0) break;
    }
  return out;
}
inline uint32_t k_apply_op(const KModel& m, int op, uint32_t a, uint32_t b) {
  switch (op) {
    case 0: return a & b;
    case 1: return a | b;
    case 2: return k_imp_mask(m, a, b);
    case 3: return k_tensor_mask(m, a, b);
  }
  throw std::logic_error("k_apply_op: bad op");
}

struct KripkeCtx {
  int n = 0;
  std::vector<Formula> corpus;
  std::vector<int> std_ids;
  std::vector<KModel> models;
};

// All (frame, valuation) pairs with <= max_points points over two atoms, with
// corpus profiles taken from the team evaluator and every table entry checked
// back against it.
inline KripkeCtx build_kripke_ctx(const Signature& sig, int max_points) {
  KripkeCtx c;
  c.corpus = depth_corpus(sig, 2, 1);
  c.n = static_cast<int>(c.corpus.size());
  for (int i = 0; i < c.n; ++i)
    if (is_or_free(c.corpus[i])) c.std_ids.push_back(i);
  auto ops = binary_ops(sig);
  const auto& posets = all_posets_upto_iso(max_points);
  for (size_t pi = 0; pi < posets.size(); ++pi) {
    const auto& poset = posets[pi];
    auto upsets = poset.all_upsets();
    for (size_t a0 = 0; a0 < upsets.size(); ++a0)
      for (size_t a1 = 0; a1 < upsets.size(); ++a1) {
        KModel km;
        km.poset_index = static_cast<int>(pi);
        km.v0 = static_cast<int>(a0);
        km.v1 = static_cast<int>(a1);
        KripkeEvaluator ev(
            KripkeTeamModel(poset, {{0, upsets[a0]}, {1, upsets[a1]}}));
        km.full = ev.model().full_team();
        for (uint32_t t = 0; t <= km.full; ++t) {
          uint32_t succ = ev.model().successors(t);
          uint32_t s = 0;
          for (uint32_t u = 0; u <= km.full; ++u)
            if ((u & ~succ) == 0) s |= 1u << u;
          km.stm[t] = s;
        }
        km.masks.resize(c.n);
        for (int i = 0; i < c.n; ++i) {
          uint32_t m = 0;
          for (uint32_t t = 0; t <= km.full; ++t)
            if (ev.supports(t, c.corpus[i])) m |= 1u << t;
          km.masks[i] = m;
        }
        for (const auto& opname : ops) {
          int op = op_code(opname);
          auto& tab = km.tables[op];
          tab.resize(static_cast<size_t>(c.n) * c.n);
          for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) {
              uint32_t m = k_apply_op(km, op, km.masks[i], km.masks[j]);
              Formula f = Formula::app(opname, {c.corpus[i], c.corpus[j]});
              for (uint32_t t = 0; t <= km.full; ++t)
                if ((((m >> t) & 1u) != 0) != ev.supports(t, f))
                  throw std::logic_error("kripke table disagrees with evaluator at " +
                                         to_string(f));
              tab[static_cast<size_t>(i) * c.n + j] = m;
            }
        }
        c.models.push_back(std::move(km));
      }
  }
  return c;
}

inline uint32_t keval(const TmplNode& nd, const int* tuple, const KModel& m, int n) {
  if (nd.op == -1) return m.masks[tuple[nd.slot]];
  if (nd.op == -2) return 1u;  // only the empty team supports bot
  if (nd.table) return m.tables[nd.op][static_cast<size_t>(tuple[nd.sa]) * n + tuple[nd.sb]];
  uint32_t a = keval(*nd.l, tuple, m, n);
  uint32_t b = keval(*nd.r, tuple, m, n);
  return k_apply_op(m, nd.op, a, b);
}

// Slot layout shared by both scans: metavariables in sorted order, each with
// its domain (full corpus or the or-free part).
struct SlotPlan {
  std::vector<std::string> metas;
  std::map<std::string, int> slot;
  std::vector<const std::vector<int>*> domains;  // nullptr: full range 0..n-1
  std::unique_ptr<TmplNode> prog;
  uint64_t tuple_count(int n) const {
    uint64_t c = 1;
    for (const auto* d : domains) c *= d ? d->size() : static_cast<size_t>(n);
    return c;
  }
};

inline SlotPlan plan_schema(const Schema& s, const std::vector<int>& std_ids) {
  SlotPlan p;
  p.metas = meta_names(s.tmpl);
  for (size_t i = 0; i < p.metas.size(); ++i) p.slot[p.metas[i]] = static_cast<int>(i);
  for (const auto& mname : p.metas)
    p.domains.push_back(s.sort_of(mname) == Sort::standard ? &std_ids : nullptr);
  p.prog = compile_tmpl(s.tmpl, p.slot);
  return p;
}

template <class Check>
void scan_tuples(const SlotPlan& plan, int n, int threads, size_t slot0_begin, size_t slot0_end,
                 StreamOutcome& acc, const Check& check) {
  (void)threads;
  size_t k = plan.metas.size();
  std::vector<int> tuple(std::max<size_t>(k, 1), 0);
  std::vector<size_t> odo(std::max<size_t>(k, 1), 0);
  auto domain_size = [&](size_t i) {
    return plan.domains[i] ? plan.domains[i]->size() : static_cast<size_t>(n);
  };
  auto set_slot = [&](size_t i, size_t v) {
    tuple[i] = plan.domains[i] ? (*plan.domains[i])[v] : static_cast<int>(v);
  };
  if (k == 0) {
    check(tuple.data(), acc);
    return;
  }
  for (size_t v0 = slot0_begin; v0 < slot0_end; ++v0) {
    set_slot(0, v0);
    std::fill(odo.begin() + 1, odo.end(), 0);
    for (size_t i = 1; i < k; ++i) set_slot(i, 0);
    for (;;) {
      check(tuple.data(), acc);
      size_t i = k;
      while (i > 1 && odo[i - 1] + 1 == domain_size(i - 1)) odo[--i] = 0, set_slot(i, 0);
      if (i == 1) break;
      ++odo[i - 1];
      set_slot(i - 1, odo[i - 1]);
    }
  }
}

inline std::string describe_tuple(const Schema& s, const SlotPlan& plan,
                                  const std::vector<Formula>& corpus, const int* tuple) {
  MetaBinding b;
  for (size_t i = 0; i < plan.metas.size(); ++i) b[plan.metas[i]] = corpus[tuple[i]];
  return s.name + " at " + to_string(instantiate_schema(s, b));
}

}  // namespace suite_detail

// --------------------------------------------------------------------------
// criterion 1: two-atom support vectors

inline CriterionResult criterion_team_vectors() {
  using namespace suite_detail;
  return timed_criterion(1, "two-atom support vectors", [&](CriterionResult& r) {
    auto sig = Signature::l_int();
    Formula weak_split = parse_formula("~~(p0 | ~p0)", sig);
    Formula split = parse_formula("p0 | ~p0", sig);
    ClassicalEvaluator ev{ClassicalTeamModel(2)};
    // worlds are valuations (atom0 = bit0): a = 3, b = 1, c = 2, d = 0
    uint32_t bd = (1u << 1) | (1u << 0);
    uint32_t ab = (1u << 3) | (1u << 1);
    bool w1 = ev.supports(bd, weak_split);
    bool w2 = ev.supports(bd, split);
    bool w3 = ev.supports(ab, Formula::atom(0));
    r.pass = w1 && !w2 && w3;
    std::ostringstream os;
    os << "{b,d} |= ~~(p0|~p0): " << (w1 ? "yes" : "NO") << "; {b,d} |= p0|~p0: "
       << (w2 ? "YES" : "no") << "; {a,b} |= p0: " << (w3 ? "yes" : "NO");
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 2: substitution failure witness

inline CriterionResult criterion_substitution_failure() {
  using namespace suite_detail;
  return timed_criterion(2, "substitution failure witness", [&](CriterionResult& r) {
    auto sig = Signature::l_int();
    Formula split = parse_formula("(p0 -> (p1 | p2)) -> ((p0 -> p1) | (p0 -> p2))", sig);
    Formula inst = parse_formula(
        "((p1 | p2) -> (p1 | p2)) -> (((p1 | p2) -> p1) | ((p1 | p2) -> p2))", sig);
    auto v = inqb_entails({}, split);
    auto w = inqb_entails({}, inst);
    bool atoms_ok = w.atoms == std::vector<int>{1, 2};
    r.pass = v.entails && !w.entails && atoms_ok && w.counter_team == 6;
    std::ostringstream os;
    os << "split axiom valid: " << (v.entails ? "yes" : "NO")
       << "; disjunctive instance refuted at team "
       << team_to_string(w.counter_team, static_cast<int>(w.atoms.size()));
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 3: axiom soundness

inline CriterionResult criterion_axiom_soundness(uint64_t seed, int threads) {
  using namespace suite_detail;
  return timed_criterion(3, "axiom soundness", [&](CriterionResult& r) {
    r.pass = true;
    std::ostringstream os;

    // exhaustive leg, classical semantics: all sort-respecting tuples of
    // depth-<=1 three-atom formulas.  Every schema is an implication whose
    // operands are persistent, so instance validity collapses to an
    // intersection-inclusion of support profiles at the full team.
    uint64_t classical_tuples = 0;
    for (const char* sysname : {"inqb", "inqbt"}) {
      AxiomSystem sys = axiom_system(sysname);
      SupportMasks engine(3);
      ClassicalCtx ctx = build_classical_ctx(engine, sys.sig, 3);
      for (const auto& schema : sys.schemas) {
        SlotPlan plan = plan_schema(schema, ctx.std_ids);
        size_t d0 = plan.domains.empty()
                        ? 1
                        : (plan.domains[0] ? plan.domains[0]->size() : static_cast<size_t>(ctx.n));
        auto out = parallel_blocks(d0, 1, threads, [&](size_t b, size_t e, StreamOutcome& acc) {
          scan_tuples(plan, ctx.n, 1, b, e, acc, [&](const int* tuple, StreamOutcome& a) {
            ++a.checked;
            // flatten the top implication spine; sound because every operand
            // is persistent, so validity is an inclusion at the full team
            Mask hyp = ctx.all;
            const TmplNode* nd = plan.prog.get();
            while (nd->op == 2) {
              if (nd->table) {
                hyp = mand(hyp, ctx.masks[tuple[nd->sa]]);
                bool ok = mask_subset(hyp, ctx.masks[tuple[nd->sb]]);
                if (!ok) a.flag_failure(a.checked, describe_tuple(schema, plan, ctx.corpus, tuple));
                return;
              }
              hyp = mand(hyp, ceval(*nd->l, tuple, ctx));
              nd = nd->r.get();
            }
            if (!mask_subset(hyp, ceval(*nd, tuple, ctx)))
              a.flag_failure(a.checked, describe_tuple(schema, plan, ctx.corpus, tuple));
          });
        });
        classical_tuples += out.checked;
        if (out.fail_index != SIZE_MAX) {
          r.pass = false;
          r.detail = std::string(sysname) + " " + out.fail_detail;
          return;
        }
      }
    }
    os << "exhaustive classical tuples " << classical_tuples;

    // exhaustive leg, Kripke semantics: depth-<=1 two-atom tuples over all
    // frames with <= 3 points and all persistent valuations.
    uint64_t kripke_tuples = 0;
    size_t model_count = 0;
    for (const char* sysname : {"inqi", "inqit"}) {
      AxiomSystem sys = axiom_system(sysname);
      KripkeCtx ctx = build_kripke_ctx(sys.sig, 3);
      model_count = ctx.models.size();
      for (const auto& schema : sys.schemas) {
        SlotPlan plan = plan_schema(schema, ctx.std_ids);
        size_t d0 = plan.domains.empty()
                        ? 1
                        : (plan.domains[0] ? plan.domains[0]->size() : static_cast<size_t>(ctx.n));
        auto out = parallel_blocks(d0, 1, threads, [&](size_t b, size_t e, StreamOutcome& acc) {
          scan_tuples(plan, ctx.n, 1, b, e, acc, [&](const int* tuple, StreamOutcome& a) {
            ++a.checked;
            for (const auto& km : ctx.models) {
              uint32_t m = keval(*plan.prog, tuple, km, ctx.n);
              if (((m >> km.full) & 1u) == 0) {
                a.flag_failure(a.checked,
                               describe_tuple(schema, plan, ctx.corpus, tuple) +
                                   " (frame " + std::to_string(km.poset_index) + ", valuation " +
                                   std::to_string(km.v0) + "/" + std::to_string(km.v1) + ")");
                return;
              }
            }
          });
        });
        kripke_tuples += out.checked;
        if (out.fail_index != SIZE_MAX) {
          r.pass = false;
          r.detail = std::string(sysname) + " " + out.fail_detail;
          return;
        }
      }
    }
    os << "; kripke tuples " << kripke_tuples << " x " << model_count << " models";

    // sampled leg: deeper sort-respecting instances through the unreduced
    // oracles, plus modus ponens firings on oracle-valid premises.
    uint64_t sampled = 0, mp_fired = 0;
    auto sample_system = [&](const char* sysname, bool classical) {
      AxiomSystem sys = axiom_system(sysname);
      auto ops_any = binary_ops(sys.sig);
      std::vector<std::string> ops_std;
      for (const auto& o : ops_any)
        if (o != "or") ops_std.push_back(o);
      int atoms = classical ? 3 : 2;
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + std::hash<std::string>{}(sysname));
      SupportMasks engine(atoms);
      Mask all = full_mask(engine);
      int since_reset = 0;
      auto valid = [&](const Formula& f) {
        if (classical) {
          if (++since_reset == 256) {
            engine = SupportMasks(atoms);
            since_reset = 0;
          }
          bool v = mask_eq(engine.compute(f), all);
          if ((rng() & 63u) == 0 && inqb_entails({}, f).entails != v)
            throw std::logic_error("mask validity disagrees with entailment oracle at " +
                                   to_string(f));
          return v;
        }
        return !inqi_countermodel_search(f, 3, TeamChoice::full_only).has_value();
      };
      auto draw = [&](Sort sort) {
        return random_tree(rng, sort == Sort::standard ? ops_std : ops_any, atoms, 3);
      };
      for (const auto& schema : sys.schemas) {
        for (int k = 0; k < 1000; ++k) {
          MetaBinding b;
          for (const auto& mname : meta_names(schema.tmpl)) b[mname] = draw(schema.sort_of(mname));
          Formula inst = instantiate_schema(schema, b);
          ++sampled;
          if (!valid(inst)) {
            r.pass = false;
            r.detail = std::string(sysname) + " sampled instance of " + schema.name +
                       " invalid: " + to_string(inst);
            return false;
          }
        }
      }
      // modus ponens: X and X -> (Y -> X) are oracle-valid, so Y -> X must be
      const Schema* a1 = sys.find_schema("A1");
      for (int k = 0; k < 1000; ++k) {
        const Schema& schema = sys.schemas[rng() % sys.schemas.size()];
        MetaBinding b;
        for (const auto& mname : meta_names(schema.tmpl)) b[mname] = draw(schema.sort_of(mname));
        Formula x = instantiate_schema(schema, b);
        Formula y = random_tree(rng, ops_any, atoms, 2);
        Formula f = instantiate_schema(*a1, MetaBinding{{"phi", x}, {"psi", y}});
        Formula z = limp(y, x);
        if (!valid(x) || !valid(f) || !valid(z)) {
          r.pass = false;
          r.detail = std::string(sysname) + " modus ponens lost validity at " + to_string(z);
          return false;
        }
        ++mp_fired;
      }
      return true;
    };
    if (!sample_system("inqb", true)) return;
    if (!sample_system("inqbt", true)) return;
    if (!sample_system("inqi", false)) return;
    if (!sample_system("inqit", false)) return;
    os << "; sampled deep instances " << sampled << "; mp firings " << mp_fired;
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 4: disjunctive normal forms

inline CriterionResult criterion_disjunctive_forms(int threads) {
  using namespace suite_detail;
  return timed_criterion(4, "disjunctive normal forms", [&](CriterionResult& r) {
    auto sig = Signature::l_inq();
    auto ops = binary_ops(sig);
    // formulas grouped by node count; odd sizes only with binary connectives
    std::map<int, std::vector<Formula>> by_size;
    by_size[1] = {Formula::atom(0), Formula::atom(1), Formula::atom(2), lbot()};
    for (int n = 3; n <= 7; n += 2) {
      auto& out = by_size[n];
      for (const auto& op : ops)
        for (int i = 1; i < n; i += 2)
          for (const auto& a : by_size[i])
            for (const auto& b : by_size[n - 1 - i]) out.push_back(Formula::app(op, {a, b}));
    }

    auto check_one = [&](SupportMasks& engine, const Formula& f, StreamOutcome& acc,
                         size_t index) {
      ++acc.checked;
      auto disjuncts = dnf(f, sig);
      for (const auto& d : disjuncts)
        if (!is_or_free(d)) {
          acc.flag_failure(index, "disjunct not or-free in dnf of " + to_string(f));
          return;
        }
      Formula join = disjuncts[0];
      for (size_t i = 1; i < disjuncts.size(); ++i) join = lor(join, disjuncts[i]);
      if (!mask_eq(engine.compute(f), engine.compute(join)))
        acc.flag_failure(index, "join of dnf not equivalent to " + to_string(f));
    };

    // stored sizes 1..7 directly
    std::vector<const Formula*> stored;
    for (const auto& [sz, v] : by_size)
      for (const auto& f : v) stored.push_back(&f);
    auto out1 = parallel_blocks(stored.size(), 512, threads,
                                [&](size_t b, size_t e, StreamOutcome& acc) {
                                  SupportMasks engine(3);
                                  for (size_t i = b; i < e; ++i)
                                    check_one(engine, *stored[i], acc, i);
                                });

    // size 9 streamed: rows are (connective, left size, left index)
    struct Row {
      int op;
      int lsize;
      size_t li;
    };
    std::vector<Row> rows;
    for (int op = 0; op < static_cast<int>(ops.size()); ++op)
      for (int i = 1; i < 9; i += 2)
        for (size_t li = 0; li < by_size[i].size(); ++li)
          rows.push_back({op, i, li});
    auto out2 = parallel_blocks(rows.size(), 64, threads, [&](size_t b, size_t e,
                                                              StreamOutcome& acc) {
      SupportMasks engine(3);
      int since_reset = 0;
      for (size_t ri = b; ri < e; ++ri) {
        const Row& row = rows[ri];
        const Formula& a = by_size.at(row.lsize)[row.li];
        for (const auto& bf : by_size.at(8 - row.lsize)) {
          if (++since_reset == 4096) {
            engine = SupportMasks(3);
            since_reset = 0;
          }
          check_one(engine, Formula::app(ops[row.op], {a, bf}), acc, ri);
        }
      }
    });

    out1.merge(out2);
    r.pass = out1.fail_index == SIZE_MAX;
    if (!r.pass) {
      r.detail = out1.fail_detail;
      return;
    }
    std::ostringstream os;
    os << out1.checked << " formulas up to size 9 over 3 atoms; joins equivalent, disjuncts or-free";
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 5: medvedev agreement

inline CriterionResult criterion_medvedev_agreement(int threads) {
  using namespace suite_detail;
  return timed_criterion(5, "medvedev agreement", [&](CriterionResult& r) {
    auto sig = Signature::l_int();
    auto ops = binary_ops(sig);
    std::vector<Formula> mid = depth_corpus(sig, 2, 2);
    std::vector<Formula> leaves = {Formula::atom(0), Formula::atom(1), lbot()};

    std::vector<ExpandedAlgebra> algebras;
    for (int s = 1; s <= 3; ++s) algebras.push_back(regular_core(medvedev_algebra(s).alg));
    std::vector<int> tops;
    for (const auto& A : algebras) tops.push_back(A.alg.size() - 1);
    const std::vector<int> atoms{0, 1};

    SupportMasks shared(2);
    Mask all = full_mask(shared);
    std::vector<Mask> mid_masks;
    for (const auto& f : mid) mid_masks.push_back(shared.compute(f));
    std::vector<Mask> leaf_masks;
    for (const auto& f : leaves) leaf_masks.push_back(shared.compute(f));

    // counts: 0 = team-valid, 1..3 unused; refuting algebra histogram in
    // fail-free runs is reported via counts of first refuting index
    auto check_one = [&](const SupportMasks& engine, const Formula& f, const Mask& fmask,
                         StreamOutcome& acc, size_t index) {
      ++acc.checked;
      bool team_valid = mask_eq(fmask, all);
      if (index % 4096 == 0) {
        if (inqb_entails({}, f).entails != team_valid)
          throw std::logic_error("mask validity disagrees with entailment oracle at " +
                                 to_string(f));
        ++acc.counts[3];
      }
      if (team_valid) {
        ++acc.counts[0];
        for (size_t ai = 0; ai < algebras.size(); ++ai) {
          const auto& A = algebras[ai];
          CompiledTerm term(A.alg, f, atoms);
          int assign[2];
          for (int x : A.core)
            for (int y : A.core) {
              assign[0] = x;
              assign[1] = y;
              if (term.eval(assign) != tops[ai]) {
                acc.flag_failure(index, "team-valid formula refuted on algebra " +
                                            std::to_string(ai) + ": " + to_string(f));
                return;
              }
            }
        }
      } else {
        for (size_t ai = 0; ai < algebras.size(); ++ai) {
          const auto& A = algebras[ai];
          CompiledTerm term(A.alg, f, atoms);
          int assign[2];
          for (int x : A.core)
            for (int y : A.core) {
              assign[0] = x;
              assign[1] = y;
              if (term.eval(assign) != tops[ai]) {
                ++acc.counts[1 + std::min<size_t>(ai, 1)];
                return;  // refuted, sound
              }
            }
        }
        acc.flag_failure(index, "team-refuted formula valid on all three algebras: " +
                                    to_string(f));
      }
      (void)engine;
    };

    // leaves, then rows (connective, left index) over the depth-2 corpus
    StreamOutcome head;
    for (size_t i = 0; i < leaves.size(); ++i)
      check_one(shared, leaves[i], leaf_masks[i], head, i);
    size_t nrows = ops.size() * mid.size();
    auto out = parallel_blocks(nrows, 8, threads, [&](size_t b, size_t e, StreamOutcome& acc) {
      SupportMasks engine(2);
      for (size_t ri = b; ri < e; ++ri) {
        size_t op = ri / mid.size();
        size_t li = ri % mid.size();
        for (size_t j = 0; j < mid.size(); ++j) {
          Formula f = Formula::app(ops[op], {mid[li], mid[j]});
          Mask fmask = apply_op_mask(engine, op_code(ops[op]), mid_masks[li], mid_masks[j]);
          check_one(engine, f, fmask, acc, leaves.size() + ri * mid.size() + j);
        }
      }
    });
    out.merge(head);
    r.pass = out.fail_index == SIZE_MAX;
    if (!r.pass) {
      r.detail = out.fail_detail;
      return;
    }
    std::ostringstream os;
    os << out.checked << " formulas; " << out.counts[0]
       << " team-valid (core-valid on every algebra); refuted formulas core-refuted (first on s=1: "
       << out.counts[1] << ", deeper: " << out.counts[2] << "); oracle cross-checks "
       << out.counts[3];
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 6: transformer equivalences

inline CriterionResult criterion_algebraizability(uint64_t seed, int threads) {
  using namespace suite_detail;
  return timed_criterion(6, "transformer equivalences", [&](CriterionResult& r) {
    TransformerPair pair = inqb_pair();
    std::ostringstream os;

    // equivalence-on-equations leg over the full algebra stock
    std::vector<ExpandedAlgebra> fam;
    int max_size = 0;
    for (int s = 1; s <= 4; ++s) {
      auto A = regular_core(medvedev_algebra(s).alg);
      max_size = std::max(max_size, A.alg.size());
      fam.push_back(std::move(A));
    }
    for (const auto& poset : all_posets_upto_iso(6)) {
      auto A = regular_core(upset_algebra(poset).alg);
      max_size = std::max(max_size, A.alg.size());
      fam.push_back(std::move(A));
    }
    auto rep4 = check_alg4(fam, pair);
    if (!rep4.ok) {
      r.pass = false;
      r.detail = "equation equivalence failed: " + rep4.detail;
      return;
    }
    os << "delta/tau equivalence on " << fam.size() << " algebras (max size " << max_size << ")";

    // tensor stock: distributivity and monotonicity checked on construction
    std::vector<ExpandedAlgebra> fam_t;
    int sampled_mon = 0;
    for (int s = 1; s <= 4; ++s) {
      auto h = medvedev_algebra(s);
      FiniteAlgebra t = add_tensor(h);
      TensorReport tr = verify_tensor(t, seed);
      if (!tr.dist_ok || !tr.mon_ok || !tr.regular_closed || !tr.regular_join) {
        r.pass = false;
        r.detail = "tensor laws failed on powerset stock s=" + std::to_string(s);
        return;
      }
      if (!tr.mon_exhaustive) ++sampled_mon;
      fam_t.push_back(regular_core(std::move(t)));
    }
    auto rep4t = check_alg4(fam_t, pair);
    if (!rep4t.ok) {
      r.pass = false;
      r.detail = "equation equivalence failed on tensor stock: " + rep4t.detail;
      return;
    }
    os << "; tensor stock " << fam_t.size() << " (monotonicity sampled on " << sampled_mon << ")";

    // back-translation leg, intuitionistic signature: exhaustive 2-atom
    // depth-<=3 corpus streamed in rows through the consequence oracle
    auto sig = Signature::l_int();
    auto ops = binary_ops(sig);
    std::vector<Formula> mid = depth_corpus(sig, 2, 2);
    std::vector<Formula> leaves = {Formula::atom(0), Formula::atom(1), lbot()};
    size_t nrows = ops.size() * mid.size() + 1;  // row 0: leaves
    auto out = parallel_blocks(nrows, 4, threads, [&](size_t b, size_t e, StreamOutcome& acc) {
      for (size_t ri = b; ri < e; ++ri) {
        std::vector<Formula> batch;
        if (ri == 0) {
          batch = leaves;
        } else {
          size_t op = (ri - 1) / mid.size();
          size_t li = (ri - 1) % mid.size();
          batch.reserve(mid.size());
          for (const auto& g : mid) batch.push_back(Formula::app(ops[op], {mid[li], g}));
        }
        SupportMasks engine(2);
        Mask all = full_mask(engine);
        LogicOracle oracle = [&engine, &all](std::span<const Formula> gamma, const Formula& phi) {
          Mask acc2 = all;
          for (const auto& g : gamma) acc2 = mand(acc2, engine.compute(g));
          return mask_subset(acc2, engine.compute(phi));
        };
        auto rep = check_alg3(oracle, pair, batch);
        acc.checked += rep.checked;
        if (!rep.ok)
          acc.flag_failure(ri, "back-translation failed (" +
                                   std::string(rep.failures[0].forward ? "forward" : "backward") +
                                   ") at " + to_string(rep.failures[0].phi));
      }
    });
    if (out.fail_index != SIZE_MAX) {
      r.pass = false;
      r.detail = out.fail_detail;
      return;
    }
    os << "; back-translation on " << out.checked << " formulas";

    // back-translation leg, tensor signature: exhaustive depth-<=2 plus a
    // seeded depth-3 sample
    auto sig_t = Signature::l_inq();
    std::vector<Formula> corpus_t = depth_corpus(sig_t, 2, 2);
    std::mt19937_64 rng(seed ^ 0xbead5eed);
    auto ops_t = binary_ops(sig_t);
    for (int k = 0; k < 100000; ++k) corpus_t.push_back(random_tree(rng, ops_t, 2, 3));
    {
      SupportMasks engine(2);
      Mask all = full_mask(engine);
      int since_reset = 0;
      LogicOracle oracle = [&](std::span<const Formula> gamma, const Formula& phi) {
        if (++since_reset == 8192) {
          engine = SupportMasks(2);
          since_reset = 0;
        }
        Mask acc2 = all;
        for (const auto& g : gamma) acc2 = mand(acc2, engine.compute(g));
        return mask_subset(acc2, engine.compute(phi));
      };
      auto rep = check_alg3(oracle, pair, corpus_t);
      if (!rep.ok) {
        r.pass = false;
        r.detail = "tensor back-translation failed at " + to_string(rep.failures[0].phi);
        return;
      }
      os << "; tensor corpus " << rep.checked;
    }
    r.pass = true;
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 7: translation countermodels

inline CriterionResult criterion_translation_countermodels() {
  using namespace suite_detail;
  return timed_criterion(7, "translation countermodels", [&](CriterionResult& r) {
    auto sig = Signature::l_inq();
    r.pass = true;
    std::ostringstream os;
    os << "countermodels:";
    for (const char* text : {"~~p0", "~~p0 -> p0", "p0", "~p0", "bot"}) {
      auto cm = inqi_countermodel_search(parse_formula(text, sig), 2);
      if (!cm) {
        r.pass = false;
        r.detail = std::string("no countermodel within two points for ") + text;
        return;
      }
      os << " [" << text << ": frame " << cm->poset_index << ", team "
         << cm->team << "]";
    }
    for (const char* text : {"bot -> bot", "~~p0", "p0 * ~p0", "p0", "bot"}) {
      auto fp = fixpoint_iterate(parse_formula(text, sig));
      if (fp.cycle.size() != 1) {
        r.pass = false;
        r.detail = std::string("iteration of ") + text + " did not stabilize";
        return;
      }
    }
    auto flip = fixpoint_iterate(parse_formula("~p0", sig));
    if (flip.cycle.size() != 2) {
      r.pass = false;
      r.detail = "negation iteration is not a 2-cycle";
      return;
    }
    os << "; five idempotent iterations, negation 2-cycle";
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 8: leibniz reduction

inline CriterionResult criterion_leibniz_reduction(uint64_t seed) {
  using namespace suite_detail;
  return timed_criterion(8, "leibniz reduction", [&](CriterionResult& r) {
    auto sig = Signature::l_int();
    std::vector<FiniteAlgebra> algebras;
    for (const auto& poset : all_posets_upto_iso(2)) algebras.push_back(upset_algebra(poset).alg);

    // closure of unary polynomials up to composition depth 3
    auto translations = [](const FiniteAlgebra& alg) {
      int n = alg.size();
      std::set<std::vector<int>> ts;
      std::vector<int> ident(n);
      for (int i = 0; i < n; ++i) ident[i] = i;
      ts.insert(ident);
      for (int round = 0; round < 3; ++round) {
        auto snapshot = ts;
        for (const auto& [opname, arity] : alg.sig().ops()) {
          if (arity != 2) continue;
          const auto& tab = alg.table(opname);
          for (const auto& t : snapshot)
            for (int c = 0; c < n; ++c) {
              std::vector<int> lft(n), rgt(n);
              for (int x = 0; x < n; ++x) {
                lft[x] = tab[static_cast<size_t>(t[x]) * n + c];
                rgt[x] = tab[static_cast<size_t>(c) * n + t[x]];
              }
              ts.insert(lft);
              ts.insert(rgt);
            }
        }
      }
      return std::vector<std::vector<int>>(ts.begin(), ts.end());
    };
    auto canon = [](const std::vector<int>& labels) {
      std::map<int, int> relabel;
      std::vector<int> out;
      for (int x : labels) {
        auto [it, fresh] = relabel.emplace(x, static_cast<int>(relabel.size()));
        (void)fresh;
        out.push_back(it->second);
      }
      return out;
    };

    std::vector<std::pair<std::vector<Formula>, Formula>> pairs;
    auto add_pair = [&](std::initializer_list<const char*> gamma, const char* phi) {
      std::vector<Formula> g;
      for (const char* t : gamma) g.push_back(parse_formula(t, sig));
      pairs.emplace_back(std::move(g), parse_formula(phi, sig));
    };
    add_pair({}, "p0");
    add_pair({"p0"}, "p0");
    add_pair({"p0"}, "p1");
    add_pair({"p0 & p1"}, "p0");
    add_pair({"p0"}, "p0 | p1");
    add_pair({"p0", "p0 -> p1"}, "p1");
    add_pair({"p0 | p1"}, "p0");
    add_pair({}, "bot -> bot");
    add_pair({"bot"}, "p0");
    add_pair({"p0 -> p1", "p1 -> p0"}, "p0 -> p1");

    int matrices = 0;
    for (size_t ai = 0; ai < algebras.size(); ++ai) {
      const auto& alg = algebras[ai];
      int n = alg.size();
      auto ts = translations(alg);
      for (int k = 0; k < 100; ++k) {
        std::mt19937_64 rng(seed + 7919 * (ai + 1) + static_cast<uint64_t>(k));
        std::vector<int> truth, core;
        for (int x = 0; x < n; ++x) {
          if (rng() & 1u) truth.push_back(x);
          if (rng() & 1u) core.push_back(x);
        }
        Bimatrix m(alg, truth, core);
        auto red = leibniz_reduce(m);
        ++matrices;

        // profile partition: elements agree on every unary polynomial image
        std::vector<int> profile_label(n);
        {
          std::map<std::vector<int>, int> seen;
          for (int x = 0; x < n; ++x) {
            std::vector<int> prof;
            for (const auto& t : ts) {
              prof.push_back(m.in_truth(t[x]) ? 1 : 0);
              prof.push_back(m.in_core(t[x]) ? 1 : 0);
            }
            profile_label[x] = seen.emplace(std::move(prof), static_cast<int>(seen.size()))
                                   .first->second;
          }
        }
        if (canon(profile_label) != canon(red.projection)) {
          r.pass = false;
          r.detail = "partition refinement disagrees with translation profiles (algebra " +
                     std::to_string(ai) + ", draw " + std::to_string(k) + ")";
          return;
        }
        auto red2 = leibniz_reduce(red.reduced);
        for (size_t x = 0; x < red2.projection.size(); ++x)
          if (red2.projection[x] != static_cast<int>(x)) {
            r.pass = false;
            r.detail = "reduction is not idempotent (algebra " + std::to_string(ai) + ", draw " +
                       std::to_string(k) + ")";
            return;
          }
        for (const auto& [gamma, phi] : pairs) {
          bool before = bimatrix_entails(std::span<const Bimatrix>(&m, 1), gamma, phi).entails;
          bool after =
              bimatrix_entails(std::span<const Bimatrix>(&red.reduced, 1), gamma, phi).entails;
          if (before != after) {
            r.pass = false;
            r.detail = "reduction changed an entailment verdict (algebra " + std::to_string(ai) +
                       ", draw " + std::to_string(k) + ", " + to_string(phi) + ")";
            return;
          }
        }
      }
    }
    r.pass = true;
    std::ostringstream os;
    os << matrices << " matrices over " << algebras.size()
       << " algebras: profiles match, idempotent, verdicts preserved on " << pairs.size()
       << " consequence pairs";
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 9: class operator preservation

inline CriterionResult criterion_class_preservation(uint64_t seed) {
  using namespace suite_detail;
  return timed_criterion(9, "class operator preservation", [&](CriterionResult& r) {
    auto sig = Signature::l_int();
    auto ops = binary_ops(sig);
    auto sigma = regularity_sigma();
    std::vector<ExpandedAlgebra> base;
    base.push_back(regular_core(medvedev_algebra(1).alg));
    base.push_back(regular_core(medvedev_algebra(2).alg));
    base.push_back(regular_core(upset_algebra(FinitePoset::chain(2)).alg));
    base.push_back(regular_core(upset_algebra(FinitePoset::antichain(2)).alg));
    base.push_back(regular_core(upset_algebra(FinitePoset::chain(3)).alg));
    base.push_back(
        regular_core(upset_algebra(FinitePoset(3, {0b111u, 0b010u, 0b100u})).alg));

    std::mt19937_64 rng(seed ^ 0x5eedc0de);
    int images = 0, family_valid = 0;
    for (int k = 0; k < 200; ++k) {
      ClassOp op = k % 3 == 0 ? ClassOp::S : (k % 3 == 1 ? ClassOp::P : ClassOp::C);
      std::vector<ExpandedAlgebra> K;
      for (const auto& A : base)
        if (rng() & 1u) K.push_back(A);
      if (K.empty()) K.push_back(base[rng() % base.size()]);
      QuasiEquation q{{}, Equation{random_tree(rng, ops, 2, 2), random_tree(rng, ops, 2, 2)}};
      int prem = static_cast<int>(rng() % 3);
      for (int i = 0; i < prem; ++i)
        q.premises.push_back(Equation{random_tree(rng, ops, 2, 2), random_tree(rng, ops, 2, 2)});
      auto rep = check_preservation(K, sigma, q, op);
      images += rep.images_checked;
      family_valid += rep.family_satisfies ? 1 : 0;
      if (!rep.core_recompute_ok || !rep.validity_preserved) {
        r.pass = false;
        r.detail = "instance " + std::to_string(k) + ": " + rep.detail;
        return;
      }
    }
    r.pass = true;
    std::ostringstream os;
    os << "200 instances over " << base.size() << " stock algebras; " << images
       << " images checked, cores recomputed consistently; premise sets held on " << family_valid
       << " instances";
    r.detail = os.str();
  });
}

// --------------------------------------------------------------------------
// criterion 10: first-order export golden files

inline CriterionResult criterion_horn_golden(const std::string& data_dir) {
  using namespace suite_detail;
  return timed_criterion(10, "first-order export golden files", [&](CriterionResult& r) {
    auto slurp = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot read " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    std::string pairs_text = slurp(data_dir + "/horn_pairs.txt");
    auto pairs = parse_logic_pairs(pairs_text, Signature::l_inq());
    if (pairs.size() != 10) {
      r.pass = false;
      r.detail = "expected 10 consequence pairs, found " + std::to_string(pairs.size());
      return;
    }
    std::string weak = export_horn(pairs, true);
    std::string standard = export_horn(pairs, false);
    std::string gw = slurp(data_dir + "/golden_horn_weak.p");
    std::string gs = slurp(data_dir + "/golden_horn_standard.p");
    auto diff_at = [](const std::string& a, const std::string& b) {
      size_t i = 0;
      while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
      return i;
    };
    if (weak != gw) {
      r.pass = false;
      r.detail = "weak export differs from golden file at byte " +
                 std::to_string(diff_at(weak, gw));
      return;
    }
    if (standard != gs) {
      r.pass = false;
      r.detail = "standard export differs from golden file at byte " +
                 std::to_string(diff_at(standard, gs));
      return;
    }
    r.pass = true;
    r.detail = "10 pairs; weak " + std::to_string(weak.size()) + " bytes, standard " +
               std::to_string(standard.size()) + " bytes, both byte-identical";
  });
}

// --------------------------------------------------------------------------

inline std::vector<CriterionResult> run_acceptance(
    uint64_t seed, int threads, const std::string& data_dir,
    const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  auto push = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  push(criterion_team_vectors());
  push(criterion_substitution_failure());
  push(criterion_axiom_soundness(seed, threads));
  push(criterion_disjunctive_forms(threads));
  push(criterion_medvedev_agreement(threads));
  push(criterion_algebraizability(seed, threads));
  push(criterion_translation_countermodels());
  push(criterion_leibniz_reduction(seed));
  push(criterion_class_preservation(seed));
  push(criterion_horn_golden(data_dir));
  return out;
}

}  // namespace weaklog
