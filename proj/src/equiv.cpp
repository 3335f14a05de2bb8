#include "protoalg/equiv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "protoalg/error.hpp"

namespace protoalg {

namespace {

struct BudgetExhausted {};

// --- vertex correspondence ---------------------------------------------------

struct VertexSearch {
  const AlgorithmGraph& g;
  const AlgorithmGraph& h;
  bool swap = false;
  bool identity_symbols = false;
  std::size_t budget = 0;
  std::size_t* nodes = nullptr;

  struct Partial {
    std::vector<std::uint32_t> map, inv;
    std::map<Symbol, Symbol> sym, sym_inv;
  };

  bool assign(Partial& p, std::uint32_t v, std::uint32_t w) const {
    const auto& a = g.vertex(v);
    const auto& b = h.vertex(w);
    if (a.kind != b.kind || a.indegree != b.indegree) return false;
    if (identity_symbols && a.label != b.label) return false;
    auto s = p.sym.find(a.label);
    if (s != p.sym.end() && s->second != b.label) return false;
    auto si = p.sym_inv.find(b.label);
    if (si != p.sym_inv.end() && si->second != a.label) return false;

    std::deque<std::pair<std::uint32_t, std::uint32_t>> work{{v, w}};
    while (!work.empty()) {
      auto [x, y] = work.front();
      work.pop_front();
      if (x == kNoVertex || y == kNoVertex) {
        if (x != y) return false;
        continue;
      }
      const auto& cx = g.vertex(x);
      const auto& cy = h.vertex(y);
      if (p.map[x] != kNoVertex || p.inv[y] != kNoVertex) {
        if (p.map[x] != y || p.inv[y] != x) return false;
        continue;
      }
      if (cx.kind != cy.kind || cx.indegree != cy.indegree) return false;
      if (identity_symbols && cx.label != cy.label) return false;
      auto [it, fresh] = p.sym.emplace(cx.label, cy.label);
      if (!fresh && it->second != cy.label) return false;
      auto [jt, fresh_inv] = p.sym_inv.emplace(cy.label, cx.label);
      if (!fresh_inv && jt->second != cx.label) return false;
      p.map[x] = y;
      p.inv[y] = x;
      if (cx.kind == VertexKind::Predicate) {
        work.emplace_back(cx.on_one, swap ? cy.on_zero : cy.on_one);
        work.emplace_back(cx.on_zero, swap ? cy.on_one : cy.on_zero);
      } else if (cx.kind != VertexKind::Fin) {
        work.emplace_back(cx.next, cy.next);
      }
    }
    return true;
  }

  bool edges_preserved(const Partial& p) const {
    for (const auto& [e, label] : g.digraph().edges) {
      const auto& from = h.vertex(p.map[*g.index_of(e.from)]).id;
      const auto& to = h.vertex(p.map[*g.index_of(e.to)]).id;
      auto it = h.digraph().edges.find(Edge{from, to});
      if (it == h.digraph().edges.end()) return false;
      std::optional<int> expected = label;
      if (expected && swap) expected = 1 - *expected;
      if (it->second != expected) return false;
    }
    return true;
  }

  // Calls `accept` on every complete correspondence until it returns true.
  bool search(Partial p, const std::function<bool(const Partial&)>& accept) const {
    if (++*nodes > budget) throw BudgetExhausted{};
    auto free = std::find(p.map.begin(), p.map.end(), kNoVertex);
    if (free == p.map.end()) return edges_preserved(p) && accept(p);
    auto v = static_cast<std::uint32_t>(free - p.map.begin());
    for (std::uint32_t w = 0; w < h.size(); ++w) {
      if (p.inv[w] != kNoVertex) continue;
      Partial next = p;
      if (assign(next, v, w) && search(std::move(next), accept)) return true;
    }
    return false;
  }

  bool run(const std::function<bool(const Partial&)>& accept) const {
    Partial p;
    p.map.assign(g.size(), kNoVertex);
    p.inv.assign(h.size(), kNoVertex);
    if (!assign(p, g.root(), h.root())) return false;
    return search(std::move(p), accept);
  }
};

// --- value correspondence ----------------------------------------------------

// Symbol tables over indexed carriers.
struct Tables {
  std::vector<std::size_t> ini;  // Din index -> D index
  std::vector<std::size_t> fin;  // D index -> Dout index
  std::map<Symbol, std::vector<std::size_t>> ops;
  std::map<Symbol, std::vector<int>> preds;

  explicit Tables(const ProtoAlgorithm& a) {
    auto index = [](const std::vector<Value>& xs, const Value& v) {
      return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin());
    };
    const auto& interp = a.interp();
    for (const auto& d : a.inputs()) ini.push_back(index(a.carrier(), eval_fun(interp, kIni, d)));
    for (const auto& d : a.carrier()) fin.push_back(index(a.outputs(), eval_fun(interp, kFin, d)));
    for (const auto& f : a.alphabet().operations()) {
      auto& t = ops[f];
      for (const auto& d : a.carrier()) t.push_back(index(a.carrier(), eval_fun(interp, f, d)));
    }
    for (const auto& p : a.alphabet().predicates) {
      auto& t = preds[p];
      for (const auto& d : a.carrier()) t.push_back(static_cast<int>(eval_fun(interp, p, d)[0]));
    }
  }
};

struct ValueSearch {
  const ProtoAlgorithm& a;
  const ProtoAlgorithm& b;
  const Tables& ta;
  const Tables& tb;
  const std::map<Symbol, Symbol>& sym;
  bool swap;
  std::size_t budget;
  std::size_t* nodes;

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  struct Partial {
    std::vector<std::size_t> in, in_inv, main, main_inv, out, out_inv;
  };

  static bool bind(std::vector<std::size_t>& m, std::vector<std::size_t>& inv, std::size_t x,
                   std::size_t y, bool& fresh) {
    fresh = false;
    if (m[x] != kUnset || inv[y] != kUnset) return m[x] == y && inv[y] == x;
    m[x] = y;
    inv[y] = x;
    fresh = true;
    return true;
  }

  bool propagate(Partial& p, std::size_t x, std::size_t y) const {
    std::deque<std::pair<std::size_t, std::size_t>> work{{x, y}};
    while (!work.empty()) {
      auto [u, w] = work.front();
      work.pop_front();
      bool fresh = false;
      if (!bind(p.main, p.main_inv, u, w, fresh)) return false;
      if (!fresh) continue;
      for (const auto& [f, table] : ta.ops) work.emplace_back(table[u], tb.ops.at(sym.at(f))[w]);
      for (const auto& [q, table] : ta.preds) {
        int bit = swap ? 1 - table[u] : table[u];
        if (bit != tb.preds.at(sym.at(q))[w]) return false;
      }
      bool fresh_out = false;
      if (!bind(p.out, p.out_inv, ta.fin[u], tb.fin[w], fresh_out)) return false;
    }
    return true;
  }

  std::optional<Partial> search(Partial p, std::size_t i) const {
    if (i == ta.ini.size()) {
      if (std::find(p.main.begin(), p.main.end(), kUnset) != p.main.end()) return std::nullopt;
      // Outputs outside fin's image are paired in order.
      std::size_t j = 0;
      for (std::size_t o = 0; o < p.out.size(); ++o) {
        if (p.out[o] != kUnset) continue;
        while (p.out_inv[j] != kUnset) ++j;
        p.out[o] = j;
        p.out_inv[j] = o;
      }
      return p;
    }
    for (std::size_t j = 0; j < tb.ini.size(); ++j) {
      if (p.in_inv[j] != kUnset) continue;
      if (++*nodes > budget) throw BudgetExhausted{};
      Partial next = p;
      next.in[i] = j;
      next.in_inv[j] = i;
      if (!propagate(next, ta.ini[i], tb.ini[j])) continue;
      if (auto r = search(std::move(next), i + 1)) return r;
    }
    return std::nullopt;
  }

  std::optional<Partial> run() const {
    Partial p;
    p.in.assign(ta.ini.size(), kUnset);
    p.in_inv.assign(tb.ini.size(), kUnset);
    p.main.assign(a.carrier().size(), kUnset);
    p.main_inv.assign(b.carrier().size(), kUnset);
    p.out.assign(a.outputs().size(), kUnset);
    p.out_inv.assign(b.outputs().size(), kUnset);
    return search(std::move(p), 0);
  }
};

std::vector<Symbol> unused(const std::vector<Symbol>& all, const std::map<Symbol, Symbol>& m) {
  std::vector<Symbol> out;
  for (const auto& s : all)
    if (!m.count(s)) out.push_back(s);
  return out;
}

std::vector<Symbol> unused_image(const std::vector<Symbol>& all,
                                 const std::map<Symbol, Symbol>& m) {
  std::set<Symbol> image;
  for (const auto& [_, s] : m) image.insert(s);
  std::vector<Symbol> out;
  for (const auto& s : all)
    if (!image.count(s)) out.push_back(s);
  return out;
}

std::vector<Symbol> as_vector(const std::set<Symbol>& s) { return {s.begin(), s.end()}; }

}  // namespace

IsoVerdict check_isomorphism(const ProtoAlgorithm& a, const ProtoAlgorithm& b, std::size_t budget) {
  IsoVerdict v;
  auto refute = [&](std::string why) {
    v.kind = VerdictKind::Refuted;
    v.reason = std::move(why);
    return v;
  };
  const auto& g = a.graph();
  const auto& h = b.graph();
  if (g.size() != h.size())
    return refute("vertex counts differ (" + std::to_string(g.size()) + " vs " +
                  std::to_string(h.size()) + ")");
  if (g.edge_count() != h.edge_count()) return refute("edge counts differ");
  if (a.alphabet().functions.size() != b.alphabet().functions.size())
    return refute("function symbol counts differ");
  if (a.alphabet().predicates.size() != b.alphabet().predicates.size())
    return refute("predicate symbol counts differ");
  if (a.carrier().size() != b.carrier().size()) return refute("main domain sizes differ");
  if (a.inputs().size() != b.inputs().size()) return refute("input domain sizes differ");
  if (a.outputs().size() != b.outputs().size()) return refute("output domain sizes differ");

  Tables ta(a), tb(b);
  try {
    for (bool swap : {false, true}) {
      VertexSearch vs{g, h, swap, false, budget, &v.nodes};
      bool found = vs.run([&](const VertexSearch::Partial& p) {
        auto ops_a = unused(a.alphabet().operations(), p.sym);
        auto ops_b = unused_image(b.alphabet().operations(), p.sym);
        auto preds_a = unused(as_vector(a.alphabet().predicates), p.sym);
        auto preds_b = unused_image(as_vector(b.alphabet().predicates), p.sym);
        if (ops_a.size() != ops_b.size() || preds_a.size() != preds_b.size()) return false;
        // ini and fin always label vertices, so only operations and
        // predicates can be absent from the graph.
        do {
          do {
            if (++v.nodes > budget) throw BudgetExhausted{};
            std::map<Symbol, Symbol> sym = p.sym;
            for (std::size_t i = 0; i < ops_a.size(); ++i) sym[ops_a[i]] = ops_b[i];
            for (std::size_t i = 0; i < preds_a.size(); ++i) sym[preds_a[i]] = preds_b[i];
            ValueSearch search{a, b, ta, tb, sym, swap, budget, &v.nodes};
            auto r = search.run();
            if (!r) continue;
            IsoWitness w;
            w.bit_swap = swap;
            for (const auto& [x, y] : sym) {
              if (a.alphabet().is_predicate(x))
                w.predicates[x] = y;
              else
                w.functions[x] = y;
            }
            for (std::size_t i = 0; i < p.map.size(); ++i)
              w.vertices[g.vertex(i).id] = h.vertex(p.map[i]).id;
            for (std::size_t i = 0; i < r->in.size(); ++i)
              w.input[a.inputs()[i]] = b.inputs()[r->in[i]];
            for (std::size_t i = 0; i < r->main.size(); ++i)
              w.main[a.carrier()[i]] = b.carrier()[r->main[i]];
            for (std::size_t i = 0; i < r->out.size(); ++i)
              w.output[a.outputs()[i]] = b.outputs()[r->out[i]];
            v.witness = std::move(w);
            return true;
          } while (std::next_permutation(preds_b.begin(), preds_b.end()));
        } while (std::next_permutation(ops_b.begin(), ops_b.end()));
        return false;
      });
      if (found) {
        v.kind = VerdictKind::Proven;
        return v;
      }
    }
  } catch (const BudgetExhausted&) {
    v.kind = VerdictKind::UnknownAtBound;
    v.reason = "search budget of " + std::to_string(budget) + " nodes exhausted";
    return v;
  }
  return refute("no vertex and value correspondence satisfies every clause");
}

std::optional<std::map<VertexId, VertexId>> graph_isomorphism(const AlgorithmGraph& g,
                                                              const AlgorithmGraph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  std::size_t nodes = 0;
  VertexSearch vs{g, h, false, true, std::numeric_limits<std::size_t>::max(), &nodes};
  std::optional<std::map<VertexId, VertexId>> out;
  vs.run([&](const VertexSearch::Partial& p) {
    out.emplace();
    for (std::size_t i = 0; i < p.map.size(); ++i) (*out)[g.vertex(i).id] = h.vertex(p.map[i]).id;
    return true;
  });
  return out;
}

Report check_iso_witness(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const IsoWitness& w) {
  Report r;
  auto bijection = [&](const auto& m, const auto& from, const auto& to, const char* name) {
    std::set<typename std::decay_t<decltype(m)>::mapped_type> image;
    bool ok = m.size() == from.size() && from.size() == to.size();
    for (const auto& x : from) {
      auto it = m.find(x);
      if (it == m.end() || !to.count(it->second))
        ok = false;
      else
        image.insert(it->second);
    }
    if (!ok || image.size() != to.size()) r.add("bijection", name, "not a bijection");
  };
  auto to_set = [](const std::vector<Value>& v) { return std::set<Value>(v.begin(), v.end()); };
  bijection(w.functions, a.alphabet().functions, b.alphabet().functions, "functions");
  bijection(w.predicates, a.alphabet().predicates, b.alphabet().predicates, "predicates");
  bijection(w.vertices, a.digraph().vertices, b.digraph().vertices, "vertices");
  bijection(w.main, to_set(a.carrier()), to_set(b.carrier()), "main");
  bijection(w.input, to_set(a.inputs()), to_set(b.inputs()), "input");
  bijection(w.output, to_set(a.outputs()), to_set(b.outputs()), "output");
  if (!r.ok()) return r;

  if (w.functions.at(kIni) != kIni || w.functions.at(kFin) != kFin)
    r.add("distinguished", "", "ini and fin must be fixed");

  const auto& ga = a.digraph();
  const auto& gb = b.digraph();
  for (const auto& x : ga.vertices)
    for (const auto& y : ga.vertices) {
      bool in_a = ga.edges.count(Edge{x, y}) != 0;
      bool in_b = gb.edges.count(Edge{w.vertices.at(x), w.vertices.at(y)}) != 0;
      if (in_a != in_b) r.add("edges", x + "->" + y, "edge relation not preserved");
    }
  for (const auto& v : ga.vertices) {
    const auto& l = *ga.label(v);
    const auto& m = a.alphabet().is_predicate(l) ? w.predicates : w.functions;
    if (m.at(l) != *gb.label(w.vertices.at(v))) r.add("labels", v, "vertex label not transported");
  }
  for (const auto& [e, label] : ga.edges) {
    if (!label) continue;
    auto it = gb.edges.find(Edge{w.vertices.at(e.from), w.vertices.at(e.to)});
    int expected = w.bit_swap ? 1 - *label : *label;
    if (it != gb.edges.end() && it->second != std::optional<int>(expected))
      r.add("edge-labels", e.from + "->" + e.to, "edge label not transported");
  }

  const auto& ia = a.interp();
  const auto& ib = b.interp();
  for (const auto& d : a.inputs())
    if (w.main.at(eval_fun(ia, kIni, d)) != eval_fun(ib, kIni, w.input.at(d)))
      r.add("ini", to_string(d), "ini square does not commute");
  for (const auto& d : a.carrier()) {
    const auto& bd = w.main.at(d);
    if (w.output.at(eval_fun(ia, kFin, d)) != eval_fun(ib, kFin, bd))
      r.add("fin", to_string(d), "fin square does not commute");
    for (const auto& f : a.alphabet().operations())
      if (w.main.at(eval_fun(ia, f, d)) != eval_fun(ib, w.functions.at(f), bd))
        r.add("operation", f + " at " + to_string(d), "operation square does not commute");
    for (const auto& p : a.alphabet().predicates) {
      auto bit = eval_fun(ia, p, d)[0];
      if (w.bit_swap) bit = 1 - bit;
      if (Value{bit} != eval_fun(ib, w.predicates.at(p), bd))
        r.add("predicate", p + " at " + to_string(d), "predicate square does not commute");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Simulation

std::string_view to_string(SimulationKind k) {
  return k == SimulationKind::Algorithmic ? "algorithmic" : "computational";
}

std::string_view to_string(SimulationCounterexample::Reason r) {
  switch (r) {
    case SimulationCounterexample::Reason::TypeMismatch: return "type-mismatch";
    case SimulationCounterexample::Reason::OutputConflict: return "output-conflict";
    case SimulationCounterexample::Reason::EmptyOutput: return "empty-output";
  }
  return "?";
}

State step(const ProtoAlgorithm& a, SimulationKind kind, const State& s) {
  return kind == SimulationKind::Algorithmic ? astep(a, s) : cstep(a, s);
}

namespace {

struct Trajectory {
  enum class Status : std::uint8_t { Good, Bad, Unknown };
  Status status = Status::Unknown;
  std::vector<StatePair> pairs;
  std::optional<std::pair<Value, Value>> outputs;  // (A-output, A'-output)
  std::size_t bad_step = 0;
};

Trajectory trace_pair(const ProtoAlgorithm& a, const ProtoAlgorithm& b, SimulationKind kind,
                      const Value& d, const Value& d2, std::size_t bound) {
  Trajectory t;
  State s = State::input(d), u = State::input(d2);
  std::set<StatePair> seen;
  for (std::size_t n = 0;; ++n) {
    if (s.kind != u.kind) {
      t.status = Trajectory::Status::Bad;
      t.bad_step = n;
      t.pairs.emplace_back(s, u);
      return t;
    }
    // A repeated pair means both sides loop in lockstep forever.
    if (!seen.insert({s, u}).second) {
      t.status = Trajectory::Status::Good;
      return t;
    }
    t.pairs.emplace_back(s, u);
    if (s.is_output()) {
      t.status = Trajectory::Status::Good;
      t.outputs.emplace(s.value, u.value);
      return t;
    }
    if (n == bound) {
      t.status = Trajectory::Status::Unknown;
      return t;
    }
    s = step(a, kind, s);
    u = step(b, kind, u);
  }
}

struct MapOutcome {
  VerdictKind kind = VerdictKind::UnknownAtBound;
  std::optional<SimulationWitness> witness;
  std::optional<SimulationCounterexample> counterexample;
};

SimulationWitness build_witness(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                SimulationKind kind, const std::map<Value, Value>& input_map,
                                const std::vector<const Trajectory*>& chosen) {
  SimulationWitness w;
  w.kind = kind;
  w.input_map = input_map;
  for (const auto* t : chosen) {
    w.relation.insert(t->pairs.begin(), t->pairs.end());
    if (t->outputs) w.output_map[t->outputs->second] = t->outputs->first;
  }
  for (const auto& o : b.outputs()) {
    if (w.output_map.count(o)) continue;
    w.output_map[o] = a.outputs().front();
    w.relation.emplace(State::output(a.outputs().front()), State::output(o));
  }
  return w;
}

MapOutcome evaluate_map(const ProtoAlgorithm& a, const ProtoAlgorithm& b, SimulationKind kind,
                        const std::map<Value, Value>& fI, std::size_t bound) {
  MapOutcome out;
  auto cex = [&](SimulationCounterexample::Reason r) {
    SimulationCounterexample c;
    c.reason = r;
    c.input_map = fI;
    return c;
  };
  if (a.outputs().empty() && !b.outputs().empty()) {
    out.kind = VerdictKind::Refuted;
    out.counterexample = cex(SimulationCounterexample::Reason::EmptyOutput);
    return out;
  }
  std::vector<Trajectory> trajectories;
  std::map<Value, std::pair<Value, Value>> claimed;  // A'-output -> (A-output, input)
  bool unknown = false;
  for (const auto& d : a.inputs()) {
    auto it = fI.find(d);
    if (it == fI.end() || !b.interp().input.contains(it->second))
      throw Error(ErrorCode::InputNotInDomain, "input map is not a map into the input domain");
    Trajectory t = trace_pair(a, b, kind, d, it->second, bound);
    if (t.status == Trajectory::Status::Bad) {
      auto c = cex(SimulationCounterexample::Reason::TypeMismatch);
      c.input = d;
      c.mapped_input = it->second;
      c.step = t.bad_step;
      c.left = t.pairs.back().first;
      c.right = t.pairs.back().second;
      out.kind = VerdictKind::Refuted;
      out.counterexample = std::move(c);
      return out;
    }
    if (t.status == Trajectory::Status::Unknown) unknown = true;
    if (t.outputs) {
      auto [pos, fresh] = claimed.emplace(t.outputs->second, std::make_pair(t.outputs->first, d));
      if (!fresh && pos->second.first != t.outputs->first) {
        auto c = cex(SimulationCounterexample::Reason::OutputConflict);
        c.input = pos->second.second;
        c.mapped_input = fI.at(c.input);
        c.other_input = d;
        c.other_mapped_input = it->second;
        c.left = State::output(pos->second.first);
        c.right = State::output(t.outputs->first);
        out.kind = VerdictKind::Refuted;
        out.counterexample = std::move(c);
        return out;
      }
    }
    trajectories.push_back(std::move(t));
  }
  if (unknown) return out;
  std::vector<const Trajectory*> chosen;
  for (const auto& t : trajectories) chosen.push_back(&t);
  out.kind = VerdictKind::Proven;
  out.witness = build_witness(a, b, kind, fI, chosen);
  return out;
}

}  // namespace

SimulationVerdict check_simulation(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                   SimulationKind kind,
                                   const std::optional<std::map<Value, Value>>& input_map,
                                   std::size_t bound, std::size_t budget) {
  SimulationVerdict v;
  if (input_map) {
    auto r = evaluate_map(a, b, kind, *input_map, bound);
    v.kind = r.kind;
    v.witness = std::move(r.witness);
    v.counterexample = std::move(r.counterexample);
    if (v.kind == VerdictKind::UnknownAtBound)
      v.reason = "a trajectory exceeded the bound of " + std::to_string(bound) + " steps";
    return v;
  }

  const auto& din = a.inputs();
  const auto& din2 = b.inputs();
  // Candidate images per input, identity first.
  std::vector<std::vector<Trajectory>> cands(din.size());
  std::vector<std::vector<Value>> images(din.size());
  std::map<Value, Value> preferred;
  for (std::size_t i = 0; i < din.size(); ++i) {
    std::vector<Value> order;
    if (b.interp().input.contains(din[i])) order.push_back(din[i]);
    for (const auto& d2 : din2)
      if (d2 != din[i]) order.push_back(d2);
    if (!order.empty()) preferred[din[i]] = order.front();
    for (const auto& d2 : order) {
      if (++v.nodes > budget) {
        v.kind = VerdictKind::UnknownAtBound;
        v.reason = "search budget exhausted";
        return v;
      }
      Trajectory t = trace_pair(a, b, kind, din[i], d2, bound);
      if (t.status == Trajectory::Status::Bad) continue;
      cands[i].push_back(std::move(t));
      images[i].push_back(d2);
    }
  }

  auto refute = [&] {
    if (din2.empty() && !din.empty()) {
      v.kind = VerdictKind::Refuted;
      v.reason = "the input domain of the second proto-algorithm is empty";
      return v;
    }
    auto r = evaluate_map(a, b, kind, preferred, bound);
    v.kind = VerdictKind::Refuted;
    v.counterexample = std::move(r.counterexample);
    v.reason = "no input map yields a simulation";
    return v;
  };
  if (a.outputs().empty() && !b.outputs().empty()) return refute();
  for (const auto& c : cands)
    if (c.empty()) return refute();

  // Backtracking over per-input choices under output co-uniqueness.
  std::vector<std::size_t> choice(din.size(), 0);
  std::optional<std::vector<std::size_t>> unknown_solution;
  std::map<Value, Value> claimed;
  bool exhausted = false;
  std::function<bool(std::size_t, bool)> dfs = [&](std::size_t i, bool unknown) -> bool {
    if (i == din.size()) {
      if (!unknown) return true;
      if (!unknown_solution) unknown_solution = choice;
      return false;
    }
    for (std::size_t k = 0; k < cands[i].size(); ++k) {
      if (++v.nodes > budget) {
        exhausted = true;
        return false;
      }
      const auto& t = cands[i][k];
      std::optional<Value> added;
      if (t.outputs) {
        auto it = claimed.find(t.outputs->second);
        if (it != claimed.end() && it->second != t.outputs->first) continue;
        if (it == claimed.end()) {
          claimed.emplace(t.outputs->second, t.outputs->first);
          added = t.outputs->second;
        }
      }
      choice[i] = k;
      bool found = dfs(i + 1, unknown || t.status == Trajectory::Status::Unknown);
      if (added) claimed.erase(*added);
      if (found) return true;
      if (exhausted) return false;
    }
    return false;
  };

  if (dfs(0, false)) {
    std::map<Value, Value> fI;
    std::vector<const Trajectory*> chosen;
    for (std::size_t i = 0; i < din.size(); ++i) {
      fI[din[i]] = images[i][choice[i]];
      chosen.push_back(&cands[i][choice[i]]);
    }
    v.kind = VerdictKind::Proven;
    v.witness = build_witness(a, b, kind, fI, chosen);
    return v;
  }
  if (exhausted) {
    v.kind = VerdictKind::UnknownAtBound;
    v.reason = "search budget exhausted";
    return v;
  }
  if (unknown_solution) {
    v.kind = VerdictKind::UnknownAtBound;
    v.reason = "a trajectory exceeded the bound of " + std::to_string(bound) + " steps";
    return v;
  }
  return refute();
}

Report check_simulation_witness(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                const SimulationWitness& w) {
  Report r;
  auto well_formed = [](const ProtoAlgorithm& p, const State& s) {
    switch (s.kind) {
      case StateKind::Input: return p.interp().input.contains(s.value);
      case StateKind::Output: return p.interp().output.contains(s.value);
      case StateKind::Internal:
        return s.vertex < p.graph().size() && p.interp().main.contains(s.value);
    }
    return false;
  };
  std::map<Value, std::size_t> input_pairs, output_pairs;
  for (const auto& [s, u] : w.relation) {
    std::string subject = describe(a, s) + " ~ " + describe(b, u);
    if (s.kind != u.kind) {
      r.add("typing", subject, "pair relates states of different types");
      continue;
    }
    if (!well_formed(a, s) || !well_formed(b, u)) {
      r.add("typing", subject, "pair contains a malformed state");
      continue;
    }
    if (s.kind == StateKind::Input) {
      ++input_pairs[s.value];
      auto it = w.input_map.find(s.value);
      if (it == w.input_map.end() || it->second != u.value)
        r.add("input", subject, "input pair disagrees with the input map");
    }
    if (s.kind == StateKind::Output) {
      ++output_pairs[u.value];
      auto it = w.output_map.find(u.value);
      if (it == w.output_map.end() || it->second != s.value)
        r.add("output", subject, "output pair disagrees with the output map");
    }
    StatePair next{step(a, w.kind, s), step(b, w.kind, u)};
    if (!w.relation.count(next)) r.add("closure", subject, "successor pair is not related");
  }
  for (const auto& d : a.inputs())
    if (input_pairs[d] != 1)
      r.add("input", to_string(d),
            "input must occur in exactly one pair, found " + std::to_string(input_pairs[d]));
  for (const auto& d : b.outputs())
    if (output_pairs[d] != 1)
      r.add("output", to_string(d),
            "output must occur in exactly one pair, found " + std::to_string(output_pairs[d]));
  return r;
}

bool replay_counterexample(const ProtoAlgorithm& a, const ProtoAlgorithm& b, SimulationKind kind,
                           const SimulationCounterexample& c, std::size_t bound) {
  using R = SimulationCounterexample::Reason;
  switch (c.reason) {
    case R::EmptyOutput: return a.outputs().empty() && !b.outputs().empty();
    case R::TypeMismatch: {
      State s = State::input(c.input), u = State::input(c.mapped_input);
      for (std::size_t n = 0; n < c.step; ++n) {
        if (s.kind != u.kind) return false;
        s = step(a, kind, s);
        u = step(b, kind, u);
      }
      return s.kind != u.kind && c.left == s && c.right == u;
    }
    case R::OutputConflict: {
      if (!c.other_input || !c.other_mapped_input) return false;
      auto first = trace_pair(a, b, kind, c.input, c.mapped_input, bound);
      auto second = trace_pair(a, b, kind, *c.other_input, *c.other_mapped_input, bound);
      return first.outputs && second.outputs && first.outputs->second == second.outputs->second &&
             first.outputs->first != second.outputs->first;
    }
  }
  return false;
}

std::string describe(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                     const SimulationCounterexample& c) {
  using R = SimulationCounterexample::Reason;
  switch (c.reason) {
    case R::EmptyOutput: return "first output domain is empty, second is not";
    case R::TypeMismatch:
      return "from input " + to_string(c.input) + " mapped to " + to_string(c.mapped_input) +
             ", step " + std::to_string(c.step) + " relates " + describe(a, *c.left) + " with " +
             describe(b, *c.right);
    case R::OutputConflict:
      return "inputs " + to_string(c.input) + " and " + to_string(*c.other_input) +
             " reach distinct outputs " + to_string(c.left->value) + " and " +
             to_string(c.right->value) + " paired with the same output";
  }
  return "?";
}

EquivalenceVerdict check_equivalence(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                     SimulationKind kind, std::size_t bound, std::size_t budget) {
  EquivalenceVerdict v;
  v.forward = check_simulation(a, b, kind, std::nullopt, bound, budget);
  v.backward = check_simulation(b, a, kind, std::nullopt, bound, budget);
  if (v.forward.kind == VerdictKind::Refuted || v.backward.kind == VerdictKind::Refuted)
    v.kind = VerdictKind::Refuted;
  else if (v.forward.kind == VerdictKind::Proven && v.backward.kind == VerdictKind::Proven)
    v.kind = VerdictKind::Proven;
  else
    v.kind = VerdictKind::UnknownAtBound;
  return v;
}

Report verify_theorem2(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const SimulationWitness& w,
                       std::size_t max_steps) {
  Report r;
  RunOptions opts;
  opts.max_steps = max_steps;
  for (const auto& d : a.inputs()) {
    auto ra = run(a, d, opts);
    if (!ra.converged) continue;
    auto it = w.input_map.find(d);
    if (it == w.input_map.end()) {
      r.add("clause-1", to_string(d), "input is not mapped");
      continue;
    }
    auto rb = run(b, it->second, opts);
    if (!rb.converged) {
      r.add("clause-1", to_string(d),
            "second proto-algorithm does not converge on " + to_string(it->second));
      continue;
    }
    auto o = w.output_map.find(*rb.output);
    if (o == w.output_map.end() || o->second != *ra.output)
      r.add("clause-2", to_string(d),
            "output " + to_string(*rb.output) + " is not mapped to " + to_string(*ra.output));
    if (ra.nas != rb.nas)
      r.add(
          "clause-3", to_string(d),
          "step counts differ (" + std::to_string(ra.nas) + " vs " + std::to_string(rb.nas) + ")");
  }
  return r;
}

}  // namespace protoalg
