#include "protoalg/generate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "protoalg/dsl.hpp"
#include "protoalg/error.hpp"

namespace protoalg {

std::string_view to_string(VariantKind k) {
  switch (k) {
    case VariantKind::Iso: return "iso";
    case VariantKind::Merge: return "merge";
    case VariantKind::CycleDup: return "cycle-dup";
    case VariantKind::OpSwap: return "op-swap";
  }
  return "?";
}

std::string_view relation(VariantKind k) {
  switch (k) {
    case VariantKind::Iso: return "iso";
    case VariantKind::Merge: return "aeqv-not-iso";
    case VariantKind::CycleDup: return "ceqv-not-aeqv";
    case VariantKind::OpSwap: return "aeqv-but-process-unequal";
  }
  return "?";
}

const Variant* Generated::find(VariantKind k) const {
  for (const auto& v : variants)
    if (v.kind == k) return &v;
  return nullptr;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Inclusive; plain modulo keeps streams identical across standard libraries.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1],
                v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

 private:
  std::mt19937_64 gen_;
};

struct Draft {
  Alphabet alphabet;
  RootedLabeledDigraph graph;
  Interpretation interp;
  bool loop = false;
  std::int64_t carrier = 4;
};

FunctionDef def(const std::string& body) { return FunctionDef{"x", parse_expr(body)}; }

std::string add_mod(std::int64_t a, std::int64_t m) {
  return "(x[0] + " + std::to_string(a) + ") % " + std::to_string(m);
}

std::string random_operation(Rng& rng, std::int64_t m) {
  switch (rng.uniform(0, 3)) {
    case 0: return "(x[0] * " + std::to_string(rng.uniform(0, m - 1)) + ") % " + std::to_string(m);
    case 1: {
      auto k = std::to_string(rng.uniform(1, m - 1));
      return "if x[0] < " + k + " then " + k + " else x[0]";
    }
    default: return add_mod(rng.uniform(1, m - 1), m);
  }
}

std::string random_predicate(Rng& rng, std::int64_t m) {
  switch (rng.uniform(0, 2)) {
    case 0: return "x[0] < " + std::to_string(rng.uniform(1, m - 1));
    case 1: return "x[0] % 2 = 0";
    default: return "x[0] = " + std::to_string(rng.uniform(0, m - 1));
  }
}

Draft draft(Rng& rng, const GeneratorParams& params) {
  Draft d;
  std::int64_t m = std::max<std::int64_t>(params.carrier, 2);
  d.carrier = m;
  auto& a = d.alphabet;
  auto& in = d.interp;
  a.functions = {kIni, kFin, "dec"};
  a.predicates = {"iszero", "isle"};
  in.main = DomainDecl::boxed("main", {{0, m - 1}});
  in.input = DomainDecl::boxed("input", {{0, m - 1}});
  in.output = DomainDecl::boxed("output", {{0, m - 1}});
  in.functions.insert_or_assign(kIni,
                                def(rng.chance(50) ? "x" : add_mod(rng.uniform(1, m - 1), m)));
  in.functions.insert_or_assign(kFin, def("x"));
  in.functions.insert_or_assign("dec", def("if x[0] = 0 then <0> else <x[0] - 1>"));
  in.predicates.insert_or_assign("iszero", def("x[0] = 0"));
  in.predicates.insert_or_assign("isle", def("x[0] <= " + std::to_string(rng.uniform(0, m - 2))));

  // f1 and f2 are distinct shifts, so they commute and differ everywhere.
  std::vector<Symbol> ops;
  for (std::size_t i = 1; i <= std::max<std::size_t>(params.operations, 2); ++i) {
    Symbol f = "f" + std::to_string(i);
    a.functions.insert(f);
    ops.push_back(f);
    std::string body;
    if (i == 1)
      body = add_mod(1, m);
    else if (i == 2)
      body = add_mod(rng.uniform(2, std::max<std::int64_t>(m - 1, 2)) % m, m);
    else
      body = random_operation(rng, m);
    in.functions.insert_or_assign(f, def(body));
  }
  std::vector<Symbol> preds;
  for (std::size_t i = 1; i <= std::max<std::size_t>(params.predicates, 1); ++i) {
    Symbol p = "p" + std::to_string(i);
    a.predicates.insert(p);
    preds.push_back(p);
    in.predicates.insert_or_assign(p, def(random_predicate(rng, m)));
  }

  auto& g = d.graph;
  g.root = "r";
  g.add_vertex("r", Symbol(kIni));
  std::vector<VertexId> order;
  for (std::size_t i = 1; i <= params.vertices; ++i) order.push_back("v" + std::to_string(i));
  std::size_t fins = rng.chance(50) ? 2 : 1;
  for (std::size_t i = 1; i <= fins; ++i) order.push_back("h" + std::to_string(i));
  for (std::size_t i = 1; i <= fins; ++i) g.add_vertex("h" + std::to_string(i), Symbol(kFin));

  d.loop = params.loops && rng.chance(50);
  VertexId entry = order.front();
  if (d.loop) {
    g.add_vertex("c", Symbol("iszero"));
    g.add_vertex("g", Symbol("dec"));
    g.add_edge("r", "c");
    g.add_edge("c", entry, 1);
    g.add_edge("c", "g", 0);
    g.add_edge("g", "c");
  } else {
    g.add_edge("r", entry);
  }

  bool chain = params.vertices >= 2 && rng.chance(50);
  for (std::size_t i = 0; i < params.vertices; ++i) {
    const auto& v = order[i];
    const auto& next = order[i + 1];
    std::vector<VertexId> later(order.begin() + static_cast<std::ptrdiff_t>(i) + 1, order.end());
    // Only earlier vertices can reach `next`, so it is taken now if still unreached.
    bool needy = g.in_edges(next).empty();
    if (chain && i < 2) {
      g.add_vertex(v, ops[i]);
      g.add_edge(v, next);
      continue;
    }
    if (later.size() >= 2 && rng.chance(40)) {
      g.add_vertex(v, rng.pick(preds));
      rng.shuffle(later);
      if (needy && later[1] != next) later[0] = next;
      int one = rng.chance(50) ? 1 : 0;
      g.add_edge(v, later[0], one);
      g.add_edge(v, later[1], 1 - one);
    } else {
      g.add_vertex(v, rng.chance(15) ? Symbol("dec") : rng.pick(ops));
      g.add_edge(v, needy ? next : rng.pick(later));
    }
  }
  // Unreached fin vertices are dropped.
  for (std::size_t i = 1; i <= fins; ++i) {
    auto h = "h" + std::to_string(i);
    if (g.in_edges(h).empty()) {
      g.vertices.erase(h);
      g.labels.erase(h);
    }
  }
  return d;
}

ProtoAlgorithm build(const Draft& d) { return ProtoAlgorithm::make(d.alphabet, d.graph, d.interp); }

Expr shifted(const Expr& body, std::int64_t from, std::int64_t to) {
  Expr arg = Expr::binary(Expr::Op::Sub, Expr::param(), Expr::literal(from));
  Expr e = body.substitute(arg);
  return to == 0 ? e : Expr::binary(Expr::Op::Add, e, Expr::literal(to));
}

DomainDecl shifted_domain(const DomainDecl& d, std::int64_t s) {
  auto ranges = std::get<BoxedExtent>(d.extent).ranges;
  for (auto& [lo, hi] : ranges) lo += s, hi += s;
  return DomainDecl::boxed(d.name, std::move(ranges));
}

ProtoAlgorithm iso_variant(Rng& rng, const Draft& d) {
  // Symbol renaming.
  std::map<Symbol, Symbol> sym;
  std::vector<Symbol> ops = d.alphabet.operations();
  std::vector<std::size_t> perm(ops.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  for (std::size_t i = 0; i < ops.size(); ++i) sym[ops[i]] = "op" + std::to_string(perm[i]);
  std::vector<Symbol> preds(d.alphabet.predicates.begin(), d.alphabet.predicates.end());
  perm.resize(preds.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  for (std::size_t i = 0; i < preds.size(); ++i) sym[preds[i]] = "test" + std::to_string(perm[i]);
  sym[kIni] = kIni;
  sym[kFin] = kFin;

  bool flip = rng.chance(50);
  std::int64_t s = rng.uniform(0, 5), t = rng.uniform(0, 5), u = rng.uniform(0, 5);

  Draft e;
  e.carrier = d.carrier;
  for (const auto& f : d.alphabet.functions) e.alphabet.functions.insert(sym.at(f));
  for (const auto& p : d.alphabet.predicates) e.alphabet.predicates.insert(sym.at(p));
  e.interp.main = shifted_domain(d.interp.main, s);
  e.interp.input = shifted_domain(d.interp.input, t);
  e.interp.output = shifted_domain(d.interp.output, u);
  for (const auto& [f, fd] : d.interp.functions) {
    Expr body = f == kIni   ? shifted(fd.body, t, s)
                : f == kFin ? shifted(fd.body, s, u)
                            : shifted(fd.body, s, s);
    e.interp.functions.insert_or_assign(sym.at(f), FunctionDef{"x", body});
  }
  for (const auto& [p, pd] : d.interp.predicates) {
    Expr body = shifted(pd.body, s, 0);
    if (flip) body = Expr::binary(Expr::Op::Sub, Expr::literal(1), body);
    e.interp.predicates.insert_or_assign(sym.at(p), FunctionDef{"x", body});
  }

  // Vertex renaming.
  std::vector<VertexId> ids(d.graph.vertices.begin(), d.graph.vertices.end());
  perm.resize(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::map<VertexId, VertexId> vm;
  for (std::size_t i = 0; i < ids.size(); ++i) vm[ids[i]] = "n" + std::to_string(perm[i]);
  e.graph.root = vm.at(d.graph.root);
  for (const auto& v : ids) e.graph.add_vertex(vm.at(v), sym.at(*d.graph.label(v)));
  for (const auto& [edge, label] : d.graph.edges) {
    std::optional<int> l = label;
    if (l && flip) l = 1 - *l;
    e.graph.add_edge(vm.at(edge.from), vm.at(edge.to), l);
  }
  return build(e);
}

std::optional<ProtoAlgorithm> merge_variant(Rng& rng, const Draft& d) {
  std::vector<VertexId> candidates;
  for (const auto& v : d.graph.vertices)
    if (d.graph.in_edges(v).size() >= 2) candidates.push_back(v);
  if (candidates.empty()) return std::nullopt;
  VertexId w = rng.pick(candidates);
  VertexId copy = w + "_copy";
  Draft e = d;
  e.graph.add_vertex(copy, *d.graph.label(w));
  for (const auto& out : d.graph.out_edges(w))
    e.graph.add_edge(copy, out.to, d.graph.edges.at(out));
  auto in = d.graph.in_edges(w);
  rng.shuffle(in);
  auto moved = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(in.size()) - 1));
  for (std::size_t i = 0; i < moved; ++i) {
    auto label = d.graph.edges.at(in[i]);
    e.graph.remove_edge(in[i].from, w);
    e.graph.add_edge(in[i].from, copy, label);
  }
  return build(e);
}

std::optional<ProtoAlgorithm> cycle_dup_variant(const Draft& d) {
  if (!d.loop) return std::nullopt;
  Draft e = d;
  e.graph.add_vertex("cp", Symbol("isle"));
  e.graph.add_vertex("gp", Symbol("dec"));
  e.graph.remove_edge("r", "c");
  e.graph.add_edge("r", "cp");
  e.graph.add_edge("cp", "c", 1);
  e.graph.add_edge("cp", "gp", 0);
  e.graph.add_edge("gp", "cp");
  return build(e);
}

std::optional<ProtoAlgorithm> op_swap_variant(const Draft& d, const ProtoAlgorithm& base) {
  const auto& in = d.interp;
  // Values seen at each vertex over all runs.
  std::map<VertexId, std::set<Value>> seen;
  RunOptions opt;
  opt.record_algorithmic = true;
  for (const auto& x : base.inputs()) {
    auto r = run(base, x, opt);
    for (const auto& s : *r.algorithmic_trace)
      if (s.kind == StateKind::Internal) seen[base.graph().vertex(s.vertex).id].insert(s.value);
  }
  for (const auto& [edge, label] : d.graph.edges) {
    auto f = *d.graph.label(edge.from);
    auto g = *d.graph.label(edge.to);
    if (!d.alphabet.is_operation(f) || !d.alphabet.is_operation(g) || f == g) continue;
    if (d.graph.in_edges(edge.to).size() != 1) continue;
    bool commute = true;
    for (const auto& x : base.carrier())
      if (apply_symbol(in, g, apply_symbol(in, f, x)) !=
          apply_symbol(in, f, apply_symbol(in, g, x)))
        commute = false;
    if (!commute) continue;
    bool differs = false;
    for (const auto& x : seen[edge.from])
      if (apply_symbol(in, f, x) != apply_symbol(in, g, x)) differs = true;
    if (!differs) continue;
    Draft e = d;
    e.graph.labels[edge.from] = g;
    e.graph.labels[edge.to] = f;
    return build(e);
  }
  return std::nullopt;
}

}  // namespace

Generated generate_random(std::uint64_t seed, const GeneratorParams& params) {
  Rng rng(seed);
  Draft d = draft(rng, params);
  Generated out{build(d), {}};
  out.variants.push_back({VariantKind::Iso, iso_variant(rng, d)});
  if (auto m = merge_variant(rng, d)) out.variants.push_back({VariantKind::Merge, std::move(*m)});
  if (auto c = cycle_dup_variant(d)) out.variants.push_back({VariantKind::CycleDup, std::move(*c)});
  if (auto s = op_swap_variant(d, out.base))
    out.variants.push_back({VariantKind::OpSwap, std::move(*s)});
  return out;
}

ProtoAlgorithm random_proto_algorithm(std::uint64_t seed, const GeneratorParams& params) {
  Rng rng(seed);
  return build(draft(rng, params));
}

AlgorithmProcess random_algorithm_process(std::uint64_t seed, const GeneratorParams& params) {
  Rng rng(seed);
  Draft d = draft(rng, params);
  auto g = AlgorithmGraph::build(d.alphabet, d.graph);
  auto p = graph_to_process(g);
  std::vector<std::string> vars;
  for (const auto& [x, _] : p.spec->equations) vars.push_back(x);
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i]] = "Y" + std::to_string(perm[i]);
  return rename(p, m);
}

}  // namespace protoalg
