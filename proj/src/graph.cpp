#include "protoalg/graph.hpp"

#include <algorithm>
#include <functional>

#include "protoalg/error.hpp"

namespace protoalg {

std::vector<Symbol> Alphabet::operations() const {
  std::vector<Symbol> out;
  for (const auto& f : functions)
    if (f != kIni && f != kFin) out.push_back(f);
  return out;
}

Report Alphabet::check() const {
  Report r;
  if (!is_function(kIni)) r.add(clause::kAlphabet, kIni, "function symbols must contain ini");
  if (!is_function(kFin)) r.add(clause::kAlphabet, kFin, "function symbols must contain fin");
  for (const auto& p : predicates)
    if (is_function(p))
      r.add(clause::kAlphabet, p, "symbol declared both as function and as predicate");
  return r;
}

void RootedLabeledDigraph::add_vertex(const VertexId& v, std::optional<Symbol> label) {
  vertices.insert(v);
  if (label) labels[v] = *label;
}

void RootedLabeledDigraph::add_edge(const VertexId& from, const VertexId& to,
                                    std::optional<int> label) {
  edges[Edge{from, to}] = label;
}

bool RootedLabeledDigraph::remove_edge(const VertexId& from, const VertexId& to) {
  return edges.erase(Edge{from, to}) != 0;
}

std::optional<Symbol> RootedLabeledDigraph::label(const VertexId& v) const {
  auto it = labels.find(v);
  if (it == labels.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> RootedLabeledDigraph::out_edges(const VertexId& v) const {
  std::vector<Edge> out;
  for (auto it = edges.lower_bound(Edge{v, ""}); it != edges.end() && it->first.from == v; ++it)
    out.push_back(it->first);
  return out;
}

std::vector<Edge> RootedLabeledDigraph::in_edges(const VertexId& v) const {
  std::vector<Edge> in;
  for (const auto& [e, _] : edges)
    if (e.to == v) in.push_back(e);
  return in;
}

Degrees RootedLabeledDigraph::degrees(const VertexId& v) const {
  if (!vertices.count(v)) throw Error(ErrorCode::InvalidVertex, "unknown vertex '" + v + "'");
  Degrees d;
  for (const auto& [e, _] : edges) {
    if (e.from == v) ++d.out;
    if (e.to == v) ++d.in;
  }
  return d;
}

namespace {

std::string edge_name(const Edge& e) { return e.from + "->" + e.to; }

bool is_predicate_vertex(const Alphabet& a, const RootedLabeledDigraph& g, const VertexId& v) {
  auto l = g.label(v);
  return l && a.is_predicate(*l);
}

}  // namespace

std::vector<std::vector<VertexId>> predicate_only_cycles(const Alphabet& alphabet,
                                                         const RootedLabeledDigraph& g,
                                                         std::size_t cap) {
  std::vector<VertexId> preds;
  for (const auto& v : g.vertices)
    if (is_predicate_vertex(alphabet, g, v)) preds.push_back(v);
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < preds.size(); ++i) index[preds[i]] = i;

  std::vector<std::vector<std::size_t>> succ(preds.size());
  for (const auto& [e, _] : g.edges) {
    auto a = index.find(e.from), b = index.find(e.to);
    if (a != index.end() && b != index.end()) succ[a->second].push_back(b->second);
  }

  // Each simple cycle is reported once, from its least vertex.
  std::vector<std::vector<VertexId>> cycles;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(preds.size(), false);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (auto w : succ[v]) {
      if (cycles.size() >= cap) return;
      if (w == start) {
        std::vector<VertexId> c;
        for (auto p : path) c.push_back(preds[p]);
        c.push_back(preds[start]);
        cycles.push_back(std::move(c));
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        dfs(start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < preds.size() && cycles.size() < cap; ++s) {
    path = {s};
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return cycles;
}

namespace {

// Cycle existence in the predicate-induced subgraph, by iterative colouring.
bool has_predicate_cycle(const Alphabet& alphabet, const RootedLabeledDigraph& g) {
  std::map<VertexId, int> colour;
  for (const auto& v : g.vertices)
    if (is_predicate_vertex(alphabet, g, v)) colour[v] = 0;
  for (const auto& [start, c0] : colour) {
    if (colour[start] != 0) continue;
    std::vector<std::pair<VertexId, std::vector<Edge>>> stack;
    colour[start] = 1;
    stack.push_back({start, g.out_edges(start)});
    while (!stack.empty()) {
      auto& [v, pending] = stack.back();
      if (pending.empty()) {
        colour[v] = 2;
        stack.pop_back();
        continue;
      }
      Edge e = pending.back();
      pending.pop_back();
      auto it = colour.find(e.to);
      if (it == colour.end()) continue;
      if (it->second == 1) return true;
      if (it->second == 0) {
        it->second = 1;
        stack.push_back({e.to, g.out_edges(e.to)});
      }
    }
  }
  return false;
}

}  // namespace

Report validate_algorithm_graph(const Alphabet& alphabet, const RootedLabeledDigraph& g,
                                std::size_t cycle_report_cap) {
  Report r = alphabet.check();

  if (g.vertices.empty()) r.add(clause::kStructure, "", "vertex set is empty");
  if (!g.vertices.count(g.root)) r.add(clause::kStructure, g.root, "root is not a vertex");
  for (const auto& [e, label] : g.edges) {
    if (!g.vertices.count(e.from) || !g.vertices.count(e.to))
      r.add(clause::kStructure, edge_name(e), "edge endpoint is not a vertex");
    if (label && *label != 0 && *label != 1)
      r.add(clause::kStructure, edge_name(e), "edge label must be 0 or 1");
  }
  for (const auto& [v, _] : g.labels)
    if (!g.vertices.count(v)) r.add(clause::kStructure, v, "label on unknown vertex");

  for (const auto& v : g.vertices) {
    auto label = g.label(v);
    if (!label) {
      r.add(clause::kVertexLabeled, v, "vertex is unlabeled");
      continue;
    }
    if (!alphabet.is_function(*label) && !alphabet.is_predicate(*label)) {
      r.add(clause::kVertexLabeled, v, "label '" + *label + "' is not a symbol of the alphabet");
      continue;
    }
    bool is_root = v == g.root;
    if ((*label == kIni) != is_root) {
      r.add(clause::kRootLabel, v,
            is_root ? "root must be labeled ini" : "only the root may be labeled ini");
    }

    Degrees d = g.degrees(v);
    auto out = g.out_edges(v);
    auto any_labeled = [&] {
      for (const auto& e : out)
        if (g.edges.at(e)) return true;
      return false;
    };
    if (*label == kIni) {
      if (d.in != 0) r.add(clause::kIniDegree, v, "ini vertex must have indegree 0");
      if (d.out != 1)
        r.add(clause::kIniDegree, v, "ini vertex must have outdegree 1");
      else if (any_labeled())
        r.add(clause::kIniDegree, v, "ini outgoing edge must be unlabeled");
    } else if (*label == kFin) {
      if (d.in == 0) r.add(clause::kFinDegree, v, "fin vertex must have indegree > 0");
      if (d.out != 0) r.add(clause::kFinDegree, v, "fin vertex must have outdegree 0");
    } else if (alphabet.is_function(*label)) {
      if (d.in == 0) r.add(clause::kOperationDegree, v, "function vertex must have indegree > 0");
      if (d.out != 1)
        r.add(clause::kOperationDegree, v, "function vertex must have outdegree 1");
      else if (any_labeled())
        r.add(clause::kOperationDegree, v, "function vertex outgoing edge must be unlabeled");
    } else {
      if (d.in == 0) r.add(clause::kPredicateDegree, v, "P vertex must have indegree > 0");
      if (d.out != 2) {
        r.add(clause::kPredicateDegree, v,
              "P vertex outdegree 2 required, found " + std::to_string(d.out));
      } else {
        auto l0 = g.edges.at(out[0]), l1 = g.edges.at(out[1]);
        if (!l0 || !l1)
          r.add(clause::kPredicateDegree, v, "P vertex outgoing edges must both be labeled");
        else if (*l0 == *l1)
          r.add(clause::kPredicateDegree, v, "P vertex outgoing edges must carry distinct labels");
      }
    }
  }

  if (has_predicate_cycle(alphabet, g)) {
    for (const auto& c : predicate_only_cycles(alphabet, g, cycle_report_cap)) {
      std::string walk;
      for (std::size_t i = 0; i < c.size(); ++i) walk += (i ? "," : "") + c[i];
      r.add(clause::kPredicateCycle, walk, "cycle without a function-labeled vertex");
    }
  }
  return r;
}

AlgorithmGraph AlgorithmGraph::build(const Alphabet& alphabet, const RootedLabeledDigraph& g) {
  Report r = validate_algorithm_graph(alphabet, g);
  if (!r.ok()) throw ValidationError(ErrorCode::InvalidGraph, std::move(r));

  AlgorithmGraph out;
  out.alphabet_ = alphabet;
  out.graph_ = g;
  std::map<VertexId, std::uint32_t> index;
  for (const auto& v : g.vertices) {
    index[v] = static_cast<std::uint32_t>(out.vertices_.size());
    CompiledVertex cv;
    cv.id = v;
    cv.label = *g.label(v);
    if (cv.label == kIni)
      cv.kind = VertexKind::Ini;
    else if (cv.label == kFin)
      cv.kind = VertexKind::Fin;
    else if (alphabet.is_predicate(cv.label))
      cv.kind = VertexKind::Predicate;
    else
      cv.kind = VertexKind::Operation;
    out.vertices_.push_back(std::move(cv));
  }
  for (const auto& [e, label] : g.edges) {
    auto& from = out.vertices_[index.at(e.from)];
    auto to = index.at(e.to);
    out.vertices_[to].indegree++;
    if (from.kind == VertexKind::Predicate)
      (*label == 1 ? from.on_one : from.on_zero) = to;
    else
      from.next = to;
  }
  out.root_ = index.at(g.root);
  return out;
}

std::optional<std::uint32_t> AlgorithmGraph::index_of(const VertexId& id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const CompiledVertex& v, const VertexId& x) { return v.id < x; });
  if (it == vertices_.end() || it->id != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

}  // namespace protoalg
