#include "protoalg/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "protoalg/error.hpp"

namespace protoalg {

std::string to_string(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": [" + d.code + "] " +
         d.message;
}

namespace {

// --- lexer ------------------------------------------------------------------

enum class Tok : std::uint8_t { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

struct Failure {
  std::size_t column;
  std::string code;
  std::string message;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view line) {
  static const char* const kPuncts[] = {":->", ":=", "..", "<=", "->", "<", ">", "=",
                                        "(",   ")",  "[",  "]",  ",",  ":", ".", "+",
                                        "-",   "*",  "/",  "%",  "!",  "&", "|"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (digit(c)) {
      std::size_t j = i;
      while (j < line.size() && digit(line[j])) ++j;
      t.kind = Tok::Int;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else {
      bool matched = false;
      // Labeled edge arrows are single tokens.
      if (line.substr(i, 3) == "->0" || line.substr(i, 3) == "->1") {
        if (i + 3 >= line.size() || !digit(line[i + 3])) {
          t.kind = Tok::Punct;
          t.text = std::string(line.substr(i, 3));
          i += 3;
          matched = true;
        }
      }
      for (const char* p : kPuncts) {
        if (matched) break;
        std::string_view pv(p);
        if (line.substr(i, pv.size()) == pv) {
          t.kind = Tok::Punct;
          t.text = std::string(pv);
          i += pv.size();
          matched = true;
        }
      }
      if (!matched) throw Failure{i + 1, "syntax", std::string("unexpected character '") + c + "'"};
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.column = line.size() + 1;
  out.push_back(end);
  return out;
}

// --- token cursor --------------------------------------------------------------

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(std::string_view punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(std::string_view punct) {
    if (!is(punct)) return false;
    ++pos_;
    return true;
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Failure{peek().column, "syntax", msg + describe_here()};
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'");
    ++pos_;
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return next().text;
  }
  std::int64_t integer(const char* what) {
    bool neg = accept("-");
    if (peek().kind != Tok::Int) fail(std::string("expected ") + what);
    const auto& t = next();
    std::uint64_t mag = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), mag);
    std::uint64_t limit = neg ? std::uint64_t{1} << 63 : (std::uint64_t{1} << 63) - 1;
    if (ec != std::errc{} || mag > limit) throw Failure{t.column, "syntax", "integer out of range"};
    return neg ? static_cast<std::int64_t>(0 - mag) : static_cast<std::int64_t>(mag);
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }
  std::size_t position() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

 private:
  std::string describe_here() const {
    if (at_end()) return " at end of line";
    return " near '" + peek().text + "'";
  }
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// --- expressions -------------------------------------------------------------

class ExprParser {
 public:
  ExprParser(Cursor& c, std::string param) : c_(c), param_(std::move(param)) {}

  Expr expr() {
    if (c_.is_word("if")) {
      c_.next();
      Expr cond = expr();
      c_.expect_word("then");
      Expr t = expr();
      c_.expect_word("else");
      Expr e = expr();
      return Expr::if_then_else(std::move(cond), std::move(t), std::move(e));
    }
    return comparison();
  }

 private:
  Expr comparison() {
    Expr l = additive();
    if (c_.is("=") || c_.is("<") || c_.is("<=")) {
      auto op = c_.next().text;
      Expr r = additive();
      auto k = op == "=" ? Expr::Op::Eq : op == "<" ? Expr::Op::Lt : Expr::Op::Le;
      if (c_.is("=") || c_.is("<") || c_.is("<=")) c_.fail("comparisons do not chain");
      return Expr::binary(k, std::move(l), std::move(r));
    }
    return l;
  }
  Expr additive() {
    Expr l = multiplicative();
    while (c_.is("+") || c_.is("-")) {
      auto op = c_.next().text == "+" ? Expr::Op::Add : Expr::Op::Sub;
      l = Expr::binary(op, std::move(l), multiplicative());
    }
    return l;
  }
  Expr multiplicative() {
    Expr l = unary();
    while (c_.is("*") || c_.is("/") || c_.is("%")) {
      auto t = c_.next().text;
      auto op = t == "*" ? Expr::Op::Mul : t == "/" ? Expr::Op::Div : Expr::Op::Mod;
      l = Expr::binary(op, std::move(l), unary());
    }
    return l;
  }
  Expr unary() {
    if (c_.is("-")) {
      if (c_.peek(1).kind == Tok::Int) return postfix(Expr::literal(c_.integer("integer")));
      c_.next();
      return Expr::negate(unary());
    }
    return postfix(primary());
  }
  Expr postfix(Expr e) {
    while (c_.accept("[")) {
      auto i = c_.integer("component index");
      if (i < 0) c_.fail("negative component index");
      c_.expect("]");
      e = Expr::project(std::move(e), static_cast<std::size_t>(i));
    }
    return e;
  }
  Expr primary() {
    const auto& t = c_.peek();
    if (t.kind == Tok::Int) return Expr::literal(c_.integer("integer"));
    if (t.kind == Tok::Ident) {
      if (t.text != param_)
        throw Failure{t.column, "unknown-identifier", "unknown identifier '" + t.text + "'"};
      c_.next();
      return Expr::param();
    }
    if (c_.accept("(")) {
      Expr e = expr();
      c_.expect(")");
      return e;
    }
    if (c_.accept("<")) {
      std::vector<Expr> items;
      do {
        items.push_back(expr());
      } while (c_.accept(","));
      c_.expect(">");
      return Expr::vector(std::move(items));
    }
    c_.fail("expected an expression");
  }

  Cursor& c_;
  std::string param_;
};

Value parse_value(Cursor& c) {
  c.expect("<");
  std::vector<std::int64_t> items;
  do {
    items.push_back(c.integer("integer"));
  } while (c.accept(","));
  c.expect(">");
  return Value(std::move(items));
}

// --- process terms -------------------------------------------------------------

class TermParser {
 public:
  TermParser(Cursor& c, const Alphabet& alphabet) : c_(c), alphabet_(alphabet) {}

  ProcTerm term() {
    std::vector<ProcTerm> summands{guarded()};
    while (c_.accept("+")) summands.push_back(guarded());
    if (summands.size() == 1) return summands.front();
    return ProcTerm::alt(std::move(summands));
  }

 private:
  ProcTerm guarded() {
    auto start = c_.position();
    try {
      CondTerm phi = cond();
      if (c_.accept(":->")) return ProcTerm::guard(std::move(phi), guarded());
    } catch (const Failure&) {
    }
    c_.reset(start);
    return seq();
  }

  ProcTerm seq() {
    ProcTerm a = atom();
    if (c_.accept(".")) return ProcTerm::seq(std::move(a), seq());
    return a;
  }

  ProcTerm atom() {
    if (c_.accept("(")) {
      ProcTerm t = term();
      c_.expect(")");
      return t;
    }
    if (c_.is_word("delta")) {
      c_.next();
      return ProcTerm::delta();
    }
    if (c_.is_word("eps")) {
      c_.next();
      return ProcTerm::epsilon();
    }
    auto name = c_.ident("a process term");
    if (c_.accept(":=")) return ProcTerm::assign(name, data());
    // Actions and recursion variables are told apart once all equations are known.
    return ProcTerm::action(name);
  }

  DataTerm data() {
    if (c_.is("<")) return DataTerm::constant(parse_value(c_));
    const auto& t = c_.peek();
    auto name = c_.ident("a data term");
    if (c_.accept("(")) {
      if (!alphabet_.is_function(name))
        throw Failure{t.column, "unknown-symbol", "'" + name + "' is not a function symbol"};
      DataTerm arg = data();
      c_.expect(")");
      return DataTerm::apply(name, std::move(arg));
    }
    return DataTerm::var(name);
  }

  CondTerm cond() {
    CondTerm l = disjunction();
    if (c_.accept("->")) return CondTerm::connective(CondTerm::Kind::Implies, std::move(l), cond());
    return l;
  }
  CondTerm disjunction() {
    CondTerm l = conjunction();
    while (c_.accept("|"))
      l = CondTerm::connective(CondTerm::Kind::Or, std::move(l), conjunction());
    return l;
  }
  CondTerm conjunction() {
    CondTerm l = negation();
    while (c_.accept("&")) l = CondTerm::connective(CondTerm::Kind::And, std::move(l), negation());
    return l;
  }
  CondTerm negation() {
    if (c_.accept("!")) return CondTerm::negation(negation());
    return catom();
  }

  // Either side of an equality: a bit or a data term.
  struct Operand {
    std::optional<BitTerm> bit;
    std::optional<DataTerm> data;
  };

  Operand operand() {
    Operand o;
    if (c_.peek().kind == Tok::Int) {
      const auto& t = c_.peek();
      auto v = c_.integer("bit");
      if (v != 0 && v != 1) throw Failure{t.column, "syntax", "bit constant must be 0 or 1"};
      o.bit = BitTerm::constant(static_cast<int>(v));
      return o;
    }
    if (c_.peek().kind == Tok::Ident && alphabet_.is_predicate(c_.peek().text) &&
        c_.peek(1).text == "(") {
      auto p = c_.next().text;
      c_.expect("(");
      DataTerm arg = data();
      c_.expect(")");
      o.bit = BitTerm::apply(p, std::move(arg));
      return o;
    }
    o.data = data();
    return o;
  }

  CondTerm catom() {
    if (c_.is_word("True")) {
      c_.next();
      return CondTerm::truth();
    }
    if (c_.is_word("False")) {
      c_.next();
      return CondTerm::falsity();
    }
    if (c_.accept("(")) {
      CondTerm c = cond();
      c_.expect(")");
      return c;
    }
    auto col = c_.peek().column;
    Operand l = operand();
    c_.expect("=");
    Operand r = operand();
    if (l.bit && r.bit) return CondTerm::bit_eq(*l.bit, *r.bit);
    if (l.data && r.data) return CondTerm::data_eq(*l.data, *r.data);
    throw Failure{col, "type", "equality between a bit and a data term"};
  }

  Cursor& c_;
  const Alphabet& alphabet_;
};

ProcTerm resolve_variables(const ProcTerm& t, const std::set<std::string>& vars) {
  using K = ProcTerm::Kind;
  const auto& c = t.children();
  switch (t.kind()) {
    case K::Action: return vars.count(t.name()) ? ProcTerm::var(t.name()) : t;
    case K::Alt: {
      std::vector<ProcTerm> out;
      for (const auto& s : c) out.push_back(resolve_variables(s, vars));
      return ProcTerm::alt(std::move(out));
    }
    case K::Seq: return ProcTerm::seq(resolve_variables(c[0], vars), resolve_variables(c[1], vars));
    case K::Guard: return ProcTerm::guard(t.cond(), resolve_variables(c[0], vars));
    default: return t;
  }
}

// --- document parser -----------------------------------------------------------

enum class Section : std::uint8_t { None, Alphabet, Graph, Interp, Process };

struct PendingEquation {
  std::size_t line;
  std::string var;
  ProcTerm rhs;
};

struct PendingDef {
  std::size_t line, column;
  bool predicate;
  std::string symbol;
  FunctionDef def;
};

struct PendingDomain {
  std::size_t line;
  DomainDecl decl;
};

class DocumentParser {
 public:
  ParseResult run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      try {
        auto toks = tokenize(line);
        if (toks.front().kind != Tok::End) statement(line_no, Cursor(std::move(toks)));
      } catch (const Failure& f) {
        diag(line_no, f.column, f.code, f.message);
      }
      if (end == text.size()) break;
      start = end + 1;
    }
    resolve();
    std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
    ParseResult r;
    r.diagnostics = std::move(diags_);
    if (r.diagnostics.empty()) r.document = std::move(doc_);
    return r;
  }

 private:
  void diag(std::size_t line, std::size_t col, std::string code, std::string msg) {
    diags_.push_back({line, col, std::move(code), std::move(msg)});
  }

  void statement(std::size_t line, Cursor c) {
    static const std::map<std::string, Section> kSections{{"ALPHABET", Section::Alphabet},
                                                          {"GRAPH", Section::Graph},
                                                          {"INTERP", Section::Interp},
                                                          {"PROCESS", Section::Process}};
    if (c.peek().kind == Tok::Ident && kSections.count(c.peek().text)) {
      auto name = c.next().text;
      c.finish();
      section_ = kSections.at(name);
      if (!section_lines_.emplace(section_, line).second)
        throw Failure{1, "duplicate-section", "section " + name + " appears twice"};
      if (section_ == Section::Graph) doc_.graph.emplace();
      if (section_ == Section::Interp) doc_.interp.emplace();
      if (section_ == Section::Process) doc_.process.emplace();
      return;
    }
    switch (section_) {
      case Section::None:
        throw Failure{c.peek().column, "syntax", "statement outside of a section"};
      case Section::Alphabet: alphabet_line(line, c); break;
      case Section::Graph: graph_line(line, c); break;
      case Section::Interp: interp_line(line, c); break;
      case Section::Process: process_line(line, c); break;
    }
  }

  void alphabet_line(std::size_t line, Cursor& c) {
    bool pred = c.is_word("pred");
    if (!pred && !c.is_word("fun")) c.fail("expected 'fun' or 'pred'");
    c.next();
    if (c.at_end()) c.fail("expected a symbol");
    while (!c.at_end()) {
      auto col = c.peek().column;
      auto s = c.ident("a symbol");
      if (doc_.alphabet.is_function(s) || doc_.alphabet.is_predicate(s)) {
        diag(line, col, "duplicate-symbol", "symbol '" + s + "' declared twice");
        continue;
      }
      (pred ? doc_.alphabet.predicates : doc_.alphabet.functions).insert(s);
      symbol_lines_[s] = {line, col};
    }
  }

  void graph_line(std::size_t line, Cursor& c) {
    auto& g = *doc_.graph;
    if (c.is_word("root")) {
      c.next();
      auto col = c.peek().column;
      auto r = c.ident("a vertex id");
      c.finish();
      if (root_line_) throw Failure{col, "duplicate-root", "root declared twice"};
      g.root = r;
      root_line_ = {line, col};
      return;
    }
    if (c.is_word("v")) {
      c.next();
      auto col = c.peek().column;
      auto v = c.ident("a vertex id");
      std::optional<Symbol> label;
      if (c.accept(":")) {
        auto lcol = c.peek().column;
        label = c.ident("a vertex label");
        label_refs_.push_back({line, lcol, *label});
      }
      c.finish();
      if (g.vertices.count(v))
        throw Failure{col, "duplicate-vertex", "vertex '" + v + "' declared twice"};
      g.add_vertex(v, label);
      return;
    }
    if (c.is_word("edge")) {
      c.next();
      auto col = c.peek().column;
      auto from = c.ident("a vertex id");
      std::optional<int> label;
      if (c.accept("->1"))
        label = 1;
      else if (c.accept("->0"))
        label = 0;
      else
        c.expect("->");
      auto to_col = c.peek().column;
      auto to = c.ident("a vertex id");
      c.finish();
      if (g.edges.count(Edge{from, to}))
        throw Failure{col, "duplicate-edge", "edge " + from + " -> " + to + " declared twice"};
      g.add_edge(from, to, label);
      edge_refs_.push_back({line, col, from, to_col, to, label});
      return;
    }
    c.fail("expected 'root', 'v' or 'edge'");
  }

  void interp_line(std::size_t line, Cursor& c) {
    if (c.is_word("domain")) {
      c.next();
      auto col = c.peek().column;
      auto name = c.ident("main, input or output");
      if (name != "main" && name != "input" && name != "output")
        throw Failure{col, "syntax", "domain must be main, input or output"};
      c.expect_word("arity");
      auto arity = c.integer("an arity");
      if (arity < 1) throw Failure{col, "domain", "arity must be at least 1"};
      DomainDecl d;
      if (c.is_word("range")) {
        c.next();
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        do {
          auto lo = c.integer("a lower bound");
          c.expect("..");
          auto hi = c.integer("an upper bound");
          ranges.emplace_back(lo, hi);
        } while (c.accept(","));
        c.finish();
        if (ranges.size() != static_cast<std::size_t>(arity))
          throw Failure{col, "domain", "expected " + std::to_string(arity) + " ranges"};
        d = DomainDecl::boxed(name, std::move(ranges));
      } else if (c.is_word("values")) {
        c.next();
        std::vector<Value> values;
        do {
          values.push_back(parse_value(c));
        } while (c.accept(","));
        c.finish();
        d = DomainDecl::finite(name, static_cast<std::size_t>(arity), std::move(values));
      } else {
        c.fail("expected 'range' or 'values'");
      }
      for (const auto& issue : d.check().issues) diag(line, col, issue.code, issue.message);
      if (!domains_.emplace(name, PendingDomain{line, d}).second)
        throw Failure{col, "duplicate-definition", "domain " + name + " declared twice"};
      return;
    }
    bool pred = c.is_word("pred");
    if (!pred && !c.is_word("fun")) c.fail("expected 'domain', 'fun' or 'pred'");
    c.next();
    auto col = c.peek().column;
    auto symbol = c.ident("a symbol");
    c.expect("(");
    auto param = c.ident("a parameter name");
    c.expect(")");
    c.expect("=");
    ExprParser ep(c, param);
    FunctionDef def{param, ep.expr()};
    c.finish();
    defs_.push_back({line, col, pred, symbol, std::move(def)});
  }

  void process_line(std::size_t line, Cursor& c) {
    auto& p = *doc_.process;
    if ((c.is_word("root") || c.is_word("empty")) && c.peek(1).kind == Tok::Ident &&
        c.peek(2).kind == Tok::End) {
      bool root = c.next().text == "root";
      (root ? p.root : p.empty) = c.next().text;
      (root ? process_root_line_ : process_empty_line_) = line;
      return;
    }
    auto col = c.peek().column;
    auto var = c.ident("a recursion variable");
    c.expect("=");
    TermParser tp(c, doc_.alphabet);
    ProcTerm rhs = tp.term();
    c.finish();
    for (const auto& e : equations_)
      if (e.var == var) throw Failure{col, "duplicate-definition", "second equation for " + var};
    equations_.push_back({line, var, std::move(rhs)});
  }

  void resolve() {
    if (!section_lines_.count(Section::Alphabet)) {
      diag(1, 1, "missing-section", "missing ALPHABET section");
      return;
    }
    const auto& a = doc_.alphabet;
    for (const auto& r : label_refs_)
      if (!a.is_function(r.symbol) && !a.is_predicate(r.symbol))
        diag(r.line, r.column, "unknown-symbol",
             "label '" + r.symbol + "' is not a declared symbol");

    if (doc_.graph) {
      auto& g = *doc_.graph;
      if (!root_line_)
        diag(section_lines_.at(Section::Graph), 1, "missing-root", "GRAPH declares no root");
      else if (!g.vertices.count(g.root))
        diag(root_line_->first, root_line_->second, "unknown-vertex",
             "root '" + g.root + "' is not a vertex");
      std::set<std::pair<VertexId, int>> labeled;
      for (const auto& e : edge_refs_) {
        if (!g.vertices.count(e.from))
          diag(e.line, e.column, "unknown-vertex", "'" + e.from + "' is not a vertex");
        if (!g.vertices.count(e.to))
          diag(e.line, e.to_column, "unknown-vertex", "'" + e.to + "' is not a vertex");
        if (e.label && !labeled.emplace(e.from, *e.label).second) {
          auto l = g.label(e.from);
          bool predicate = l && a.is_predicate(*l);
          diag(e.line, e.column, "duplicate-edge-label",
               std::string("duplicate edge label on ") + (predicate ? "predicate " : "") +
                   "vertex " + e.from);
        }
      }
    }

    if (doc_.interp) {
      auto& in = *doc_.interp;
      std::size_t sline = section_lines_.at(Section::Interp);
      for (const char* name : {"main", "input", "output"}) {
        auto it = domains_.find(name);
        if (it == domains_.end()) {
          diag(sline, 1, "missing-domain", std::string("domain ") + name + " is not declared");
          continue;
        }
        (std::string(name) == "main"    ? in.main
         : std::string(name) == "input" ? in.input
                                        : in.output) = it->second.decl;
      }
      for (auto& d : defs_) {
        bool known = d.predicate ? a.is_predicate(d.symbol) : a.is_function(d.symbol);
        if (!known) {
          diag(d.line, d.column, "unknown-symbol",
               "'" + d.symbol + "' is not a declared " + (d.predicate ? "predicate" : "function") +
                   " symbol");
          continue;
        }
        auto& target = d.predicate ? in.predicates : in.functions;
        if (target.count(d.symbol)) {
          diag(d.line, d.column, "duplicate-definition", "second definition of " + d.symbol);
          continue;
        }
        const char* source_domain = d.symbol == kIni ? "input" : "main";
        const char* target_domain = d.predicate ? nullptr : d.symbol == kFin ? "output" : "main";
        if (domains_.count(source_domain) && (!target_domain || domains_.count(target_domain))) {
          std::size_t from = domains_.at(source_domain).decl.arity;
          std::size_t to = target_domain ? domains_.at(target_domain).decl.arity : 1;
          std::string why;
          auto n = d.def.body.result_arity(from, &why);
          if (!n)
            diag(d.line, d.column, "type", d.symbol + ": " + why);
          else if (*n != to)
            diag(d.line, d.column, "type",
                 d.symbol + " yields a " + std::to_string(*n) + "-tuple, expected " +
                     std::to_string(to));
        }
        target.emplace(d.symbol, std::move(d.def));
      }
    }

    if (doc_.process) {
      auto& p = *doc_.process;
      std::size_t sline = section_lines_.at(Section::Process);
      std::set<std::string> vars;
      for (const auto& e : equations_) vars.insert(e.var);
      auto spec = std::make_shared<LinearSpec>();
      for (const auto& e : equations_)
        spec->equations.emplace(e.var, resolve_variables(e.rhs, vars));
      if (!process_root_line_)
        diag(sline, 1, "missing-root", "PROCESS declares no root");
      else if (!vars.count(p.root))
        diag(*process_root_line_, 1, "unknown-variable", "root " + p.root + " has no equation");
      if (!process_empty_line_)
        diag(sline, 1, "missing-empty", "PROCESS declares no empty variable");
      else if (!vars.count(p.empty))
        diag(*process_empty_line_, 1, "unknown-variable",
             "empty variable " + p.empty + " has no equation");
      std::string why;
      if (!is_linear_spec(*spec, &why)) diag(sline, 1, "non-linear", why);
      p.spec = std::move(spec);
    }
  }

  struct LabelRef {
    std::size_t line, column;
    Symbol symbol;
  };
  struct EdgeRef {
    std::size_t line, column;
    VertexId from;
    std::size_t to_column;
    VertexId to;
    std::optional<int> label;
  };

  Document doc_;
  std::vector<Diagnostic> diags_;
  Section section_ = Section::None;
  std::map<Section, std::size_t> section_lines_;
  std::map<Symbol, std::pair<std::size_t, std::size_t>> symbol_lines_;
  std::optional<std::pair<std::size_t, std::size_t>> root_line_;
  std::optional<std::size_t> process_root_line_, process_empty_line_;
  std::vector<LabelRef> label_refs_;
  std::vector<EdgeRef> edge_refs_;
  std::map<std::string, PendingDomain> domains_;
  std::vector<PendingDef> defs_;
  std::vector<PendingEquation> equations_;
};

// --- printer -------------------------------------------------------------------

std::string print_domain(const DomainDecl& d) {
  std::string s = "domain " + d.name + " arity " + std::to_string(d.arity);
  if (const auto* b = std::get_if<BoxedExtent>(&d.extent)) {
    s += " range ";
    for (std::size_t i = 0; i < b->ranges.size(); ++i)
      s += (i ? ", " : "") + std::to_string(b->ranges[i].first) + ".." +
           std::to_string(b->ranges[i].second);
  } else {
    const auto& f = std::get<FiniteExtent>(d.extent);
    s += " values ";
    for (std::size_t i = 0; i < f.values.size(); ++i) s += (i ? ", " : "") + to_string(f.values[i]);
  }
  return s;
}

[[noreturn]] void rethrow(const Failure& f) {
  throw Error(ErrorCode::ParseError, std::to_string(f.column) + ": " + f.message);
}

}  // namespace

ParseResult parse_document(std::string_view text) { return DocumentParser().run(text); }

Expr parse_expr(std::string_view text, const std::string& param) {
  try {
    Cursor c(tokenize(text));
    ExprParser p(c, param);
    Expr e = p.expr();
    c.finish();
    return e;
  } catch (const Failure& f) {
    rethrow(f);
  }
}

LinearSpec parse_equations(std::string_view text, const Alphabet& alphabet) {
  std::string doc = "ALPHABET\n";
  // A throwaway alphabet section keeps the term grammar in one place.
  if (!alphabet.functions.empty()) {
    doc += "fun";
    for (const auto& f : alphabet.functions) doc += " " + f;
    doc += "\n";
  }
  if (!alphabet.predicates.empty()) {
    doc += "pred";
    for (const auto& p : alphabet.predicates) doc += " " + p;
    doc += "\n";
  }
  doc += "PROCESS\n";
  std::string body(text);
  std::string first_var;
  {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
      try {
        Cursor c(tokenize(line));
        if (c.peek().kind == Tok::Ident) {
          first_var = c.peek().text;
          break;
        }
      } catch (const Failure&) {
        break;
      }
    }
  }
  doc += "root " + first_var + "\nempty " + first_var + "\n" + body;
  auto r = parse_document(doc);
  for (const auto& d : r.diagnostics)
    if (d.code != "missing-root" && d.code != "unknown-variable")
      throw Error(ErrorCode::ParseError, to_string(d));
  if (!r.ok()) throw Error(ErrorCode::ParseError, "no equations");
  return *r.document->process->spec;
}

std::string print_spec(const AlgorithmProcess& p) {
  std::string s = "root " + p.root + "\nempty " + p.empty + "\n";
  for (const auto& [x, t] : p.spec->equations) s += x + " = " + t.to_string() + "\n";
  return s;
}

std::string print_document(const Document& d) {
  std::string s = "ALPHABET\n";
  if (!d.alphabet.functions.empty()) {
    s += "fun";
    for (const auto& f : d.alphabet.functions) s += " " + f;
    s += "\n";
  }
  if (!d.alphabet.predicates.empty()) {
    s += "pred";
    for (const auto& p : d.alphabet.predicates) s += " " + p;
    s += "\n";
  }
  if (d.graph) {
    const auto& g = *d.graph;
    s += "\nGRAPH\nroot " + g.root + "\n";
    for (const auto& v : g.vertices) {
      auto l = g.label(v);
      s += "v " + v + (l ? " : " + *l : "") + "\n";
    }
    for (const auto& [e, label] : g.edges)
      s += "edge " + e.from + " ->" + (label ? std::to_string(*label) : "") + " " + e.to + "\n";
  }
  if (d.interp) {
    const auto& in = *d.interp;
    s += "\nINTERP\n" + print_domain(in.main) + "\n" + print_domain(in.input) + "\n" +
         print_domain(in.output) + "\n";
    for (const auto& [f, def] : in.functions)
      s += "fun " + f + "(" + def.param + ") = " + def.body.to_string(def.param) + "\n";
    for (const auto& [p, def] : in.predicates)
      s += "pred " + p + "(" + def.param + ") = " + def.body.to_string(def.param) + "\n";
  }
  if (d.process) s += "\nPROCESS\n" + print_spec(*d.process);
  return s;
}

ProtoAlgorithm to_proto_algorithm(const Document& d) {
  if (!d.graph) throw Error(ErrorCode::ParseError, "missing GRAPH section");
  if (!d.interp) throw Error(ErrorCode::ParseError, "missing INTERP section");
  return ProtoAlgorithm::make(d.alphabet, *d.graph, *d.interp);
}

Document to_document(const ProtoAlgorithm& a) {
  Document d;
  d.alphabet = a.alphabet();
  d.graph = a.digraph();
  d.interp = a.interp();
  return d;
}

}  // namespace protoalg
