#include "protoalg/interp.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_set>

#include "protoalg/error.hpp"

namespace protoalg {

DomainDecl DomainDecl::boxed(std::string name,
                             std::vector<std::pair<std::int64_t, std::int64_t>> ranges) {
  DomainDecl d;
  d.name = std::move(name);
  d.arity = ranges.size();
  d.extent = BoxedExtent{std::move(ranges)};
  return d;
}

DomainDecl DomainDecl::finite(std::string name, std::size_t arity, std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  DomainDecl d;
  d.name = std::move(name);
  d.arity = arity;
  d.extent = FiniteExtent{std::move(values)};
  return d;
}

bool DomainDecl::contains(const Value& v) const {
  if (v.arity() != arity) return false;
  if (const auto* f = std::get_if<FiniteExtent>(&extent))
    return std::binary_search(f->values.begin(), f->values.end(), v);
  const auto& box = std::get<BoxedExtent>(extent);
  if (box.ranges.size() != arity) return false;
  for (std::size_t i = 0; i < arity; ++i)
    if (v[i] < box.ranges[i].first || v[i] > box.ranges[i].second) return false;
  return true;
}

std::uint64_t DomainDecl::size() const {
  if (const auto* f = std::get_if<FiniteExtent>(&extent)) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < f->values.size(); ++i)
      if (i == 0 || f->values[i] != f->values[i - 1]) ++n;
    return n;
  }
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (auto [lo, hi] : std::get<BoxedExtent>(extent).ranges) {
    if (hi < lo) return 0;
    auto width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (width == 0 || n > kMax / width) return kMax;
    n *= width;
  }
  return n;
}

Report DomainDecl::check() const {
  Report r;
  if (arity == 0) r.add("domain", name, "arity must be at least 1");
  if (const auto* f = std::get_if<FiniteExtent>(&extent)) {
    for (std::size_t i = 0; i < f->values.size(); ++i) {
      if (f->values[i].arity() != arity)
        r.add("domain", name, "value " + to_string(f->values[i]) + " has wrong arity");
      if (i > 0 && f->values[i] == f->values[i - 1])
        r.add("domain", name, "duplicate value " + to_string(f->values[i]));
    }
  } else {
    const auto& box = std::get<BoxedExtent>(extent);
    if (box.ranges.size() != arity) r.add("domain", name, "range count does not match arity");
    for (auto [lo, hi] : box.ranges)
      if (hi < lo)
        r.add("domain", name, "empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return r;
}

std::vector<Value> enumerate(const DomainDecl& domain, std::size_t cap) {
  if (domain.size() > cap)
    throw Error(ErrorCode::ExtentTooLarge,
                "domain '" + domain.name + "' has more than " + std::to_string(cap) + " elements");
  if (const auto* f = std::get_if<FiniteExtent>(&domain.extent)) {
    std::vector<Value> out = f->values;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const auto& ranges = std::get<BoxedExtent>(domain.extent).ranges;
  std::vector<Value> out;
  if (domain.size() == 0) return out;
  std::vector<std::int64_t> cur;
  for (auto [lo, hi] : ranges) cur.push_back(lo);
  out.reserve(domain.size());
  while (true) {
    out.emplace_back(cur);
    std::size_t i = ranges.size();
    while (i > 0) {
      --i;
      if (cur[i] < ranges[i].second) {
        ++cur[i];
        break;
      }
      cur[i] = ranges[i].first;
      if (i == 0) return out;
    }
  }
}

const FunctionDef* Interpretation::find(const Symbol& s) const {
  if (auto it = functions.find(s); it != functions.end()) return &it->second;
  if (auto it = predicates.find(s); it != predicates.end()) return &it->second;
  return nullptr;
}

namespace {

const DomainDecl& source_domain(const Interpretation& interp, const Symbol& s) {
  return s == kIni ? interp.input : interp.main;
}

}  // namespace

Value apply_symbol(const Interpretation& interp, const Symbol& symbol, const Value& v) {
  const FunctionDef* def = interp.find(symbol);
  if (!def) throw Error(ErrorCode::UnknownSymbol, "no interpretation for '" + symbol + "'");
  if (v.arity() != source_domain(interp, symbol).arity)
    throw Error(ErrorCode::ArityMismatch, "'" + symbol + "' applied to " + to_string(v));
  return def->body.eval(v);
}

Value eval_fun(const Interpretation& interp, const Symbol& symbol, const Value& v) {
  Value out = apply_symbol(interp, symbol, v);
  bool ok;
  if (interp.is_predicate(symbol))
    ok = out == Value{0} || out == Value{1};
  else if (symbol == kFin)
    ok = interp.output.contains(out);
  else
    ok = interp.main.contains(out);
  if (!ok)
    throw Error(ErrorCode::DomainViolation, "'" + symbol + "' at " + to_string(v) + " yields " +
                                                to_string(out) + " outside its codomain");
  return out;
}

std::vector<Value> reachable_closure(const Alphabet& alphabet, const Interpretation& interp,
                                     std::size_t cap) {
  std::set<Value> seen;
  std::deque<Value> work;
  for (const auto& d : enumerate(interp.input, cap)) {
    Value v = apply_symbol(interp, kIni, d);
    if (seen.insert(v).second) work.push_back(std::move(v));
  }
  auto ops = alphabet.operations();
  while (!work.empty()) {
    Value d = std::move(work.front());
    work.pop_front();
    for (const auto& f : ops) {
      Value v = apply_symbol(interp, f, d);
      if (seen.insert(v).second) {
        if (seen.size() > cap)
          throw Error(ErrorCode::ExtentTooLarge, "reachable closure exceeds cap");
        work.push_back(std::move(v));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Report check_interpretation(const Alphabet& alphabet, const Interpretation& interp,
                            std::size_t cap) {
  Report r;
  r.append(interp.main.check());
  r.append(interp.input.check());
  r.append(interp.output.check());

  auto check_def = [&](const Symbol& s, const FunctionDef& def, std::size_t from, std::size_t to) {
    std::string why;
    auto n = def.body.result_arity(from, &why);
    if (!n)
      r.add("arity", s, why);
    else if (*n != to)
      r.add("arity", s, "result arity " + std::to_string(*n) + ", expected " + std::to_string(to));
  };
  for (const auto& f : alphabet.functions) {
    auto it = interp.functions.find(f);
    if (it == interp.functions.end()) {
      r.add("missing-symbol", f, "function symbol has no interpretation");
      continue;
    }
    if (f == kIni)
      check_def(f, it->second, interp.input.arity, interp.main.arity);
    else if (f == kFin)
      check_def(f, it->second, interp.main.arity, interp.output.arity);
    else
      check_def(f, it->second, interp.main.arity, interp.main.arity);
  }
  for (const auto& p : alphabet.predicates) {
    auto it = interp.predicates.find(p);
    if (it == interp.predicates.end())
      r.add("missing-symbol", p, "predicate has no interpretation");
    else
      check_def(p, it->second, interp.main.arity, 1);
  }
  for (const auto& [s, _] : interp.functions)
    if (!alphabet.is_function(s)) r.add("extra-symbol", s, "not a function symbol of the alphabet");
  for (const auto& [s, _] : interp.predicates)
    if (!alphabet.is_predicate(s)) r.add("extra-symbol", s, "not a predicate of the alphabet");
  if (!r.ok()) return r;

  auto inputs = enumerate(interp.input, cap);
  auto carrier = enumerate(interp.main, cap);
  if (interp.output.size() > cap)
    throw Error(ErrorCode::ExtentTooLarge, "domain 'output' exceeds cap");

  auto guarded = [&](const Symbol& s, const Value& d) {
    try {
      eval_fun(interp, s, d);
    } catch (const Error& e) {
      r.add(e.code() == ErrorCode::Overflow ? "overflow" : "domain-violation", to_string(d),
            e.what());
    }
  };
  for (const auto& d : inputs) guarded(kIni, d);
  for (const auto& d : carrier) {
    for (const auto& f : alphabet.functions)
      if (f != kIni) guarded(f, d);
    for (const auto& p : alphabet.predicates) guarded(p, d);
  }
  if (!r.ok()) return r;

  auto reach = reachable_closure(alphabet, interp, cap);
  std::size_t listed = 0, missing = 0;
  for (const auto& d : carrier) {
    if (std::binary_search(reach.begin(), reach.end(), d)) continue;
    ++missing;
    if (listed++ < 64) r.add("minimality", to_string(d), "value is not reachable from ini's image");
  }
  if (listed > 64)
    r.add("minimality", "", std::to_string(missing) + " unreachable values in total");
  return r;
}

}  // namespace protoalg
