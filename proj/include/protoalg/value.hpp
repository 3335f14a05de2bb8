#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace protoalg {

/// An element of one of the data carriers: a fixed-arity tuple of integers.
class Value {
 public:
  Value() = default;
  explicit Value(std::vector<std::int64_t> items) : items_(std::move(items)) {}
  Value(std::initializer_list<std::int64_t> items) : items_(items) {}

  std::size_t arity() const noexcept { return items_.size(); }
  std::int64_t operator[](std::size_t i) const { return items_[i]; }
  const std::vector<std::int64_t>& items() const noexcept { return items_; }

  friend auto operator<=>(const Value&, const Value&) = default;
  friend bool operator==(const Value&, const Value&) = default;

 private:
  std::vector<std::int64_t> items_;
};

/// Renders as `<a,b,...>`.
std::string to_string(const Value& v);

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v.items()) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace protoalg
