#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace protoalg::fixtures {

/// Fixture sources keyed by path relative to the fixtures directory.
const std::map<std::string, std::string>& all();

inline const std::string& get(const std::string& name) {
  auto it = all().find(name);
  if (it == all().end()) throw std::out_of_range("no fixture " + name);
  return it->second;
}

}  // namespace protoalg::fixtures
