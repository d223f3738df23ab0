#include "fibcalc/caps.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

namespace fibcalc {

std::optional<Caps> Caps::parse(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty()) return std::nullopt;
    for (char ch : item)
      if (ch < '0' || ch > '9') return std::nullopt;
    parts.push_back(std::stoull(item));
  }
  if (parts.empty() || parts.size() > 3) return std::nullopt;
  Caps caps;
  caps.max_objects = parts[0];
  if (parts.size() > 1) caps.max_morphisms = parts[1];
  if (parts.size() > 2) caps.max_grid = parts[2];
  if (caps.max_objects == 0 || caps.max_morphisms == 0) return std::nullopt;
  return caps;
}

Caps Caps::from_environment() {
  const char* raw = std::getenv("FIBCALC_CAPS");
  if (!raw) return Caps{};
  if (auto parsed = parse(raw)) return *parsed;
  return Caps{};
}

}  // namespace fibcalc
