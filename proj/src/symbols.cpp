#include "lvsm/symbols.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace lvsm {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, SymId> ids;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

SymId intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  std::string key(name);
  if (auto it = t.ids.find(key); it != t.ids.end()) return it->second;
  auto id = static_cast<SymId>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(std::move(key), id);
  return id;
}

const std::string& symbol_name(SymId id) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  if (id >= t.names.size()) throw std::out_of_range("unknown symbol id");
  // deque never relocates existing elements on push_back
  return t.names[id];
}

bool is_interned(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return t.ids.count(std::string(name)) != 0;
}

SymId prime(SymId id) { return intern(symbol_name(id) + "'"); }

int prime_count(SymId id) {
  const auto& n = symbol_name(id);
  int k = 0;
  for (auto it = n.rbegin(); it != n.rend() && *it == '\''; ++it) ++k;
  return k;
}

SymId unprimed(SymId id) {
  const auto& n = symbol_name(id);
  auto k = static_cast<std::size_t>(prime_count(id));
  if (k == 0) return id;
  return intern(n.substr(0, n.size() - k));
}

std::vector<SymId> intern_all(const std::vector<std::string>& names) {
  std::vector<SymId> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(intern(n));
  return out;
}

}  // namespace lvsm
