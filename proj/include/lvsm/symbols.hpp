#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lvsm {

using SymId = std::uint32_t;

// Process-wide interning of symbol names. Ids are stable for the lifetime of
// the process; ordering of ids is an implementation detail and never leaks
// into printed output.
SymId intern(std::string_view name);
const std::string& symbol_name(SymId id);
bool is_interned(std::string_view name);

// Formal differential indeterminates: "a0" has derivative "a0'" and so on.
// The prime count is part of the symbol identity.
SymId prime(SymId id);
int prime_count(SymId id);
SymId unprimed(SymId id);

std::vector<SymId> intern_all(const std::vector<std::string>& names);

}  // namespace lvsm
