#pragma once

// Natural-number codings shared by every module: Cantor pairing, left-nested
// tuples and k-column joins.

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace efunc {

using Code = std::uint64_t;
using Stage = std::uint64_t;
using CodeSet = std::set<Code>;

/// (x+y)(x+y+1)/2 + y. Throws CodingError on 64-bit overflow.
Code cantor_pair(Code x, Code y);
std::pair<Code, Code> cantor_unpair(Code z);

/// Arity 1 is the identity; arity k pairs the code of the first k-1 entries
/// with the last one.
Code tuple_encode(std::span<const Code> xs, std::size_t arity);
std::vector<Code> tuple_decode(Code c, std::size_t arity);

/// The even/odd partner of an atomic-diagram code (R(u) <-> not R(u)).
constexpr Code dual(Code c) noexcept { return c ^ Code{1}; }

/// {k*c + j : c in parts[j]} with k = parts.size() >= 2.
CodeSet join(std::span<const CodeSet> parts);
CodeSet join3(const CodeSet& a, const CodeSet& b, const CodeSet& c);
/// Column j of a k-column join, decoded back to the inner codes.
CodeSet project(const CodeSet& joined, std::size_t column, std::size_t k);

inline Code join_code(Code inner, std::size_t column, std::size_t k) {
  return static_cast<Code>(k) * inner + column;
}

}  // namespace efunc
