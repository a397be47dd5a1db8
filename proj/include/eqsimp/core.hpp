#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string_view>

namespace eqsimp {

/// Identifier of a set of structures. Value 0 is reserved for the null id.
struct Id {
  std::uint32_t value = 0;

  constexpr bool is_null() const { return value == 0; }
  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

inline constexpr Id kNullId{0};

inline std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value; }

using SymbolId = std::uint32_t;

/// `symbol(left, right)`; unused child slots hold kNullId.
struct Key {
  SymbolId symbol = 0;
  Id left;
  Id right;

  friend constexpr bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = (std::uint64_t{k.left.value} << 32) | k.right.value;
    h ^= std::uint64_t{k.symbol} * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

/// One record `key:id`, stamped with the clock tick of its creation.
struct Structure {
  Key key;
  Id id;
  std::uint64_t created_at = 0;
};

/// Binding of the axiom variables x, y, z (slots 0, 1, 2) to identifiers.
struct Valuation {
  std::array<Id, 3> ids{};
  std::uint8_t arity = 0;

  static constexpr Valuation of(Id x) { return Valuation{{x, kNullId, kNullId}, 1}; }
  static constexpr Valuation of(Id x, Id y) { return Valuation{{x, y, kNullId}, 2}; }
  static constexpr Valuation of(Id x, Id y, Id z) { return Valuation{{x, y, z}, 3}; }

  Id operator[](std::size_t slot) const { return ids[slot]; }
  bool binds(std::string_view var) const { return slot_of(var) < arity; }
  Id at(std::string_view var) const { return ids[slot_of(var)]; }

  /// x -> 0, y -> 1, z -> 2; anything else -> 3.
  static constexpr std::size_t slot_of(std::string_view var) {
    if (var == "x") return 0;
    if (var == "y") return 1;
    if (var == "z") return 2;
    return 3;
  }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
};

struct ValuationHash {
  std::size_t operator()(const Valuation& v) const noexcept {
    std::uint64_t h = v.arity;
    for (Id id : v.ids) h = h * 0x100000001B3ULL ^ id.value;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

}  // namespace eqsimp
