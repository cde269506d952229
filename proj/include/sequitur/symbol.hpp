#pragma once

#include <compare>
#include <cstdint>
#include <functional>

#include "sequitur/errors.hpp"

namespace sequitur {

/// Opaque terminal id handed out by a token table.
using TokenId = std::uint64_t;

/// Rule identifier. Assigned monotonically and never reused; id 0 is rule S.
struct RuleId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(RuleId, RuleId) = default;
};

inline constexpr RuleId start_rule{0};

/// Index of a node slot inside a grammar's node arena.
struct NodeHandle {
  static constexpr std::uint32_t invalid_value = ~std::uint32_t{0};

  std::uint32_t value = invalid_value;

  constexpr bool valid() const noexcept { return value != invalid_value; }
  friend constexpr auto operator<=>(NodeHandle, NodeHandle) = default;
};

enum class SymbolKind : std::uint8_t { terminal = 0, nonterminal = 1 };

/// A terminal token or a reference to a rule, packed into one word so that
/// digram keys stay two words wide.
class SymbolValue {
 public:
  static constexpr std::uint64_t max_payload = (std::uint64_t{1} << 63) - 1;

  constexpr SymbolValue() = default;

  static constexpr SymbolValue terminal(TokenId token) {
    if (token > max_payload) throw parameter_error("token id exceeds 63 bits");
    return SymbolValue(token << 1);
  }

  static constexpr SymbolValue nonterminal(RuleId rule) {
    if (rule.value > max_payload) throw parameter_error("rule id exceeds 63 bits");
    return SymbolValue((rule.value << 1) | 1u);
  }

  static constexpr SymbolValue from_bits(std::uint64_t bits) { return SymbolValue(bits); }

  constexpr SymbolKind kind() const noexcept {
    return (bits_ & 1u) ? SymbolKind::nonterminal : SymbolKind::terminal;
  }
  constexpr bool is_terminal() const noexcept { return kind() == SymbolKind::terminal; }
  constexpr bool is_nonterminal() const noexcept { return kind() == SymbolKind::nonterminal; }

  constexpr TokenId token() const noexcept { return bits_ >> 1; }
  constexpr RuleId rule() const noexcept { return RuleId{bits_ >> 1}; }
  constexpr std::uint64_t bits() const noexcept { return bits_; }

  friend constexpr auto operator<=>(SymbolValue, SymbolValue) = default;

 private:
  constexpr explicit SymbolValue(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

/// Ordered pair of adjacent symbol values.
struct Digram {
  SymbolValue left;
  SymbolValue right;

  friend constexpr auto operator<=>(const Digram&, const Digram&) = default;
};

}  // namespace sequitur

template <>
struct std::hash<sequitur::RuleId> {
  std::size_t operator()(sequitur::RuleId r) const noexcept {
    return std::hash<std::uint64_t>{}(r.value);
  }
};

template <>
struct std::hash<sequitur::NodeHandle> {
  std::size_t operator()(sequitur::NodeHandle h) const noexcept {
    return std::hash<std::uint32_t>{}(h.value);
  }
};
