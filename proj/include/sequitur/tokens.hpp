#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sequitur/errors.hpp"
#include "sequitur/symbol.hpp"

namespace sequitur {

enum class TokenMode { byte, character, word, line };

inline std::string_view to_string(TokenMode m) {
  switch (m) {
    case TokenMode::byte: return "byte";
    case TokenMode::character: return "char";
    case TokenMode::word: return "word";
    case TokenMode::line: return "line";
  }
  return "byte";
}

inline std::optional<TokenMode> parse_token_mode(std::string_view s) {
  if (s == "byte") return TokenMode::byte;
  if (s == "char") return TokenMode::character;
  if (s == "word") return TokenMode::word;
  if (s == "line") return TokenMode::line;
  return std::nullopt;
}

/// Bijection between token strings and dense ids, assigned in order of
/// first appearance.
class TokenTable {
 public:
  explicit TokenTable(TokenMode mode = TokenMode::byte) : mode_(mode) {}

  TokenId intern(std::string_view token) {
    auto [it, fresh] = forward_.try_emplace(std::string(token), reverse_.size());
    if (fresh) reverse_.push_back(it->first);
    return it->second;
  }

  std::optional<TokenId> find(std::string_view token) const {
    const auto it = forward_.find(std::string(token));
    if (it == forward_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& token(TokenId id) const {
    if (id >= reverse_.size()) throw not_found_error("unknown token id " + std::to_string(id));
    return reverse_[id];
  }

  std::size_t size() const noexcept { return reverse_.size(); }
  TokenMode mode() const noexcept { return mode_; }
  void set_mode(TokenMode m) noexcept { mode_ = m; }
  const std::vector<std::string>& tokens() const noexcept { return reverse_; }

 private:
  TokenMode mode_;
  std::unordered_map<std::string, TokenId> forward_;
  std::vector<std::string> reverse_;
};

struct Tokenized {
  std::vector<TokenId> tokens;
  TokenTable table;
};

namespace detail {

/// Length of the well-formed UTF-8 sequence starting at `i`, or 0.
inline std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char b0 = byte(i);
  if (b0 < 0x80) return 1;
  std::size_t len;
  std::uint32_t cp;
  if (b0 >= 0xc2 && b0 <= 0xdf) {
    len = 2;
    cp = b0 & 0x1f;
  } else if (b0 >= 0xe0 && b0 <= 0xef) {
    len = 3;
    cp = b0 & 0x0f;
  } else if (b0 >= 0xf0 && b0 <= 0xf4) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = byte(i + k);
    if ((b & 0xc0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3f);
  }
  if ((len == 3 && cp < 0x800) || (len == 4 && (cp < 0x10000 || cp > 0x10ffff))) return 0;
  if (cp >= 0xd800 && cp <= 0xdfff) return 0;
  return len;
}

inline void require_utf8(std::string_view s) {
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = utf8_sequence_length(s, i);
    if (n == 0) throw encoding_error("invalid UTF-8", i);
    i += n;
  }
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace detail

inline bool is_valid_utf8(std::string_view s) {
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = detail::utf8_sequence_length(s, i);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

/// Splits raw input into tokens.
///   byte: every byte.
///   char: every UTF-8 scalar value.
///   word: maximal runs of non-whitespace and maximal runs of whitespace.
///   line: the segments between '\n' separators (a trailing '\n' yields a
///         final empty segment, so joining with '\n' restores the input).
inline Tokenized tokenize(std::string_view bytes, TokenMode mode) {
  Tokenized out{{}, TokenTable(mode)};
  if (mode != TokenMode::byte) detail::require_utf8(bytes);
  switch (mode) {
    case TokenMode::byte:
      for (const char c : bytes) out.tokens.push_back(out.table.intern(std::string_view(&c, 1)));
      break;
    case TokenMode::character:
      for (std::size_t i = 0; i < bytes.size();) {
        const std::size_t n = detail::utf8_sequence_length(bytes, i);
        out.tokens.push_back(out.table.intern(bytes.substr(i, n)));
        i += n;
      }
      break;
    case TokenMode::word:
      for (std::size_t i = 0; i < bytes.size();) {
        const bool space = detail::is_ascii_space(bytes[i]);
        std::size_t j = i + 1;
        while (j < bytes.size() && detail::is_ascii_space(bytes[j]) == space) ++j;
        out.tokens.push_back(out.table.intern(bytes.substr(i, j - i)));
        i = j;
      }
      break;
    case TokenMode::line:
      if (bytes.empty()) break;
      for (std::size_t i = 0;;) {
        const std::size_t nl = bytes.find('\n', i);
        out.tokens.push_back(out.table.intern(bytes.substr(i, nl == std::string_view::npos ? nl : nl - i)));
        if (nl == std::string_view::npos) break;
        i = nl + 1;
      }
      break;
  }
  return out;
}

/// Inverse of tokenize for the table's mode.
inline std::string detokenize(std::span<const TokenId> tokens, const TokenTable& table) {
  std::string out;
  bool first = true;
  for (const TokenId t : tokens) {
    if (table.mode() == TokenMode::line && !first) out.push_back('\n');
    out += table.token(t);
    first = false;
  }
  return out;
}

}  // namespace sequitur
