#pragma once

// Line-oriented grammar format:
//
//   R0 -> a R1 d R1
//   R1 -> b c
//
// Rules are relabeled densely in creation order. Terminals print bare when
// unambiguous, otherwise quoted with \n \t \\ \" and \xNN escapes. Lines
// starting with '#' are comments; "# tokens: line" marks line-mode tokens
// and "# counters: ..." carries the action tallies.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sequitur/analysis.hpp"
#include "sequitur/errors.hpp"
#include "sequitur/grammar.hpp"
#include "sequitur/tokens.hpp"

namespace sequitur {

/// Live rule ids mapped to dense labels 0..k in creation order.
template <class H>
std::unordered_map<RuleId, std::size_t> dense_labels(const BasicGrammar<H>& g) {
  std::unordered_map<RuleId, std::size_t> labels;
  for (const RuleId id : g.rule_ids()) labels.emplace(id, labels.size());
  return labels;
}

namespace detail {

inline bool looks_like_label(std::string_view s) {
  return s.size() >= 2 && s[0] == 'R' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline bool prints_bare(std::string_view tok) {
  if (tok.empty() || tok == "->" || looks_like_label(tok)) return false;
  return std::all_of(tok.begin(), tok.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7f && c != '"' && c != '\\';
  });
}

}  // namespace detail

inline std::string quote_terminal(std::string_view tok) {
  if (detail::prints_bare(tok)) return std::string(tok);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "\"";
  for (const char c : tok) {
    const auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default:
        if (u < 0x20 || u >= 0x7f) {
          out += "\\x";
          out += hex[u >> 4];
          out += hex[u & 0xf];
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

/// rhs of one rule rendered as space-separated items.
template <class H>
std::string render_rhs(const BasicGrammar<H>& g, RuleId id, const TokenTable& table,
                       const std::unordered_map<RuleId, std::size_t>& labels) {
  std::string out;
  for (const SymbolValue v : g.rhs_values(id)) {
    if (!out.empty()) out += ' ';
    if (v.is_terminal())
      out += quote_terminal(table.token(v.token()));
    else
      out += "R" + std::to_string(labels.at(v.rule()));
  }
  return out;
}

template <class H>
std::string counters_line(const BasicGrammar<H>& g) {
  const GrammarStats s = stats(g);
  const ActionCounters& c = s.counters;
  return "a1=" + std::to_string(c.a1) + " a2=" + std::to_string(c.a2) + " a3=" + std::to_string(c.a3) +
         " a4=" + std::to_string(c.a4) + " a5=" + std::to_string(c.a5) + " n=" + std::to_string(s.n) +
         " o=" + std::to_string(s.o) + " r=" + std::to_string(s.r) + " depth=" + std::to_string(s.depth);
}

struct TextOptions {
  bool counters = false;
};

template <class H>
std::string emit_text(const BasicGrammar<H>& g, const TokenTable& table, TextOptions opts = {}) {
  const auto labels = dense_labels(g);
  std::string out;
  if (table.mode() == TokenMode::line) out += "# tokens: line\n";
  for (const RuleId id : g.rule_ids()) {
    out += "R" + std::to_string(labels.at(id)) + " ->";
    const std::string rhs = render_rhs(g, id, table, labels);
    if (!rhs.empty()) out += " " + rhs;
    out += '\n';
  }
  if (opts.counters) out += "# counters: " + counters_line(g) + "\n";
  return out;
}

struct ParsedGrammar {
  Grammar grammar;
  TokenTable table;
};

namespace detail {

struct RhsItem {
  bool is_rule;
  std::uint64_t label;  // when is_rule
  std::string token;    // otherwise
  std::size_t column;
};

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

inline std::uint64_t parse_label(std::string_view s, std::size_t line, std::size_t column) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data() + 1, s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw parse_error("bad rule label '" + std::string(s) + "'", line, column);
  return v;
}

}  // namespace detail

/// Rebuilds a grammar from emit_text output. Reference counts are recomputed
/// and the digram index is rebuilt; neither constraint is enforced.
inline ParsedGrammar parse_text(std::string_view text) {
  std::map<std::uint64_t, std::vector<detail::RhsItem>> defs;
  TokenMode mode = TokenMode::byte;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view tag = "# tokens: ";
      if (line.substr(0, tag.size()) == tag) {
        const auto m = parse_token_mode(line.substr(tag.size()));
        if (!m) throw parse_error("unknown token mode", line_no, tag.size() + 1);
        mode = *m;
      }
      continue;
    }

    std::size_t i = 0;
    while (i < line.size() && line[i] != ' ') ++i;
    const std::string_view head = line.substr(0, i);
    if (!detail::looks_like_label(head)) throw parse_error("expected rule label", line_no, 1);
    const std::uint64_t label = detail::parse_label(head, line_no, 1);
    if (line.substr(i, 3) != " ->") throw parse_error("expected ' ->'", line_no, i + 1);
    i += 3;

    std::vector<detail::RhsItem> items;
    while (i < line.size()) {
      if (line[i] != ' ') throw parse_error("expected space between items", line_no, i + 1);
      ++i;
      if (i >= line.size()) throw parse_error("trailing space", line_no, i);
      const std::size_t col = i + 1;
      if (line[i] == '"') {
        std::string tok;
        ++i;
        for (;;) {
          if (i >= line.size()) throw parse_error("unterminated quoted terminal", line_no, col);
          const char c = line[i];
          if (c == '"') {
            ++i;
            break;
          }
          if (c != '\\') {
            tok += c;
            ++i;
            continue;
          }
          if (i + 1 >= line.size()) throw parse_error("dangling escape", line_no, i + 1);
          const char e = line[i + 1];
          if (e == 'n') tok += '\n';
          else if (e == 't') tok += '\t';
          else if (e == '\\') tok += '\\';
          else if (e == '"') tok += '"';
          else if (e == 'x') {
            const int hi = i + 2 < line.size() ? detail::hex_digit(line[i + 2]) : -1;
            const int lo = i + 3 < line.size() ? detail::hex_digit(line[i + 3]) : -1;
            if (hi < 0 || lo < 0) throw parse_error("bad \\x escape", line_no, i + 1);
            tok += static_cast<char>(hi * 16 + lo);
            i += 2;
          } else {
            throw parse_error(std::string("unknown escape \\") + e, line_no, i + 1);
          }
          i += 2;
        }
        if (i < line.size() && line[i] != ' ')
          throw parse_error("junk after quoted terminal", line_no, i + 1);
        items.push_back({false, 0, std::move(tok), col});
      } else {
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        const std::string_view word = line.substr(i, j - i);
        if (word.empty()) throw parse_error("empty item", line_no, col);
        if (detail::looks_like_label(word))
          items.push_back({true, detail::parse_label(word, line_no, col), {}, col});
        else
          items.push_back({false, 0, std::string(word), col});
        i = j;
      }
    }
    if (!defs.emplace(label, std::move(items)).second)
      throw parse_error("rule R" + std::to_string(label) + " defined twice", line_no, 1);
  }

  if (!defs.contains(0)) throw resolution_error("grammar has no start rule R0");
  ParsedGrammar out{Grammar{}, TokenTable(mode)};
  Grammar& g = out.grammar;
  std::unordered_map<std::uint64_t, RuleId> ids;
  for (const auto& [label, items] : defs) ids.emplace(label, label == 0 ? g.start() : g.add_rule());
  for (const auto& [label, items] : defs) {
    const RuleId id = ids.at(label);
    NodeHandle at = g.guard(id);
    for (const auto& item : items) {
      SymbolValue v;
      if (item.is_rule) {
        const auto it = ids.find(item.label);
        if (it == ids.end())
          throw resolution_error("R" + std::to_string(label) + " refers to undefined R" + std::to_string(item.label));
        if (it->second == g.start()) throw resolution_error("R0 cannot be referenced");
        v = SymbolValue::nonterminal(it->second);
      } else {
        v = SymbolValue::terminal(out.table.intern(item.token));
      }
      at = g.insert_after(at, v);
    }
  }
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    for (NodeHandle h = g.next(guard); h != guard && g.next(h) != guard; h = g.next(h))
      g.index().insert_or_match(Digram{g.value(h), g.value(g.next(h))}, h);
  }
  return out;
}

/// Grammar shape independent of internal ids and token numbering: each rule
/// (dense order) as a list of "t:<token>" / "r:<label>" items.
template <class H>
std::vector<std::vector<std::string>> structure(const BasicGrammar<H>& g, const TokenTable& table) {
  const auto labels = dense_labels(g);
  std::vector<std::vector<std::string>> out;
  for (const RuleId id : g.rule_ids()) {
    auto& rule = out.emplace_back();
    for (const SymbolValue v : g.rhs_values(id))
      rule.push_back(v.is_terminal() ? "t:" + table.token(v.token()) : "r:" + std::to_string(labels.at(v.rule())));
  }
  return out;
}

}  // namespace sequitur
