#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sequitur/analysis.hpp"
#include "sequitur/grammar.hpp"
#include "sequitur/text_format.hpp"
#include "sequitur/tokens.hpp"

namespace sequitur {

struct JsonOptions {
  bool counters = false;
  bool tokens = false;
};

namespace detail {

/// JSON strings must be UTF-8; bytes that are not are carried as the
/// code points U+0000..U+00FF.
inline std::string json_safe(std::string_view s) {
  if (is_valid_utf8(s)) return std::string(s);
  std::string out;
  for (const char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) {
      out += c;
    } else {
      out += static_cast<char>(0xc0 | (u >> 6));
      out += static_cast<char>(0x80 | (u & 0x3f));
    }
  }
  return out;
}

}  // namespace detail

template <class H>
std::string emit_json(const BasicGrammar<H>& g, const TokenTable& table, JsonOptions opts = {}) {
  using nlohmann::ordered_json;
  const auto labels = dense_labels(g);
  ordered_json doc;
  ordered_json rules = ordered_json::array();
  for (const RuleId id : g.rule_ids()) {
    ordered_json rhs = ordered_json::array();
    for (const SymbolValue v : g.rhs_values(id)) {
      if (v.is_terminal())
        rhs.push_back({{"t", detail::json_safe(table.token(v.token()))}});
      else
        rhs.push_back({{"r", labels.at(v.rule())}});
    }
    rules.push_back({{"id", labels.at(id)}, {"rhs", std::move(rhs)}});
  }
  doc["rules"] = std::move(rules);
  if (opts.counters) {
    const GrammarStats s = stats(g);
    doc["counters"] = {{"a1", s.counters.a1}, {"a2", s.counters.a2}, {"a3", s.counters.a3},
                       {"a4", s.counters.a4}, {"a5", s.counters.a5}, {"n", s.n},
                       {"o", s.o},            {"r", s.r},            {"depth", s.depth}};
  }
  if (opts.tokens) {
    ordered_json toks = ordered_json::array();
    for (const auto& t : table.tokens()) toks.push_back(detail::json_safe(t));
    doc["tokens"] = std::move(toks);
  }
  return doc.dump(2) + "\n";
}

/// The expansion with every rule body wrapped in brackets, S outermost.
/// Rules nested deeper than `max_depth` (0 = no limit) are shown flat.
/// Spaces are drawn as bullets.
template <class H>
std::string emit_bracket(const BasicGrammar<H>& g, const TokenTable& table, std::size_t max_depth = 0) {
  std::string out;
  std::size_t level = 0;
  const auto shown = [&] { return max_depth == 0 || level <= max_depth; };
  detail::walk(
      g,
      [&](TokenId t) {
        for (const char c : table.token(t)) {
          if (c == ' ')
            out += "\xe2\x80\xa2";
          else
            out += c;
        }
      },
      [&](RuleId) {
        ++level;
        if (shown()) out += '[';
      },
      [&](RuleId) {
        if (shown()) out += ']';
        --level;
      });
  out += '\n';
  return out;
}

/// Graphviz digraph: one node per rule labeled with its rhs, one edge per
/// nonterminal occurrence.
template <class H>
std::string emit_dot(const BasicGrammar<H>& g, const TokenTable& table) {
  const auto labels = dense_labels(g);
  const auto escape = [](std::string_view s) {
    std::string out;
    for (const char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::string nodes;
  std::string edges;
  for (const RuleId id : g.rule_ids()) {
    const std::string name = "R" + std::to_string(labels.at(id));
    const std::string rhs = render_rhs(g, id, table, labels);
    nodes += "  " + name + " [label=\"" + name + " ->" + (rhs.empty() ? "" : " " + escape(rhs)) + "\"];\n";
    for (const SymbolValue v : g.rhs_values(id))
      if (v.is_nonterminal()) edges += "  " + name + " -> R" + std::to_string(labels.at(v.rule())) + ";\n";
  }
  return "digraph grammar {\n" + nodes + edges + "}\n";
}

}  // namespace sequitur
