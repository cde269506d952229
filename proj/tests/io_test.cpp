#include <gtest/gtest.h>

#include <json.hpp>

#include "sequitur/sequitur.hpp"
#include "sequitur/testkit.hpp"
#include "test_util.hpp"

namespace sequitur {
namespace {

using test::build;

std::vector<std::string> token_strings(const Tokenized& t) {
  std::vector<std::string> out;
  for (const TokenId id : t.tokens) out.push_back(t.table.token(id));
  return out;
}

TEST(Tokenize, ByteMode) {
  const Tokenized t = tokenize("abca", TokenMode::byte);
  EXPECT_EQ(t.tokens, (std::vector<TokenId>{0, 1, 2, 0}));
  EXPECT_EQ(t.table.size(), 3u);
  const Tokenized raw = tokenize(std::string("\xff\x00\xff", 3), TokenMode::byte);
  EXPECT_EQ(raw.tokens, (std::vector<TokenId>{0, 1, 0}));
}

TEST(Tokenize, CharacterMode) {
  const Tokenized t = tokenize("h\xc3\xa9h\xe2\x82\xac", TokenMode::character);
  EXPECT_EQ(token_strings(t), (std::vector<std::string>{"h", "\xc3\xa9", "h", "\xe2\x82\xac"}));
}

TEST(Tokenize, WordMode) {
  const Tokenized t = tokenize("the  cat\tthe", TokenMode::word);
  EXPECT_EQ(token_strings(t), (std::vector<std::string>{"the", "  ", "cat", "\t", "the"}));
  EXPECT_EQ(t.tokens[0], t.tokens[4]);
}

TEST(Tokenize, LineMode) {
  EXPECT_EQ(token_strings(tokenize("a\nb\na", TokenMode::line)), (std::vector<std::string>{"a", "b", "a"}));
  EXPECT_EQ(token_strings(tokenize("a\n\nb\n", TokenMode::line)), (std::vector<std::string>{"a", "", "b", ""}));
  EXPECT_TRUE(tokenize("", TokenMode::line).tokens.empty());
}

TEST(Tokenize, RoundTripsInEveryMode) {
  const std::string text = "one two\n\ntwo  one\n\xc3\xa9t\xc3\xa9\n";
  for (const TokenMode m : {TokenMode::byte, TokenMode::character, TokenMode::word, TokenMode::line}) {
    const Tokenized t = tokenize(text, m);
    EXPECT_EQ(detokenize(t.tokens, t.table), text) << to_string(m);
  }
}

TEST(Tokenize, InvalidUtf8ReportsOffset) {
  const auto offset_of = [](std::string_view s) -> std::size_t {
    try {
      tokenize(s, TokenMode::character);
    } catch (const encoding_error& e) {
      return e.offset();
    }
    return std::string_view::npos;
  };
  EXPECT_EQ(offset_of("ab\xff" "c"), 2u);
  EXPECT_EQ(offset_of("\xc0\xaf"), 0u);         // overlong
  EXPECT_EQ(offset_of("x\xed\xa0\x80"), 1u);    // surrogate
  EXPECT_EQ(offset_of("xy\xe2\x82"), 2u);       // truncated
  EXPECT_EQ(offset_of("ok"), std::string_view::npos);
  EXPECT_THROW(tokenize("\xff", TokenMode::word), encoding_error);
  EXPECT_THROW(tokenize("\xff", TokenMode::line), encoding_error);
  EXPECT_NO_THROW(tokenize("\xff", TokenMode::byte));
}

TEST(Tokenize, ModeNames) {
  EXPECT_EQ(parse_token_mode("char"), TokenMode::character);
  EXPECT_EQ(parse_token_mode("line"), TokenMode::line);
  EXPECT_FALSE(parse_token_mode("bytes"));
  EXPECT_EQ(parse_token_mode(to_string(TokenMode::word)), TokenMode::word);
}

TEST(TokenTable, InternsInOrderOfAppearance) {
  TokenTable t;
  EXPECT_EQ(t.intern("x"), 0u);
  EXPECT_EQ(t.intern("y"), 1u);
  EXPECT_EQ(t.intern("x"), 0u);
  EXPECT_EQ(t.find("y"), 1u);
  EXPECT_FALSE(t.find("z"));
  EXPECT_THROW(t.token(5), not_found_error);
}

TEST(TextFormat, Golden) {
  const auto b = build("abcdbcabcd");
  EXPECT_EQ(emit_text(b.grammar, b.table), "R0 -> R2 R1 R2\nR1 -> b c\nR2 -> a R1 d\n");
  EXPECT_EQ(emit_text(b.grammar, b.table, {.counters = true}),
            "R0 -> R2 R1 R2\nR1 -> b c\nR2 -> a R1 d\n"
            "# counters: a1=10 a2=14 a3=1 a4=3 a5=1 n=10 o=8 r=2 depth=3\n");
}

TEST(TextFormat, QuotesAwkwardTerminals) {
  EXPECT_EQ(quote_terminal("a"), "a");
  EXPECT_EQ(quote_terminal(" "), "\" \"");
  EXPECT_EQ(quote_terminal("\n"), "\"\\n\"");
  EXPECT_EQ(quote_terminal("\""), "\"\\\"\"");
  EXPECT_EQ(quote_terminal("\\"), "\"\\\\\"");
  EXPECT_EQ(quote_terminal("R1"), "\"R1\"");
  EXPECT_EQ(quote_terminal("->"), "\"->\"");
  EXPECT_EQ(quote_terminal(""), "\"\"");
  EXPECT_EQ(quote_terminal("\xff"), "\"\\xff\"");
  EXPECT_EQ(quote_terminal("Rx"), "Rx");
}

TEST(TextFormat, RoundTripKeepsStructure) {
  const std::vector<std::pair<std::string, TokenMode>> cases = {
      {"abcdbcabcdbc", TokenMode::byte},
      {"a \"b\" \\ R1 -> \n\t\x01\xff a \"b\"", TokenMode::byte},
      {"R1 R2 -> R1 R2 -> x", TokenMode::word},
      {"x\ny\n\nx\ny\n", TokenMode::line},
  };
  for (const auto& [input, mode] : cases) {
    const auto r = infer_text(input, mode);
    const std::string text = emit_text(r.grammar, r.table);
    const ParsedGrammar p = parse_text(text);
    EXPECT_EQ(structure(p.grammar, p.table), structure(r.grammar, r.table)) << text;
    EXPECT_EQ(emit_text(p.grammar, p.table), text);
    EXPECT_EQ(detokenize(expand(p.grammar), p.table), input);
    EXPECT_TRUE(verify_constraints(p.grammar).all_ok());
  }
}

TEST(TextFormat, LineModeHeader) {
  const auto r = infer_text("a\nb\na\nb\n", TokenMode::line);
  const std::string text = emit_text(r.grammar, r.table);
  EXPECT_EQ(text.substr(0, 15), "# tokens: line\n");
  EXPECT_EQ(parse_text(text).table.mode(), TokenMode::line);
}

TEST(TextFormat, ParseIgnoresCommentsAndBlankLines) {
  const ParsedGrammar p = parse_text("# hello\n\nR0 -> R1 R1\n# more\nR1 -> a b\n");
  EXPECT_EQ(detokenize(expand(p.grammar), p.table), "abab");
  EXPECT_EQ(parse_text("R0 ->\n").grammar.symbol_count(), 0u);
}

TEST(TextFormat, ParseErrors) {
  const auto where = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_text(text);
    } catch (const parse_error& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(where("X -> a\n"), std::make_pair(std::size_t{1}, std::size_t{1}));
  EXPECT_EQ(where("R0 -> a\nR1 = b\n"), std::make_pair(std::size_t{2}, std::size_t{3}));
  EXPECT_EQ(where("R0 -> \"ab\n"), std::make_pair(std::size_t{1}, std::size_t{7}));
  EXPECT_EQ(where("R0 -> \"\\q\"\n").first, 1u);
  EXPECT_EQ(where("R0 -> a\nR0 -> b\n").first, 2u);
  EXPECT_EQ(where("R0 ->  a\n").first, 1u);
  EXPECT_EQ(where("# tokens: lines\nR0 -> a\n").first, 1u);
}

TEST(TextFormat, ResolutionErrors) {
  EXPECT_THROW(parse_text("R0 -> R5\n"), resolution_error);
  EXPECT_THROW(parse_text("R1 -> a b\n"), resolution_error);
  EXPECT_THROW(parse_text("R0 -> R1 R1\nR1 -> R0 a\n"), resolution_error);
  EXPECT_THROW(parse_text(""), resolution_error);
}

TEST(Json, ShapeAndContent) {
  const auto b = build("abcdbc");
  const std::string out = emit_json(b.grammar, b.table, {.counters = true, .tokens = true});
  EXPECT_EQ(out.back(), '\n');
  const auto j = nlohmann::json::parse(out);
  const auto expected = nlohmann::json::parse(R"({
    "rules": [
      {"id": 0, "rhs": [{"t": "a"}, {"r": 1}, {"t": "d"}, {"r": 1}]},
      {"id": 1, "rhs": [{"t": "b"}, {"t": "c"}]}
    ],
    "counters": {"a1": 6, "a2": 7, "a3": 0, "a4": 1, "a5": 0, "n": 6, "o": 6, "r": 1, "depth": 2},
    "tokens": ["a", "b", "c", "d"]
  })");
  EXPECT_EQ(j, expected);
  EXPECT_FALSE(nlohmann::json::parse(emit_json(b.grammar, b.table)).contains("counters"));
}

TEST(Json, NonUtf8BytesStayRepresentable) {
  const auto r = infer_text(std::string("\xff\xfe\xff\xfe", 4));
  const auto j = nlohmann::json::parse(emit_json(r.grammar, r.table, {.tokens = true}));
  EXPECT_EQ(j["tokens"][0], "\xc3\xbf");
  EXPECT_EQ(j["tokens"][1], "\xc3\xbe");
}

TEST(Bracket, Golden) {
  const auto b = build("abcdbc");
  EXPECT_EQ(emit_bracket(b.grammar, b.table), "[a[bc]d[bc]]\n");
  EXPECT_EQ(emit_bracket(b.grammar, b.table, 1), "[abcdbc]\n");
  const auto c = build("abcdbcabcdbc");
  EXPECT_EQ(emit_bracket(c.grammar, c.table), "[[a[bc]d[bc]][a[bc]d[bc]]]\n");
  EXPECT_EQ(emit_bracket(c.grammar, c.table, 2), "[[abcdbc][abcdbc]]\n");
}

TEST(Bracket, SpacesShownAsBullets) {
  const auto b = build("a b");
  EXPECT_EQ(emit_bracket(b.grammar, b.table), "[a\xe2\x80\xa2" "b]\n");
}

TEST(Dot, Golden) {
  const auto b = build("abcdbc");
  EXPECT_EQ(emit_dot(b.grammar, b.table),
            "digraph grammar {\n"
            "  R0 [label=\"R0 -> a R1 d R1\"];\n"
            "  R1 [label=\"R1 -> b c\"];\n"
            "  R0 -> R1;\n"
            "  R0 -> R1;\n"
            "}\n");
}

TEST(Labels, AreDenseAfterDeletions) {
  const auto b = build("abcdbcabcd");
  EXPECT_FALSE(b.grammar.has_rule(RuleId{2}));
  const auto labels = dense_labels(b.grammar);
  EXPECT_EQ(labels.at(RuleId{3}), 2u);
}

}  // namespace
}  // namespace sequitur
