#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "sequitur/sequitur.hpp"
#include "sequitur/testkit.hpp"
#include "test_util.hpp"

namespace sequitur {
namespace {

using test::build;
using test::canonical_of;
using test::text_of;

void expect_valid(const Grammar& g) {
  const ConstraintReport rep = verify_constraints(g);
  EXPECT_TRUE(rep.all_ok()) << (rep.problems.empty() ? "" : rep.problems.front());
}

/// S filled by hand, bypassing the engine; the index stays empty.
std::vector<NodeHandle> raw_s(Grammar& g, const std::vector<TokenId>& tokens) {
  std::vector<NodeHandle> nodes;
  NodeHandle at = g.guard(g.start());
  for (const TokenId t : tokens) nodes.push_back(at = g.insert_after(at, SymbolValue::terminal(t)));
  return nodes;
}

TEST(Inference, FirstExample) {
  EXPECT_EQ(text_of("abcdbc"), "R0 -> a R1 d R1\nR1 -> b c\n");
}

TEST(Inference, RuleInsideRule) {
  EXPECT_EQ(canonical_of("abcdbcabcdbc"), "R0 -> R1 R1\nR1 -> a R2 d R2\nR2 -> b c\n");
}

TEST(Inference, OverlappingRun) {
  EXPECT_EQ(text_of("aabaaab"), "R0 -> R1 b R1 a b\nR1 -> a a\n");
}

TEST(Inference, TripleFormsNoRule) {
  EXPECT_EQ(text_of("aaa"), "R0 -> a a a\n");
  EXPECT_EQ(text_of("aaaa"), "R0 -> R1 R1\nR1 -> a a\n");
}

TEST(Inference, EmptyAndSingle) {
  EXPECT_EQ(text_of(""), "R0 ->\n");
  EXPECT_EQ(text_of("q"), "R0 -> q\n");
}

TEST(Inference, StepByStepSnapshots) {
  const std::vector<std::string> expected = {
      "R0 -> a\n",
      "R0 -> a b\n",
      "R0 -> a b c\n",
      "R0 -> a b c d\n",
      "R0 -> a b c d b\n",
      "R0 -> a R1 d R1\nR1 -> b c\n",
      "R0 -> a R1 d R1 a\nR1 -> b c\n",
      "R0 -> a R1 d R1 a b\nR1 -> b c\n",
      "R0 -> R2 d R1 R2\nR1 -> b c\nR2 -> a R1\n",
      "R0 -> R2 R1 R2\nR1 -> b c\nR2 -> a R1 d\n",
  };
  EXPECT_EQ(test::snapshots("abcdbcabcd"), expected);
}

TEST(Inference, FinalCountersOfWorkedExample) {
  const auto b = build("abcdbcabcd");
  const ActionCounters c = counters(b.grammar);
  EXPECT_EQ(c, (ActionCounters{10, 14, 1, 3, 1}));
  const GrammarStats s = stats(b.grammar);
  EXPECT_EQ(s.o, 8u);
  EXPECT_EQ(s.r, 2u);
  EXPECT_EQ(s.depth, 3u);
}

std::string render_key(const Digram& d, const TokenTable& table) {
  std::string out;
  for (const SymbolValue v : {d.left, d.right})
    out += v.is_terminal() ? table.token(v.token()) : std::string(1, static_cast<char>('A' + v.rule().value - 1));
  return out;
}

TEST(Inference, IndexContentsDuringRuleCreation) {
  Tokenized t = tokenize("abcdbc", TokenMode::byte);
  Grammar g;
  std::vector<std::set<std::string>> seen;
  g.set_trace([&](const TraceEvent& e) {
    if (e.kind != TraceEvent::Kind::rule_created && e.kind != TraceEvent::Kind::substituted) return;
    std::set<std::string> keys;
    for (const auto& [d, loc] : testkit::index_entries(g)) keys.insert(render_key(d, t.table));
    seen.push_back(keys);
  });
  for (const TokenId tok : t.tokens) append_terminal(g, tok);
  const std::vector<std::set<std::string>> expected = {
      {"ab", "bc", "cd", "db"},
      {"bc", "db", "aA", "Ad"},
      {"bc", "dA", "aA", "Ad"},
  };
  EXPECT_EQ(seen, expected);
  EXPECT_EQ(*g.index().find(Digram{g.value(g.first(RuleId{1})), g.value(g.last(RuleId{1}))}), g.first(RuleId{1}));
}

TEST(Inference, OverlapKeepsEarlierEntry) {
  Grammar g;
  append_terminal(g, 0);
  append_terminal(g, 0);
  append_terminal(g, 0);
  const Digram aa{SymbolValue::terminal(0), SymbolValue::terminal(0)};
  EXPECT_EQ(g.index().size(), 1u);
  EXPECT_EQ(*g.index().find(aa), g.first(g.start()));
}

TEST(OnLink, Outcomes) {
  Grammar g;
  const auto n = raw_s(g, {0, 1, 2, 0, 1});
  EXPECT_EQ(on_link(g, n[4]), LinkOutcome::no_digram);
  EXPECT_EQ(on_link(g, g.guard(g.start())), LinkOutcome::no_digram);
  EXPECT_EQ(on_link(g, n[0]), LinkOutcome::inserted);
  EXPECT_EQ(on_link(g, n[1]), LinkOutcome::inserted);
  EXPECT_EQ(on_link(g, n[2]), LinkOutcome::inserted);
  EXPECT_EQ(on_link(g, n[3]), LinkOutcome::created);
  EXPECT_FALSE(g.is_live(n[3]));
  EXPECT_EQ(on_link(g, n[3]), LinkOutcome::no_digram);
  EXPECT_EQ(g.live_rule_count(), 2u);
  expect_valid(g);

  // Append "a b" by hand: the pair matches the whole body of rule 1.
  const NodeHandle a = g.insert_after(g.last(g.start()), SymbolValue::terminal(0));
  g.insert_after(a, SymbolValue::terminal(1));
  EXPECT_EQ(on_link(g, g.prev(a)), LinkOutcome::inserted);
  EXPECT_EQ(on_link(g, a), LinkOutcome::reused);
  EXPECT_EQ(g.ref_count(RuleId{1}), 3u);
  expect_valid(g);
}

TEST(OnLink, Overlap) {
  Grammar g;
  const auto n = raw_s(g, {5, 5, 5});
  EXPECT_EQ(on_link(g, n[0]), LinkOutcome::inserted);
  EXPECT_EQ(on_link(g, n[1]), LinkOutcome::overlap);
  EXPECT_EQ(g.counters().a2, 1u);
}

TEST(OnLink, StaleEntryIsAFault) {
  Grammar g;
  const auto n = raw_s(g, {0, 1, 2, 0, 1});
  g.index().insert_or_match(Digram{SymbolValue::terminal(0), SymbolValue::terminal(1)}, n[2]);
  EXPECT_THROW(on_link(g, n[3]), structural_fault);
}

TEST(OnLink, NewPairIsWholeRuleBody) {
  // S = Q z Q x y, Q = x y, with the index pointing at the x y inside S.
  Grammar g;
  const RuleId q = g.add_rule();
  const SymbolValue Q = SymbolValue::nonterminal(q);
  const SymbolValue x = SymbolValue::terminal(0), y = SymbolValue::terminal(1), z = SymbolValue::terminal(2);
  NodeHandle at = g.guard(g.start());
  for (const SymbolValue v : {Q, z, Q, x, y}) at = g.insert_after(at, v);
  const NodeHandle qx = g.insert_after(g.guard(q), x);
  g.insert_after(qx, y);
  for (NodeHandle h = g.first(g.start()); g.next(h) != g.guard(g.start()); h = g.next(h))
    ASSERT_EQ(on_link(g, h), LinkOutcome::inserted);

  EXPECT_EQ(on_link(g, qx), LinkOutcome::reused);
  EXPECT_EQ(g.rhs_values(g.start()), (std::vector<SymbolValue>{Q, z, Q, Q}));
  EXPECT_EQ(g.rhs_values(q), (std::vector<SymbolValue>{x, y}));
  EXPECT_EQ(g.ref_count(q), 3u);
  EXPECT_EQ(*g.index().find(Digram{x, y}), qx);
  EXPECT_EQ(g.counters().a3, 1u);
  EXPECT_EQ(g.counters().a4, 0u);
  expect_valid(g);
}

TEST(Operations, SizeChangePerOperation) {
  // Creating a rule leaves o unchanged; reusing one or deleting one saves one symbol.
  Grammar g;
  const auto n = raw_s(g, {0, 1, 2, 0, 1});
  for (int i = 0; i < 3; ++i) on_link(g, n[i]);
  EXPECT_EQ(grammar_size(g), 5u);
  const RuleId r = create_rule(g, n[0], n[3]);
  EXPECT_EQ(grammar_size(g), 5u);

  const NodeHandle a = g.insert_after(g.last(g.start()), SymbolValue::terminal(0));
  g.insert_after(a, SymbolValue::terminal(1));
  on_link(g, g.prev(a));
  EXPECT_EQ(grammar_size(g), 7u);
  reuse_rule(g, r, a);
  EXPECT_EQ(grammar_size(g), 6u);
  expect_valid(g);

  Grammar h;
  const RuleId once = h.add_rule();
  const NodeHandle b = h.insert_after(h.guard(once), SymbolValue::terminal(0));
  h.insert_after(b, SymbolValue::terminal(1));
  h.index().insert_or_match(Digram{SymbolValue::terminal(0), SymbolValue::terminal(1)}, b);
  h.insert_after(h.guard(h.start()), SymbolValue::nonterminal(once));
  EXPECT_EQ(grammar_size(h), 3u);
  delete_rule(h, once);
  EXPECT_EQ(grammar_size(h), 2u);
  EXPECT_FALSE(h.has_rule(once));
  EXPECT_EQ(h.counters().a5, 1u);
  expect_valid(h);
}

TEST(Operations, DeleteRuleChecksItsArguments) {
  Grammar g;
  EXPECT_THROW(delete_rule(g, g.start()), structural_fault);
  const RuleId unused = g.add_rule();
  g.insert_after(g.guard(unused), SymbolValue::terminal(0));
  EXPECT_THROW(delete_rule(g, unused), not_found_error);

  auto b = build("abab");
  EXPECT_THROW(delete_rule(b.grammar, RuleId{1}), structural_fault);
  EXPECT_THROW(delete_rule_at(b.grammar, b.grammar.last(RuleId{1})), structural_fault);
}

TEST(Operations, CreateRuleNeedsEqualDigrams) {
  Grammar g;
  const auto n = raw_s(g, {0, 1, 0, 2});
  EXPECT_THROW(create_rule(g, n[0], n[2]), structural_fault);
}

TEST(Cascade, NestedRuleAfterThirteenSymbols) {
  const std::string input = testkit::gen_cascade(4).substr(0, 13);
  EXPECT_EQ(input, "yzxyzwxyzvwxy");
  EXPECT_EQ(canonical_of(input), "R0 -> R1 R2 w R2 v w x y\nR1 -> y z\nR2 -> x R1\n");
}

TEST(Cascade, MatchesGrowWithBlockIndex) {
  const std::size_t m = 12;
  const auto t = tokenize(testkit::gen_cascade(m), TokenMode::byte);
  Grammar g;
  std::size_t pos = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t i = 0; i + 1 < k + 1; ++i) append_terminal(g, t.tokens[pos++]);
    const auto before = g.counters();
    append_terminal(g, t.tokens[pos++]);
    const auto after = g.counters();
    EXPECT_EQ((after.a3 + after.a4) - (before.a3 + before.a4), k - 1) << "block " << k;
    expect_valid(g);
  }
}

TEST(RepeatedBlock, RuleGrowsByCreateAndDelete) {
  const auto b = build(testkit::gen_repeated_block(5, 3));
  EXPECT_EQ(test::canonical(b.grammar, b.table), "R0 -> R1 R1 R1\nR1 -> a b c d e\n");
  const auto c = counters(b.grammar);
  EXPECT_EQ(c.a3, 1u);
  EXPECT_EQ(c.a4, 7u);
  EXPECT_EQ(c.a5, 6u);

  const auto small = build(testkit::gen_repeated_block(3, 2));
  EXPECT_EQ(counters(small.grammar).a4, 2u);
  EXPECT_EQ(counters(small.grammar).a5, 1u);
}

TEST(Regression, RunsNextToRules) {
  for (const char* input : {"abbbabcbb", "aaaaa", "aaaaaaa", "abaaabaaab", "bbbabbbab", "aabaabaaa"}) {
    Tokenized t = tokenize(input, TokenMode::byte);
    Grammar g;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
      append_terminal(g, t.tokens[i]);
      const ConstraintReport rep = verify_constraints(g);
      ASSERT_TRUE(rep.all_ok()) << input << " after " << i + 1 << ": " << rep.problems.front();
      EXPECT_EQ(expand(g), std::vector<TokenId>(t.tokens.begin(), t.tokens.begin() + i + 1));
    }
  }
}

TEST(Identities, HoldOnSmallInputs) {
  for (const char* input : {"abcdbc", "abcdbcabcdbc", "aabaaab", "abcdbcabcd", "aaaaaaaaaaaaaaaa", "abcabcabcabc"}) {
    const auto b = build(input);
    const GrammarStats s = stats(b.grammar);
    EXPECT_EQ(s.n - s.o, s.counters.a3 + s.counters.a5) << input;
    EXPECT_EQ(s.r, s.counters.a4 - s.counters.a5) << input;
    EXPECT_LE(s.counters.total(), 6 * s.n) << input;
  }
}

TEST(Infer, SameGrammarFromBothHashers) {
  const auto tokens = testkit::random_tokens(3000, 3, 11);
  const auto a = infer<SplitMixHasher>(tokens);
  const auto b = infer<MurmurHasher>(tokens);
  TokenTable table;
  for (int i = 0; i < 3; ++i) table.intern(std::string(1, static_cast<char>('a' + i)));
  EXPECT_EQ(emit_text(a, table), emit_text(b, table));
  EXPECT_EQ(a.counters(), b.counters());
}

}  // namespace
}  // namespace sequitur
