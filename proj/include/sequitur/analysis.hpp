#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "sequitur/errors.hpp"
#include "sequitur/grammar.hpp"

namespace sequitur {

struct GrammarStats {
  std::uint64_t n = 0;      // input length (a1)
  std::uint64_t o = 0;      // grammar size: rhs symbols over all rules, heads excluded
  std::uint64_t r = 0;      // rules other than S
  std::uint64_t depth = 0;  // longest chain of rule references, counting S
  ActionCounters counters;
};

/// Nesting tree of a grammar's expansion. Leaves are terminals.
struct HierarchyNode {
  std::variant<RuleId, TokenId> label;
  std::vector<HierarchyNode> children;

  bool is_leaf() const noexcept { return std::holds_alternative<TokenId>(label); }
};

/// Result of an exhaustive scan; never relies on the incremental index for
/// anything but the index check itself.
struct ConstraintReport {
  bool p1_ok = true;           // no digram occurs twice (overlapping runs excepted)
  bool p2_ok = true;           // every rule but S is referenced at least twice
  bool link_ok = true;         // prev/next consistency, one owner per node
  bool refcount_ok = true;     // stored counts equal scanned occurrence counts
  bool index_ok = true;        // index key set equals the scanned digram set
  bool rule_length_ok = true;  // every rule but S has at least two symbols
  std::vector<std::string> problems;

  bool all_ok() const noexcept {
    return p1_ok && p2_ok && link_ok && refcount_ok && index_ok && rule_length_ok;
  }
};

namespace detail {

template <class H>
void require_rule(const BasicGrammar<H>& g, SymbolValue v) {
  if (!g.has_rule(v.rule()))
    throw corrupt_grammar_error("reference to missing rule R" + std::to_string(v.rule().value));
}

/// Depth-first, left-to-right walk with an explicit stack. Calls
/// `leaf(token)` for terminals and `enter(rule)` / `leave(rule)` around each
/// rule body, S included. A rule reached again on its own path is a cycle.
template <class H, class Leaf, class Enter, class Leave>
void walk(const BasicGrammar<H>& g, Leaf&& leaf, Enter&& enter, Leave&& leave) {
  std::vector<char> on_path(g.next_rule_id().value, 0);
  struct Frame {
    RuleId rule;
    NodeHandle guard;
    NodeHandle at;
  };
  std::vector<Frame> stack;
  auto push = [&](RuleId r) {
    if (on_path[r.value]) throw corrupt_grammar_error("cycle through rule R" + std::to_string(r.value));
    on_path[r.value] = 1;
    const NodeHandle guard = g.guard(r);
    stack.push_back({r, guard, g.next(guard)});
    enter(r);
  };
  push(g.start());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.at == f.guard) {
      on_path[f.rule.value] = 0;
      const RuleId done = f.rule;
      stack.pop_back();
      leave(done);
      continue;
    }
    const SymbolValue v = g.value(f.at);
    f.at = g.next(f.at);
    if (v.is_terminal()) {
      leaf(v.token());
    } else {
      require_rule(g, v);
      push(v.rule());
    }
  }
}

}  // namespace detail

template <class H>
std::vector<TokenId> expand(const BasicGrammar<H>& g) {
  std::vector<TokenId> out;
  detail::walk(g, [&](TokenId t) { out.push_back(t); }, [](RuleId) {}, [](RuleId) {});
  return out;
}

/// Sum of rhs lengths over all live rules, counted by traversal.
template <class H>
std::uint64_t grammar_size(const BasicGrammar<H>& g) {
  std::uint64_t total = 0;
  for (const RuleId id : g.rule_ids()) total += g.rhs_length(id);
  return total;
}

template <class H>
std::uint64_t rule_count(const BasicGrammar<H>& g) {
  return g.live_rule_count() - 1;
}

/// Longest chain of rule references from S, counting S itself.
template <class H>
std::uint64_t depth(const BasicGrammar<H>& g) {
  if (g.is_guard(g.first(g.start()))) throw undefined_input_error("depth of an empty grammar");
  // Memoized post-order over the rule DAG; 0 = unvisited, ~0 = in progress.
  constexpr std::uint64_t in_progress = ~std::uint64_t{0};
  std::vector<std::uint64_t> memo(g.next_rule_id().value, 0);
  struct Frame {
    RuleId rule;
    NodeHandle at;
    std::uint64_t best;
  };
  std::vector<Frame> stack;
  auto open = [&](RuleId r) {
    memo[r.value] = in_progress;
    stack.push_back({r, g.first(r), 0});
  };
  open(g.start());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.at == g.guard(f.rule)) {
      memo[f.rule.value] = f.best + 1;
      const std::uint64_t d = memo[f.rule.value];
      stack.pop_back();
      if (!stack.empty()) stack.back().best = std::max(stack.back().best, d);
      continue;
    }
    const SymbolValue v = g.value(f.at);
    f.at = g.next(f.at);
    if (v.is_terminal()) continue;
    detail::require_rule(g, v);
    const std::uint64_t known = memo[v.rule().value];
    if (known == in_progress)
      throw corrupt_grammar_error("cycle through rule R" + std::to_string(v.rule().value));
    if (known != 0)
      f.best = std::max(f.best, known);
    else
      open(v.rule());
  }
  return memo[g.start().value];
}

template <class H>
GrammarStats stats(const BasicGrammar<H>& g) {
  GrammarStats s;
  s.counters = g.counters();
  s.n = s.counters.a1;
  s.o = grammar_size(g);
  s.r = rule_count(g);
  s.depth = g.is_guard(g.first(g.start())) ? 0 : depth(g);
  return s;
}

template <class H>
HierarchyNode hierarchy(const BasicGrammar<H>& g) {
  std::vector<HierarchyNode> open;
  HierarchyNode root;
  detail::walk(
      g,
      [&](TokenId t) { open.back().children.push_back(HierarchyNode{t, {}}); },
      [&](RuleId r) { open.push_back(HierarchyNode{r, {}}); },
      [&](RuleId) {
        HierarchyNode done = std::move(open.back());
        open.pop_back();
        if (open.empty())
          root = std::move(done);
        else
          open.back().children.push_back(std::move(done));
      });
  return root;
}

/// Leaves of a hierarchy, left to right.
inline std::vector<TokenId> leaves(const HierarchyNode& root) {
  std::vector<TokenId> out;
  std::vector<const HierarchyNode*> stack{&root};
  while (!stack.empty()) {
    const HierarchyNode* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) {
      out.push_back(std::get<TokenId>(n->label));
      continue;
    }
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

/// Every digram of the grammar with the left nodes of its occurrences,
/// gathered by a plain traversal of all rule bodies.
template <class H>
std::map<Digram, std::vector<NodeHandle>> scan_digrams(const BasicGrammar<H>& g) {
  std::map<Digram, std::vector<NodeHandle>> out;
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    for (NodeHandle h = g.next(guard); h != guard; h = g.next(h)) {
      const NodeHandle nx = g.next(h);
      if (nx == guard) break;
      out[Digram{g.value(h), g.value(nx)}].push_back(h);
    }
  }
  return out;
}

/// Reference counts recomputed by scanning every rhs.
template <class H>
std::unordered_map<RuleId, std::uint64_t> scan_ref_counts(const BasicGrammar<H>& g) {
  std::unordered_map<RuleId, std::uint64_t> counts;
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    for (NodeHandle h = g.next(guard); h != guard; h = g.next(h))
      if (g.value(h).is_nonterminal()) ++counts[g.value(h).rule()];
  }
  return counts;
}

template <class H>
ConstraintReport verify_constraints(const BasicGrammar<H>& g) {
  ConstraintReport rep;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (rep.problems.size() < 32) rep.problems.push_back(std::move(msg));
  };

  // Links: walk every rule from its guard, bounded by the arena size.
  std::vector<char> seen(g.node_slots(), 0);
  std::size_t symbols = 0;
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    NodeHandle h = guard;
    std::size_t steps = 0;
    do {
      const NodeHandle nx = g.next(h);
      if (!g.is_live(nx) || g.prev(nx) != h) {
        fail(rep.link_ok, "broken link after node " + std::to_string(h.value));
        break;
      }
      if (nx != guard) {
        if (g.is_guard(nx)) {
          fail(rep.link_ok, "foreign guard inside R" + std::to_string(id.value));
          break;
        }
        if (seen[nx.value]++) {
          fail(rep.link_ok, "node " + std::to_string(nx.value) + " reachable twice");
          break;
        }
        ++symbols;
      }
      h = nx;
      if (++steps > g.node_slots()) {
        fail(rep.link_ok, "rule R" + std::to_string(id.value) + " does not close");
        break;
      }
    } while (h != guard);
  }
  if (rep.link_ok && symbols != g.symbol_count())
    fail(rep.link_ok, "live symbol count disagrees with traversal");
  if (!rep.link_ok) {
    // Nothing below is meaningful over broken chains.
    rep.p1_ok = rep.p2_ok = rep.refcount_ok = rep.index_ok = rep.rule_length_ok = false;
    return rep;
  }

  const auto counts = scan_ref_counts(g);
  for (const auto& [rule, n] : counts)
    if (!g.has_rule(rule)) fail(rep.refcount_ok, "reference to missing rule R" + std::to_string(rule.value));
  for (const RuleId id : g.rule_ids()) {
    const auto it = counts.find(id);
    const std::uint64_t scanned = it == counts.end() ? 0 : it->second;
    if (scanned != g.ref_count(id))
      fail(rep.refcount_ok, "R" + std::to_string(id.value) + " count " + std::to_string(g.ref_count(id)) +
                                " but " + std::to_string(scanned) + " occurrences");
    if (id == g.start()) continue;
    if (scanned < 2) fail(rep.p2_ok, "R" + std::to_string(id.value) + " used " + std::to_string(scanned) + " time(s)");
    if (g.rhs_length(id) < 2) fail(rep.rule_length_ok, "R" + std::to_string(id.value) + " shorter than two symbols");
  }

  // Digram multiset as a sorted list of (left, right, location).
  struct Occurrence {
    std::uint64_t left, right;
    NodeHandle at;
    auto key() const { return std::pair{left, right}; }
  };
  std::vector<Occurrence> occ;
  occ.reserve(symbols);
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    for (NodeHandle h = g.next(guard); h != guard; h = g.next(h)) {
      const NodeHandle nx = g.next(h);
      if (nx == guard) break;
      occ.push_back({g.value(h).bits(), g.value(nx).bits(), h});
    }
  }
  std::sort(occ.begin(), occ.end(), [](const Occurrence& a, const Occurrence& b) { return a.key() < b.key(); });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < occ.size();) {
    std::size_t j = i + 1;
    while (j < occ.size() && occ[j].key() == occ[i].key()) ++j;
    ++distinct;
    const auto [l, r] = occ[i].key();
    const std::size_t k = j - i;
    const bool overlapping_pair =
        k == 2 && (g.next(occ[i].at) == occ[i + 1].at || g.next(occ[i + 1].at) == occ[i].at);
    if (k > 1 && !overlapping_pair)
      fail(rep.p1_ok, "digram (" + std::to_string(l) + "," + std::to_string(r) + ") occurs " +
                          std::to_string(k) + " times");
    const auto loc = g.index().find(Digram{SymbolValue::from_bits(l), SymbolValue::from_bits(r)});
    bool at_occurrence = false;
    for (std::size_t x = i; loc && x < j; ++x) at_occurrence |= occ[x].at == *loc;
    if (!at_occurrence)
      fail(rep.index_ok, "digram (" + std::to_string(l) + "," + std::to_string(r) + ") not indexed at an occurrence");
    i = j;
  }
  if (g.index().size() != distinct)
    fail(rep.index_ok, "index holds " + std::to_string(g.index().size()) + " entries for " +
                           std::to_string(distinct) + " digrams");
  return rep;
}

}  // namespace sequitur
