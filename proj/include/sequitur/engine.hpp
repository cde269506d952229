#pragma once

#include <array>
#include <optional>
#include <span>

#include "sequitur/grammar.hpp"

namespace sequitur {

/// What on_link did with a freshly made adjacency.
enum class LinkOutcome {
  no_digram,  // left side was dead, a guard, or followed by a guard
  inserted,   // new digram entered in the index
  overlap,    // equal digram found, but it shares a node with this one
  reused,     // one occurrence was a whole rule body; the other now refers to it
  created,    // both occurrences replaced by a new rule
};

template <class H>
LinkOutcome on_link(BasicGrammar<H>& g, NodeHandle left);
template <class H>
void reuse_rule(BasicGrammar<H>& g, RuleId rule, NodeHandle left);
template <class H>
RuleId create_rule(BasicGrammar<H>& g, NodeHandle loc1, NodeHandle loc2);
template <class H>
void delete_rule_at(BasicGrammar<H>& g, NodeHandle occurrence);

namespace detail {

template <class H>
Digram digram_at(const BasicGrammar<H>& g, NodeHandle left) {
  return {g.value(left), g.value(g.next(left))};
}

/// Rule whose entire rhs is the digram starting at `left`, if any (never S).
template <class H>
std::optional<RuleId> whole_rule_at(const BasicGrammar<H>& g, NodeHandle left) {
  const NodeHandle before = g.prev(left);
  if (!g.is_guard(before) || !g.is_guard(g.next(g.next(left)))) return std::nullopt;
  const RuleId owner = g.guard_owner(before);
  if (owner == g.start()) return std::nullopt;
  return owner;
}

/// Makes sure the digram at `u` has an index entry. Used after a link of a
/// run like `xxx` is broken: only one of the two overlapping pairs was
/// indexed, and it may have been the one that went away.
template <class H>
void ensure_indexed(BasicGrammar<H>& g, NodeHandle u) {
  g.index().insert_or_match(digram_at(g, u), u);
}

template <class H>
bool is_triple(const BasicGrammar<H>& g, NodeHandle a, SymbolValue v) {
  if (g.is_guard(a)) return false;
  const NodeHandle b = g.next(a);
  return !g.is_guard(b) && g.value(a) == v && g.value(b) == v;
}

struct Site {
  NodeHandle before;    // predecessor of the replaced stretch (may be a guard)
  NodeHandle inserted;  // the new nonterminal node
};

/// Replaces the two nodes at `left`, `left.next` with one NonTerminal(rule)
/// node, maintaining the index across the three broken links. New links are
/// not processed here.
template <class H>
Site substitute(BasicGrammar<H>& g, NodeHandle left, RuleId rule) {
  auto& ix = g.index();
  const NodeHandle a = left;
  const NodeHandle b = g.next(a);
  const NodeHandle p = g.prev(a);
  const NodeHandle s = g.next(b);
  const SymbolValue va = g.value(a);
  const SymbolValue vb = g.value(b);

  const bool restore_before = !g.is_guard(p) && g.value(p) == va && is_triple(g, g.prev(p), va);
  const bool restore_after = !g.is_guard(s) && g.value(s) == vb && is_triple(g, s, vb);

  if (!g.is_guard(p)) ix.forget({g.value(p), va}, p);
  ix.forget({va, vb}, a);
  if (!g.is_guard(s)) ix.forget({vb, g.value(s)}, b);

  g.remove(a);
  g.remove(b);
  const NodeHandle n = g.insert_after(p, SymbolValue::nonterminal(rule));

  if (restore_before) ensure_indexed(g, g.prev(p));
  if (restore_after) ensure_indexed(g, s);
  return {p, n};
}

/// Processes the two links around a splice, predecessor side first. Either
/// side may already have been consumed by the other side's cascade.
template <class H>
void process_links(BasicGrammar<H>& g, NodeHandle before, NodeHandle last_inserted) {
  if (g.is_live(before) && !g.is_guard(before)) on_link(g, before);
  if (g.is_live(last_inserted)) on_link(g, last_inserted);
}

/// After a digram was replaced by `rule`, the displaced values can only
/// survive inside `rule`'s body. Any of them left with a single use is
/// inlined there.
template <class H>
void enforce_utility(BasicGrammar<H>& g, RuleId rule) {
  if (!g.has_rule(rule)) return;
  std::array<std::pair<NodeHandle, SymbolValue>, 2> body{};
  std::size_t count = 0;
  const NodeHandle guard = g.guard(rule);
  for (NodeHandle h = g.next(guard); h != guard && count < body.size(); h = g.next(h))
    body[count++] = {h, g.value(h)};
  for (std::size_t i = 0; i < count; ++i) {
    const auto [h, v] = body[i];
    if (!v.is_nonterminal() || !g.is_live(h) || g.is_guard(h) || g.value(h) != v) continue;
    if (g.has_rule(v.rule()) && g.ref_count(v.rule()) == 1) delete_rule_at(g, h);
  }
}

template <class H>
void replace_with_rule(BasicGrammar<H>& g, NodeHandle left, RuleId rule) {
  const Site site = substitute(g, left, rule);
  enforce_utility(g, rule);
  process_links(g, site.before, site.inserted);
  g.emit(TraceEvent::Kind::substituted, rule);
}

}  // namespace detail

/// Handles one newly made adjacency `left, left.next`: enter it in the
/// index, or resolve the duplicate it creates. Cascades recursively.
template <class H>
LinkOutcome on_link(BasicGrammar<H>& g, NodeHandle left) {
  if (!g.is_live(left) || g.is_guard(left)) return LinkOutcome::no_digram;
  const NodeHandle right = g.next(left);
  if (g.is_guard(right)) return LinkOutcome::no_digram;

  const Digram d{g.value(left), g.value(right)};
  const auto m = g.index().insert_or_match(d, left);
  if (m.inserted) {
    ++g.counters().a2;
    return LinkOutcome::inserted;
  }

  const NodeHandle existing = m.existing;
  if (!g.is_live(existing) || g.is_guard(existing) || detail::digram_at(g, existing) != d)
    throw structural_fault("digram index entry is stale");
  if (existing == left || g.next(existing) == left || right == existing)
    return LinkOutcome::overlap;

  if (const auto rule = detail::whole_rule_at(g, existing)) {
    reuse_rule(g, *rule, left);
    return LinkOutcome::reused;
  }
  if (const auto rule = detail::whole_rule_at(g, left)) {
    // The new pair is itself a whole rule body; point the index at it and
    // fold the older occurrence into that rule instead.
    g.index().update_location(d, left);
    reuse_rule(g, *rule, existing);
    return LinkOutcome::reused;
  }
  create_rule(g, existing, left);
  return LinkOutcome::created;
}

/// Replaces the digram at `left` by a reference to `rule`, whose rhs is
/// exactly that digram.
template <class H>
void reuse_rule(BasicGrammar<H>& g, RuleId rule, NodeHandle left) {
  ++g.counters().a3;
  detail::replace_with_rule(g, left, rule);
}

/// Forms a new rule from the digram at `loc1` (also found at `loc2`) and
/// replaces both occurrences with it. The index entry moves into the rule
/// body before either occurrence is touched.
template <class H>
RuleId create_rule(BasicGrammar<H>& g, NodeHandle loc1, NodeHandle loc2) {
  const Digram d = detail::digram_at(g, loc1);
  if (detail::digram_at(g, loc2) != d) throw structural_fault("create_rule on unequal digrams");

  const RuleId rule = g.add_rule();
  ++g.counters().a4;
  const NodeHandle first = g.insert_after(g.guard(rule), d.left);
  g.insert_after(first, d.right);
  if (g.index().contains(d))
    g.index().update_location(d, first);
  else
    g.index().insert_or_match(d, first);
  g.emit(TraceEvent::Kind::rule_created, rule);

  detail::replace_with_rule(g, loc1, rule);
  detail::replace_with_rule(g, loc2, rule);
  return rule;
}

/// Inlines a rule at its single remaining occurrence and retires it. The
/// rhs nodes are moved, not copied.
template <class H>
void delete_rule_at(BasicGrammar<H>& g, NodeHandle occurrence) {
  const SymbolValue v = g.value(occurrence);
  if (g.is_guard(occurrence) || !v.is_nonterminal())
    throw structural_fault("delete_rule needs a nonterminal occurrence");
  const RuleId rule = v.rule();
  if (rule == g.start()) throw structural_fault("rule S is never deleted");
  if (g.ref_count(rule) != 1) throw structural_fault("delete_rule on a rule used more than once");

  auto& ix = g.index();
  const NodeHandle p = g.prev(occurrence);
  const NodeHandle s = g.next(occurrence);
  const NodeHandle body_last = g.last(rule);
  if (body_last == g.guard(rule)) throw structural_fault("delete_rule on an empty rule");

  if (!g.is_guard(p)) ix.forget({g.value(p), v}, p);
  if (!g.is_guard(s)) ix.forget({v, g.value(s)}, occurrence);
  g.remove(occurrence);
  g.move_body_after(rule, p);
  g.drop_rule(rule);
  ++g.counters().a5;
  g.emit(TraceEvent::Kind::rule_deleted, rule);

  detail::process_links(g, p, body_last);
}

/// Deletes a rule used exactly once, locating its occurrence by a full scan.
/// The engine itself always knows the occurrence and uses delete_rule_at.
template <class H>
void delete_rule(BasicGrammar<H>& g, RuleId rule) {
  if (rule == g.start()) throw structural_fault("rule S is never deleted");
  const SymbolValue target = SymbolValue::nonterminal(rule);
  for (const RuleId id : g.rule_ids()) {
    const NodeHandle guard = g.guard(id);
    for (NodeHandle h = g.next(guard); h != guard; h = g.next(h)) {
      if (g.value(h) == target) {
        delete_rule_at(g, h);
        return;
      }
    }
  }
  throw not_found_error("rule R" + std::to_string(rule.value) + " has no occurrence");
}

/// Appends one terminal to rule S and restores both grammar constraints.
template <class H>
void append_terminal(BasicGrammar<H>& g, TokenId token) {
  const NodeHandle tail = g.last(g.start());
  g.insert_after(tail, SymbolValue::terminal(token));
  ++g.counters().a1;
  g.emit(TraceEvent::Kind::appended, g.start());
  if (!g.is_guard(tail)) on_link(g, tail);
}

template <class H>
ActionCounters counters(const BasicGrammar<H>& g) {
  return g.counters();
}

template <class Hasher = SplitMixHasher>
BasicGrammar<Hasher> infer(std::span<const TokenId> tokens) {
  BasicGrammar<Hasher> g;
  for (const TokenId t : tokens) append_terminal(g, t);
  return g;
}

}  // namespace sequitur
