#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sequitur/digram_index.hpp"
#include "sequitur/errors.hpp"
#include "sequitur/symbol.hpp"

namespace sequitur {

/// Tallies of the five grammar actions.
struct ActionCounters {
  std::uint64_t a1 = 0;  // symbols appended to S
  std::uint64_t a2 = 0;  // new digrams entered in the index
  std::uint64_t a3 = 0;  // existing rules reused
  std::uint64_t a4 = 0;  // rules created
  std::uint64_t a5 = 0;  // rules deleted

  std::uint64_t total() const noexcept { return a1 + a2 + a3 + a4 + a5; }
  friend bool operator==(const ActionCounters&, const ActionCounters&) = default;
};

/// Structural events reported to an optional observer while the engine runs.
struct TraceEvent {
  enum class Kind { appended, rule_created, substituted, rule_deleted };
  Kind kind;
  RuleId rule;
};

/// Rules as guard-anchored circular doubly-linked node chains, with
/// reference counts, the digram index, and the action counters.
///
/// Structural edits here never touch the digram index; keeping the index in
/// step with links is the engine's job.
template <class Hasher = SplitMixHasher>
class BasicGrammar {
 public:
  using hasher_type = Hasher;
  using index_type = DigramIndex<Hasher>;
  using trace_fn = std::function<void(const TraceEvent&)>;

  BasicGrammar() { add_rule(); }

  // -- structural edits ----------------------------------------------------

  NodeHandle insert_after(NodeHandle at, SymbolValue v) {
    const NodeHandle after = live_node(at).next;
    if (v.is_nonterminal()) ++live_rule(v.rule()).ref_count;
    const NodeHandle h = allocate(v, false);  // may reallocate the arena
    Node& n = nodes_[h.value];
    n.prev = at;
    n.next = after;
    nodes_[after.value].prev = h;
    nodes_[at.value].next = h;
    ++symbol_count_;
    return h;
  }

  SymbolValue remove(NodeHandle h) {
    Node& n = live_node(h);
    if (n.guard) throw structural_fault("cannot remove a guard node");
    const SymbolValue v = n.value;
    nodes_[n.prev.value].next = n.next;
    nodes_[n.next.value].prev = n.prev;
    if (v.is_nonterminal()) {
      RuleRecord& r = live_rule(v.rule());
      if (r.ref_count == 0) throw structural_fault("reference count underflow");
      --r.ref_count;
    }
    release(h);
    --symbol_count_;
    return v;
  }

  /// New empty rule with the next id.
  RuleId add_rule() {
    const RuleId id{rules_.size()};
    const NodeHandle g = allocate(SymbolValue::nonterminal(id), true);
    nodes_[g.value].prev = g;
    nodes_[g.value].next = g;
    rules_.push_back(RuleRecord{g, 0, true});
    ++live_rules_;
    return id;
  }

  /// Moves every rhs node of `from` to sit after `at`, leaving `from` empty.
  /// Nodes keep their handles, so index entries pointing at them stay valid.
  void move_body_after(RuleId from, NodeHandle at) {
    const NodeHandle g = guard(from);
    Node& anchor = live_node(at);
    if (at == g) throw structural_fault("cannot move a body into itself");
    const NodeHandle first = nodes_[g.value].next;
    if (first == g) return;
    const NodeHandle last = nodes_[g.value].prev;
    const NodeHandle after = anchor.next;
    nodes_[g.value].next = g;
    nodes_[g.value].prev = g;
    nodes_[at.value].next = first;
    nodes_[first.value].prev = at;
    nodes_[last.value].next = after;
    nodes_[after.value].prev = last;
  }

  /// Drops an emptied, unreferenced rule. Its id is retired for good.
  void drop_rule(RuleId id) {
    if (id == start_rule) throw structural_fault("rule S cannot be dropped");
    RuleRecord& r = live_rule(id);
    if (nodes_[r.guard.value].next != r.guard) throw structural_fault("dropping a non-empty rule");
    if (r.ref_count != 0) throw structural_fault("dropping a referenced rule");
    release(r.guard);
    r.live = false;
    --live_rules_;
  }

  // -- navigation ----------------------------------------------------------

  NodeHandle next(NodeHandle h) const { return live_node(h).next; }
  NodeHandle prev(NodeHandle h) const { return live_node(h).prev; }
  SymbolValue value(NodeHandle h) const { return live_node(h).value; }
  bool is_guard(NodeHandle h) const { return live_node(h).guard; }
  bool is_live(NodeHandle h) const noexcept {
    return h.value < nodes_.size() && nodes_[h.value].live;
  }

  /// Rule owning a guard node.
  RuleId guard_owner(NodeHandle g) const {
    const Node& n = live_node(g);
    if (!n.guard) throw structural_fault("not a guard node");
    return n.value.rule();
  }

  NodeHandle guard(RuleId id) const { return rule_record(id).guard; }
  NodeHandle first(RuleId id) const { return next(guard(id)); }
  NodeHandle last(RuleId id) const { return prev(guard(id)); }

  std::vector<SymbolValue> rhs_values(RuleId id) const {
    std::vector<SymbolValue> out;
    const NodeHandle g = guard(id);
    for (NodeHandle h = nodes_[g.value].next; h != g; h = nodes_[h.value].next)
      out.push_back(nodes_[h.value].value);
    return out;
  }

  std::size_t rhs_length(RuleId id) const {
    std::size_t n = 0;
    const NodeHandle g = guard(id);
    for (NodeHandle h = nodes_[g.value].next; h != g; h = nodes_[h.value].next) ++n;
    return n;
  }

  bool has_rule(RuleId id) const noexcept {
    return id.value < rules_.size() && rules_[id.value].live;
  }
  std::uint64_t ref_count(RuleId id) const { return rule_record(id).ref_count; }

  RuleId start() const noexcept { return start_rule; }
  RuleId next_rule_id() const noexcept { return RuleId{rules_.size()}; }
  /// Live rules, S included.
  std::size_t live_rule_count() const noexcept { return live_rules_; }
  /// Live non-guard nodes across all rules.
  std::size_t symbol_count() const noexcept { return symbol_count_; }
  /// Upper bound on handle values ever issued.
  std::size_t node_slots() const noexcept { return nodes_.size(); }

  /// Live rule ids in creation order.
  std::vector<RuleId> rule_ids() const {
    std::vector<RuleId> ids;
    ids.reserve(live_rules_);
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].live) ids.push_back(RuleId{i});
    return ids;
  }

  // -- engine state ----------------------------------------------------------

  index_type& index() noexcept { return index_; }
  const index_type& index() const noexcept { return index_; }
  ActionCounters& counters() noexcept { return counters_; }
  const ActionCounters& counters() const noexcept { return counters_; }

  void set_trace(trace_fn fn) { trace_ = std::move(fn); }
  void emit(TraceEvent::Kind kind, RuleId rule) const {
    if (trace_) trace_(TraceEvent{kind, rule});
  }

 private:
  struct Node {
    SymbolValue value;
    NodeHandle prev;
    NodeHandle next;
    bool guard = false;
    bool live = false;
  };

  struct RuleRecord {
    NodeHandle guard;
    std::uint64_t ref_count = 0;
    bool live = false;
  };

  const Node& live_node(NodeHandle h) const {
    if (!is_live(h)) throw structural_fault("dangling node handle " + std::to_string(h.value));
    return nodes_[h.value];
  }
  Node& live_node(NodeHandle h) {
    return const_cast<Node&>(static_cast<const BasicGrammar&>(*this).live_node(h));
  }

  const RuleRecord& rule_record(RuleId id) const {
    if (!has_rule(id)) throw not_found_error("unknown rule R" + std::to_string(id.value));
    return rules_[id.value];
  }
  RuleRecord& live_rule(RuleId id) {
    if (!has_rule(id))
      throw structural_fault("reference to missing rule R" + std::to_string(id.value));
    return rules_[id.value];
  }

  NodeHandle allocate(SymbolValue v, bool guard) {
    NodeHandle h;
    if (!free_.empty()) {
      h = free_.back();
      free_.pop_back();
    } else {
      if (nodes_.size() >= NodeHandle::invalid_value) throw std::length_error("node arena exhausted");
      h = NodeHandle{static_cast<std::uint32_t>(nodes_.size())};
      nodes_.emplace_back();
    }
    nodes_[h.value] = Node{v, h, h, guard, true};
    return h;
  }

  void release(NodeHandle h) {
    nodes_[h.value].live = false;
    free_.push_back(h);
  }

  std::vector<Node> nodes_;
  std::vector<NodeHandle> free_;
  std::vector<RuleRecord> rules_;
  std::size_t live_rules_ = 0;
  std::size_t symbol_count_ = 0;
  index_type index_;
  ActionCounters counters_;
  trace_fn trace_;
};

using Grammar = BasicGrammar<>;

/// Fresh grammar holding only an empty rule S.
template <class Hasher = SplitMixHasher>
BasicGrammar<Hasher> new_grammar() {
  return BasicGrammar<Hasher>{};
}

}  // namespace sequitur
