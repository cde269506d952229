#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sequitur/errors.hpp"
#include "sequitur/symbol.hpp"

namespace sequitur {

// Two unrelated 64-bit mixers. Grammar output must not depend on which one
// an index is instantiated with; only probe lengths change.

struct SplitMixHasher {
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()(const Digram& d) const noexcept {
    return mix(mix(d.left.bits()) ^ d.right.bits());
  }
};

struct MurmurHasher {
  static constexpr std::uint64_t fmix(std::uint64_t k) noexcept {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdull;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ull;
    k ^= k >> 33;
    return k;
  }

  std::uint64_t operator()(const Digram& d) const noexcept {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    h = std::rotl(h ^ fmix(d.left.bits()), 27) * 5 + 0x52dce729;
    h = std::rotl(h ^ fmix(d.right.bits() + 0x38495ab5), 31) * 5 + 0x52dce729;
    return fmix(h);
  }
};

/// Open-addressed map from a digram to the left node of its single
/// occurrence. Linear probing, tombstoned deletion. Occupancy (live entries
/// plus tombstones) is kept below 80% of capacity after every mutation.
template <class Hasher = SplitMixHasher>
class DigramIndex {
 public:
  static constexpr std::size_t default_capacity = 256;
  static constexpr std::size_t growth_factor = 2;

  struct MatchResult {
    bool inserted;
    NodeHandle existing;  // valid only when !inserted
  };

  explicit DigramIndex(std::size_t initial_capacity = default_capacity)
      : slots_(std::bit_ceil(initial_capacity < 8 ? std::size_t{8} : initial_capacity)) {}

  /// One probe sequence: either stores (d -> loc) or reports the stored
  /// location for d, leaving the table unchanged.
  MatchResult insert_or_match(const Digram& d, NodeHandle loc) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = hash_(d) & mask;
    std::size_t reuse = npos;
    for (;; i = (i + 1) & mask) {
      Slot& s = slots_[i];
      if (s.state == SlotState::empty) break;
      if (s.state == SlotState::tombstone) {
        if (reuse == npos) reuse = i;
      } else if (s.key == d) {
        return {false, s.location};
      }
    }
    if (reuse != npos) {
      i = reuse;
      --tombstones_;
    }
    slots_[i] = Slot{d, loc, SlotState::full};
    ++live_;
    rebuild_if_crowded();
    return {true, NodeHandle{}};
  }

  /// Removes the entry for d only when it is owned by loc.
  bool forget(const Digram& d, NodeHandle loc) {
    const std::size_t i = find_slot(d);
    if (i == npos || slots_[i].location != loc) return false;
    slots_[i].state = SlotState::tombstone;
    --live_;
    ++tombstones_;
    return true;
  }

  void update_location(const Digram& d, NodeHandle loc) {
    const std::size_t i = find_slot(d);
    if (i == npos) throw not_found_error("digram not present in index");
    slots_[i].location = loc;
  }

  std::optional<NodeHandle> find(const Digram& d) const {
    const std::size_t i = find_slot(d);
    if (i == npos) return std::nullopt;
    return slots_[i].location;
  }

  bool contains(const Digram& d) const { return find_slot(d) != npos; }

  void rebuild_if_crowded() {
    const std::size_t cap = slots_.size();
    if ((live_ + tombstones_) * 5 < cap * 4) return;
    // Tombstone-heavy tables are purged in place rather than grown.
    const std::size_t new_cap = live_ * 5 >= cap * 2 ? cap * growth_factor : cap;
    std::vector<Slot> old(new_cap);
    old.swap(slots_);
    live_ = 0;
    tombstones_ = 0;
    const std::size_t mask = new_cap - 1;
    for (const Slot& s : old) {
      if (s.state != SlotState::full) continue;
      std::size_t i = hash_(s.key) & mask;
      while (slots_[i].state != SlotState::empty) i = (i + 1) & mask;
      slots_[i] = s;
      ++live_;
    }
  }

  void clear() {
    slots_.assign(default_capacity, Slot{});
    live_ = 0;
    tombstones_ = 0;
  }

  std::size_t size() const noexcept { return live_; }
  bool empty() const noexcept { return live_ == 0; }
  std::size_t capacity() const noexcept { return slots_.size(); }
  std::size_t tombstones() const noexcept { return tombstones_; }
  double load_factor() const noexcept {
    return static_cast<double>(live_ + tombstones_) / static_cast<double>(slots_.size());
  }

  template <class F>
  void for_each(F&& f) const {
    for (const Slot& s : slots_)
      if (s.state == SlotState::full) f(s.key, s.location);
  }

 private:
  static constexpr std::size_t npos = ~std::size_t{0};

  enum class SlotState : std::uint8_t { empty, full, tombstone };

  struct Slot {
    Digram key{};
    NodeHandle location{};
    SlotState state = SlotState::empty;
  };

  std::size_t find_slot(const Digram& d) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_(d) & mask;; i = (i + 1) & mask) {
      const Slot& s = slots_[i];
      if (s.state == SlotState::empty) return npos;
      if (s.state == SlotState::full && s.key == d) return i;
    }
  }

  std::vector<Slot> slots_;
  std::size_t live_ = 0;
  std::size_t tombstones_ = 0;
  [[no_unique_address]] Hasher hash_{};
};

}  // namespace sequitur
