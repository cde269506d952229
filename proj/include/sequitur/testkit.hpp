#pragma once

// Generators for the extreme-case input families and random inputs, plus
// reference oracles used by the property suites.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "sequitur/analysis.hpp"
#include "sequitur/digram_index.hpp"
#include "sequitur/errors.hpp"
#include "sequitur/grammar.hpp"

namespace sequitur::testkit {

inline constexpr std::size_t alphabet_capacity = 26;

inline char letter(std::size_t i) { return static_cast<char>('a' + i); }

/// Concatenated prefixes of the alphabet of lengths 2, 3, ..., m+1.
inline std::string gen_deepest(std::size_t m) {
  if (m < 1 || m + 1 > alphabet_capacity) throw parameter_error("deepest: m must be in 1..25");
  std::string out;
  for (std::size_t k = 2; k <= m + 1; ++k)
    for (std::size_t i = 0; i < k; ++i) out += letter(i);
  return out;
}

/// Sequence of length s*s+1 over s symbols 0..s-1 containing every ordered
/// pair exactly once: block i is i followed by (i, j) for each j > i, and a
/// final 0 closes the Eulerian circuit (for s=5: aabacadae bbcbdbe ccdce dde e a).
inline std::vector<TokenId> digram_unique_tokens(std::size_t s) {
  if (s < 1) throw parameter_error("digram-unique: alphabet must be non-empty");
  std::vector<TokenId> out;
  out.reserve(s * s + 1);
  for (std::size_t i = 0; i < s; ++i) {
    out.push_back(i);
    for (std::size_t j = i + 1; j < s; ++j) {
      out.push_back(i);
      out.push_back(j);
    }
  }
  out.push_back(0);
  return out;
}

inline std::string gen_digram_unique(std::size_t s) {
  if (s < 2 || s > alphabet_capacity) throw parameter_error("digram-unique: s must be in 2..26");
  std::string out;
  for (const TokenId t : digram_unique_tokens(s)) out += letter(t);
  return out;
}

inline std::string gen_unary(std::size_t n) { return std::string(n, 'a'); }

/// (a x_i)(a x_i) for x_i = a, b, c, ...
inline std::string gen_max_rules(std::size_t k) {
  if (k < 1 || k > alphabet_capacity) throw parameter_error("max-rules: k must be in 1..26");
  std::string out;
  for (std::size_t i = 0; i < k; ++i) {
    out += 'a';
    out += letter(i);
    out += 'a';
    out += letter(i);
  }
  return out;
}

/// Blocks yz, xyz, wxyz, ...: block k is the last k+1 letters.
inline std::string gen_cascade(std::size_t m) {
  if (m < 2 || m + 1 > alphabet_capacity) throw parameter_error("cascade: m must be in 2..25");
  std::string out;
  for (std::size_t k = 1; k <= m; ++k)
    for (std::size_t i = alphabet_capacity - (k + 1); i < alphabet_capacity; ++i) out += letter(i);
  return out;
}

inline std::string gen_repeated_block(std::size_t block_len, std::size_t reps) {
  if (block_len < 2 || block_len > alphabet_capacity) throw parameter_error("repeated-block: block length must be in 2..26");
  if (reps < 2) throw parameter_error("repeated-block: reps must be at least 2");
  std::string out;
  for (std::size_t r = 0; r < reps; ++r)
    for (std::size_t i = 0; i < block_len; ++i) out += letter(i);
  return out;
}

/// Token-id variants without the letter limit, used for timing runs.
inline std::vector<TokenId> repeated_block_tokens(std::size_t block_len, std::size_t n) {
  std::vector<TokenId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i % block_len;
  return out;
}

inline std::vector<TokenId> digram_unique_prefix(std::size_t n) {
  std::size_t s = 1;
  while (s * s + 1 < n) ++s;
  auto out = digram_unique_tokens(s);
  out.resize(n);
  return out;
}

enum class RandomShape {
  uniform,  // iid uniform over the alphabet
  skewed,   // iid with Zipf-like weights 1/(i+1)
  phrases,  // concatenation of a small vocabulary of random phrases
};

inline std::vector<TokenId> random_tokens(std::size_t n, std::size_t alphabet, std::uint64_t seed,
                                          RandomShape shape = RandomShape::uniform) {
  if (alphabet == 0) throw parameter_error("random: alphabet must be non-empty");
  std::mt19937_64 rng(seed);
  std::vector<TokenId> out;
  out.reserve(n);
  switch (shape) {
    case RandomShape::uniform: {
      std::uniform_int_distribution<TokenId> pick(0, alphabet - 1);
      while (out.size() < n) out.push_back(pick(rng));
      break;
    }
    case RandomShape::skewed: {
      std::vector<double> w(alphabet);
      for (std::size_t i = 0; i < alphabet; ++i) w[i] = 1.0 / static_cast<double>(i + 1);
      std::discrete_distribution<TokenId> pick(w.begin(), w.end());
      while (out.size() < n) out.push_back(pick(rng));
      break;
    }
    case RandomShape::phrases: {
      std::uniform_int_distribution<TokenId> sym(0, alphabet - 1);
      std::uniform_int_distribution<std::size_t> len(1, 12);
      std::vector<std::vector<TokenId>> vocab(8);
      for (auto& p : vocab) {
        p.resize(len(rng));
        for (auto& t : p) t = sym(rng);
      }
      std::uniform_int_distribution<std::size_t> which(0, vocab.size() - 1);
      while (out.size() < n) {
        for (const TokenId t : vocab[which(rng)]) {
          if (out.size() == n) break;
          out.push_back(t);
        }
      }
      break;
    }
  }
  return out;
}

inline std::string tokens_to_letters(const std::vector<TokenId>& tokens) {
  std::string out;
  for (const TokenId t : tokens) {
    if (t >= alphabet_capacity) throw parameter_error("token outside the letter alphabet");
    out += letter(t);
  }
  return out;
}

/// DigramIndex paired with a std::map mirror of every mutation.
template <class Hasher = SplitMixHasher>
class ShadowIndex {
 public:
  explicit ShadowIndex(std::size_t capacity = DigramIndex<Hasher>::default_capacity) : index_(capacity) {}

  typename DigramIndex<Hasher>::MatchResult insert_or_match(const Digram& d, NodeHandle loc) {
    const auto r = index_.insert_or_match(d, loc);
    shadow_.try_emplace(d, loc);
    return r;
  }

  bool forget(const Digram& d, NodeHandle loc) {
    const bool removed = index_.forget(d, loc);
    const auto it = shadow_.find(d);
    if (it != shadow_.end() && it->second == loc) shadow_.erase(it);
    return removed;
  }

  void update_location(const Digram& d, NodeHandle loc) {
    index_.update_location(d, loc);
    shadow_.at(d) = loc;
  }

  /// Both structures hold exactly the same (key, location) pairs.
  bool consistent() const {
    if (index_.size() != shadow_.size()) return false;
    for (const auto& [d, loc] : shadow_) {
      const auto found = index_.find(d);
      if (!found || *found != loc) return false;
    }
    bool all_known = true;
    index_.for_each([&](const Digram& d, NodeHandle) { all_known &= shadow_.contains(d); });
    return all_known;
  }

  const DigramIndex<Hasher>& index() const noexcept { return index_; }
  const std::map<Digram, NodeHandle>& shadow() const noexcept { return shadow_; }

 private:
  DigramIndex<Hasher> index_;
  std::map<Digram, NodeHandle> shadow_;
};

/// Everything recomputed from scratch by traversal.
struct FullScan {
  std::map<Digram, std::vector<NodeHandle>> digrams;
  std::unordered_map<RuleId, std::uint64_t> ref_counts;
  ConstraintReport report;
};

template <class H>
FullScan full_scan_oracle(const BasicGrammar<H>& g) {
  return {scan_digrams(g), scan_ref_counts(g), verify_constraints(g)};
}

/// Key set of the grammar's index, for step-by-step comparisons.
template <class H>
std::map<Digram, NodeHandle> index_entries(const BasicGrammar<H>& g) {
  std::map<Digram, NodeHandle> out;
  g.index().for_each([&](const Digram& d, NodeHandle loc) { out.emplace(d, loc); });
  return out;
}

}  // namespace sequitur::testkit
