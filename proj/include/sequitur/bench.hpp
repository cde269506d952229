#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sequitur/engine.hpp"
#include "sequitur/testkit.hpp"

namespace sequitur::bench {

enum class Family { repeated_block, digram_unique, unary, random };

inline std::optional<Family> parse_family(std::string_view s) {
  if (s == "f" || s == "repeated-block") return Family::repeated_block;
  if (s == "b" || s == "digram-unique") return Family::digram_unique;
  if (s == "c" || s == "unary") return Family::unary;
  if (s == "random") return Family::random;
  return std::nullopt;
}

inline std::string_view name(Family f) {
  switch (f) {
    case Family::repeated_block: return "f";
    case Family::digram_unique: return "b";
    case Family::unary: return "c";
    case Family::random: return "random";
  }
  return "?";
}

struct InputOptions {
  std::size_t block_len = 64;  // family f
  std::size_t alphabet = 26;   // random
  std::uint64_t seed = 1;      // random
};

/// Input of exactly `n` token ids for a timing family.
inline std::vector<TokenId> make_input(Family f, std::size_t n, const InputOptions& opt = {}) {
  switch (f) {
    case Family::repeated_block: return testkit::repeated_block_tokens(opt.block_len, n);
    case Family::digram_unique: return testkit::digram_unique_prefix(n);
    case Family::unary: return std::vector<TokenId>(n, 0);
    case Family::random: return testkit::random_tokens(n, opt.alphabet, opt.seed);
  }
  return {};
}

inline double time_once(const std::vector<TokenId>& tokens) {
  const auto t0 = std::chrono::steady_clock::now();
  Grammar g;
  for (const TokenId t : tokens) append_terminal(g, t);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

/// Median wall-clock seconds of `repeat` full inferences over `tokens`.
inline double time_inference(const std::vector<TokenId>& tokens, std::size_t repeat) {
  std::vector<double> runs;
  for (std::size_t i = 0; i < std::max<std::size_t>(repeat, 1); ++i) runs.push_back(time_once(tokens));
  return median(std::move(runs));
}

struct Row {
  std::size_t size = 0;
  double seconds = 0;
  double symbols_per_second = 0;
  std::optional<double> ratio;  // seconds / previous row's seconds
};

/// Times every size `repeat` times. Repeats are interleaved round-robin over
/// the sizes, after one untimed warm-up pass, so that a transient slowdown
/// of the host lands on all sizes alike. Each row reports the median.
inline std::vector<Row> run(Family f, const std::vector<std::size_t>& sizes, std::size_t repeat,
                            const InputOptions& opt = {}) {
  std::vector<std::vector<TokenId>> inputs;
  for (const std::size_t n : sizes) inputs.push_back(make_input(f, n, opt));
  if (!inputs.empty()) time_once(inputs.front());
  std::vector<std::vector<double>> samples(sizes.size());
  for (std::size_t r = 0; r < std::max<std::size_t>(repeat, 1); ++r)
    for (std::size_t i = 0; i < inputs.size(); ++i) samples[i].push_back(time_once(inputs[i]));

  std::vector<Row> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Row row;
    row.size = sizes[i];
    row.seconds = median(samples[i]);
    row.symbols_per_second = row.seconds > 0 ? static_cast<double>(row.size) / row.seconds : 0.0;
    if (!rows.empty() && rows.back().seconds > 0) row.ratio = row.seconds / rows.back().seconds;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sequitur::bench
