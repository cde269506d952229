#pragma once

#include <string_view>

#include "sequitur/analysis.hpp"
#include "sequitur/digram_index.hpp"
#include "sequitur/engine.hpp"
#include "sequitur/errors.hpp"
#include "sequitur/grammar.hpp"
#include "sequitur/render.hpp"
#include "sequitur/symbol.hpp"
#include "sequitur/text_format.hpp"
#include "sequitur/tokens.hpp"

namespace sequitur {

template <class Hasher = SplitMixHasher>
struct InferredText {
  BasicGrammar<Hasher> grammar;
  TokenTable table;
};

/// Tokenizes `text` and streams it through the engine.
template <class Hasher = SplitMixHasher>
InferredText<Hasher> infer_text(std::string_view text, TokenMode mode = TokenMode::byte) {
  Tokenized t = tokenize(text, mode);
  return {infer<Hasher>(t.tokens), std::move(t.table)};
}

}  // namespace sequitur
