#pragma once

#include <string>
#include <vector>

#include "triplex/lexicon.hpp"

namespace triplex {

struct Expansion {
  std::size_t begin = 0;  // character span in the original text
  std::size_t end = 0;
  std::string replacement;
};

struct NormalizedUtterance {
  std::string original;
  std::vector<std::string> tokens;
  std::vector<Expansion> expansions;
};

// Replace contractions with their long forms, case-insensitively, keeping the
// leading capital ("Don't" -> "Do not"). The general n't rule backs up the
// table. Idempotent.
std::string expand_contractions(const std::string& text, const Lexicon& lexicon);

// Whitespace split with . , ? ! : ; detached as separate tokens. Intra-word
// hyphens stay; possessive 's is split off as its own token.
std::vector<std::string> tokenize(const std::string& text);

// Greedy longest-match merge of adjacent tokens found in the collocation
// list, joined by "-". Never merges across detached punctuation.
std::vector<std::string> merge_collocations(const std::vector<std::string>& tokens,
                                            const Lexicon& lexicon);

NormalizedUtterance normalize_utterance(const std::string& text, const Lexicon& lexicon);

}  // namespace triplex
