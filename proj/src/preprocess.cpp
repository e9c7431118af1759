#include "triplex/preprocess.hpp"

#include <cctype>

#include "triplex/text.hpp"

namespace triplex {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-';
}

std::string match_case(const std::string& replacement, const std::string& original) {
  if (replacement.empty() || original.empty()) return replacement;
  if (std::isupper(static_cast<unsigned char>(original[0]))) {
    std::string out = replacement;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
  }
  return replacement;
}

}  // namespace

std::string expand_contractions(const std::string& text, const Lexicon& lexicon) {
  std::string out;
  std::vector<Expansion> ignored;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_word_char(text[end])) ++end;
    std::string word = text.substr(i, end - i);
    std::string lower = to_lower(word);

    bool replaced = false;
    for (const auto& [from, to] : lexicon.contractions()) {
      if (lower == from) {
        out.append(match_case(to, word));
        replaced = true;
        break;
      }
    }
    // general n't fallback: wordn't -> word not
    if (!replaced && lower.size() > 3 && lower.ends_with("n't")) {
      out.append(word.substr(0, word.size() - 3));
      out.append(" not");
      replaced = true;
    }
    if (!replaced) out.append(word);
    i = end;
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& chunk : split_ws(text)) {
    std::size_t i = 0;
    std::string current;
    auto flush = [&]() {
      if (!current.empty()) {
        // split a trailing possessive clitic into its own token
        if (current.size() > 2 && current.ends_with("'s")) {
          out.push_back(current.substr(0, current.size() - 2));
          out.push_back("'s");
        } else {
          out.push_back(current);
        }
        current.clear();
      }
    };
    while (i < chunk.size()) {
      char c = chunk[i];
      if (c == '.' || c == ',' || c == '?' || c == '!' || c == ':' || c == ';') {
        flush();
        out.push_back(std::string(1, c));
      } else {
        current.push_back(c);
      }
      ++i;
    }
    flush();
  }
  return out;
}

std::vector<std::string> merge_collocations(const std::vector<std::string>& tokens,
                                            const Lexicon& lexicon) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t max_len = lexicon.max_collocation_len();
  while (i < tokens.size()) {
    std::size_t best = 0;
    if (!is_punct_token(tokens[i])) {
      std::size_t limit = std::min(max_len, tokens.size() - i);
      for (std::size_t len = limit; len >= 2; --len) {
        bool crosses_punct = false;
        std::string joined;
        for (std::size_t k = 0; k < len; ++k) {
          if (is_punct_token(tokens[i + k])) {
            crosses_punct = true;
            break;
          }
          if (k) joined.push_back(' ');
          joined.append(to_lower(tokens[i + k]));
        }
        if (!crosses_punct && lexicon.is_collocation(joined)) {
          best = len;
          break;
        }
      }
    }
    if (best >= 2) {
      std::string merged;
      for (std::size_t k = 0; k < best; ++k) {
        if (k) merged.push_back('-');
        merged.append(tokens[i + k]);
      }
      out.push_back(std::move(merged));
      i += best;
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

NormalizedUtterance normalize_utterance(const std::string& text, const Lexicon& lexicon) {
  NormalizedUtterance norm;
  norm.original = text;
  std::string expanded = expand_contractions(text, lexicon);
  if (expanded != text) {
    Expansion e;
    e.begin = 0;
    e.end = text.size();
    e.replacement = expanded;
    norm.expansions.push_back(std::move(e));
  }
  norm.tokens = merge_collocations(tokenize(expanded), lexicon);
  return norm;
}

}  // namespace triplex
