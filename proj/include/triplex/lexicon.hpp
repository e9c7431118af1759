#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace triplex {

// Penn-style tags restricted to the grammar's terminal alphabet. The
// possessive pronoun tag is spelled PRPPOS.
enum class Tag : int {
  WRB, WP, WDT, VBD, VBP, VBZ, VBN, VBG, VB, MD, DT, CD,
  PRPPOS, NN, NNS, NNP, NNPS, PRP, JJ, JJR, JJS, RB, IN, TO,
};

inline constexpr int kTagCount = 24;

std::string_view tag_name(Tag t);
std::optional<Tag> tag_from_name(std::string_view name);

bool is_verb_tag(Tag t);     // VBD VBP VBZ VBN VBG VB MD
bool is_nominal_tag(Tag t);  // NN NNS NNP NNPS PRP
bool is_prep_tag(Tag t);     // IN TO

struct TaggedToken {
  std::string surface;
  std::string lemma;
  Tag tag = Tag::NN;
  bool mwe = false;  // merged collocation
};

// Immutable lexical resources: one POS tag per word, modal certainty values,
// negation cues, sentiment values, collocations, semantic categories, the
// predicate inventory and the contraction table. Loaded once from plain text
// files; safe for concurrent reads afterwards.
class Lexicon {
 public:
  // data_dir must contain lexicon/{pos.tsv,modals.tsv,sentiment.tsv,
  // collocations.txt,predicates.txt,contractions.tsv}
  static Lexicon load(const std::string& data_dir);

  // Deterministic and total. Lexicon lookup first; unknown capitalized
  // non-initial tokens become NNP; digits CD; then suffix heuristics
  // (-ing -> VBG, -ed -> VBD, -s on a known noun -> NNS / known verb -> VBZ);
  // default NN. Merged collocations (hyphenated entries of the collocation
  // list) get NNP with mwe=true.
  std::vector<TaggedToken> tag(const std::vector<std::string>& tokens) const;

  // Base form for verbs (irregular table + suffix rules), singular for plural
  // nouns; other tags unchanged. Idempotent on its own output.
  std::string lemmatize(const TaggedToken& token) const;

  std::optional<double> modal_certainty(std::string_view lemma) const;
  std::optional<double> sentiment(std::string_view word) const;
  bool is_negation_cue(std::string_view word) const;

  bool is_collocation(std::string_view space_joined) const;
  std::size_t max_collocation_len() const { return max_collocation_len_; }

  // normalized predicate inventory; lookup folds separators and case.
  bool has_predicate(std::string_view predicate) const;
  const std::set<std::string>& predicate_inventory() const { return predicates_; }

  std::optional<std::string> semantic_category(std::string_view word) const;

  const std::vector<std::pair<std::string, std::string>>& contractions() const {
    return contractions_;
  }

 private:
  Lexicon() = default;

  std::optional<Tag> lookup_pos(std::string_view word) const;

  std::unordered_map<std::string, Tag> pos_;
  std::unordered_map<std::string, double> modals_;
  std::unordered_map<std::string, double> sentiment_;
  std::set<std::string> negation_cues_;
  std::set<std::string> collocations_;
  std::size_t max_collocation_len_ = 0;
  std::set<std::string> predicates_;
  std::unordered_map<std::string, std::string> semantic_categories_;
  std::unordered_map<std::string, std::string> irregular_lemmas_;
  std::vector<std::pair<std::string, std::string>> contractions_;
};

}  // namespace triplex
