#include "triplex/mapper.hpp"

#include <algorithm>

#include "triplex/preprocess.hpp"
#include "triplex/text.hpp"

namespace triplex {

namespace {

const std::set<std::string>& matrix_verbs() {
  static const std::set<std::string> verbs = {"think", "know", "believe", "guess"};
  return verbs;
}

bool is_support_lemma(const std::string& lemma) {
  return lemma == "do" || lemma == "have";
}

std::string resolve_token(const TaggedToken& t, const SpeakerContext& ctx) {
  std::string lower = to_lower(t.surface);
  if (lower == "i" || lower == "me") return ctx.self_label;
  if (lower == "you") return ctx.addressee_label;
  if (lower == "my") return ctx.self_label;
  if (lower == "your") return ctx.addressee_label;
  return t.surface;
}

std::optional<std::string> resolve_possessive(const TaggedToken& t,
                                              const SpeakerContext& ctx) {
  std::string lower = to_lower(t.surface);
  if (lower == "my") return ctx.self_label;
  if (lower == "your") return ctx.addressee_label;
  return std::nullopt;
}

std::string join_resolved(const std::vector<TaggedToken>& tokens,
                          const std::vector<int>& positions, const SpeakerContext& ctx) {
  std::vector<std::string> parts;
  parts.reserve(positions.size());
  for (int p : positions) parts.push_back(resolve_token(tokens[p], ctx));
  return join(parts, "-");
}

// Verb-chain analysis over a virtual token sequence (constituent yields
// concatenated in order). Modals stay in the predicate, supporting do/have
// (and be before a participle) drop when a later verb takes over, adverbs are
// perspective material only, and prepositions right after the main verb
// attach to the predicate. Verbs after the main verb belong to the object
// ("might like reading books" -> might-like / reading-books).
struct ChainAnalysis {
  std::vector<int> modals;
  int main_pos = -1;
  std::vector<int> trailing_preps;
  std::vector<int> leftover;  // verb tokens after the main verb
  std::vector<int> object;    // everything after the chain
  bool has_any_verb = false;

  bool mappable() const { return main_pos >= 0; }
};

ChainAnalysis analyze_chain(const std::vector<TaggedToken>& tokens,
                            const std::vector<int>& positions, const Lexicon& lexicon) {
  ChainAnalysis out;
  std::size_t i = 0;
  // stray pre-verb tokens: adverbs drop, the rest is object material
  while (i < positions.size() && !is_verb_tag(tokens[positions[i]].tag)) {
    if (tokens[positions[i]].tag != Tag::RB) out.object.push_back(positions[i]);
    ++i;
  }
  std::vector<int> chain_verbs;
  while (i < positions.size()) {
    Tag tag = tokens[positions[i]].tag;
    if (is_verb_tag(tag)) {
      chain_verbs.push_back(positions[i]);
      ++i;
    } else if (tag == Tag::RB) {
      ++i;
    } else {
      break;
    }
  }
  out.has_any_verb = !chain_verbs.empty();

  for (std::size_t v = 0; v < chain_verbs.size(); ++v) {
    int pos = chain_verbs[v];
    const TaggedToken& tok = tokens[pos];
    if (out.main_pos >= 0) {
      out.leftover.push_back(pos);
      continue;
    }
    if (tok.tag == Tag::MD) {
      out.modals.push_back(pos);
      continue;
    }
    std::string lemma = lexicon.lemmatize(tok);
    bool later_verb = v + 1 < chain_verbs.size();
    if (later_verb && is_support_lemma(lemma)) continue;
    if (later_verb && lemma == "be") {
      bool participle_follows = false;
      for (std::size_t w = v + 1; w < chain_verbs.size(); ++w) {
        Tag t2 = tokens[chain_verbs[w]].tag;
        if (t2 == Tag::VBG || t2 == Tag::VBN) participle_follows = true;
      }
      if (participle_follows) continue;
    }
    out.main_pos = pos;
  }

  if (out.leftover.empty()) {
    while (i < positions.size() && is_prep_tag(tokens[positions[i]].tag)) {
      out.trailing_preps.push_back(positions[i]);
      ++i;
    }
  }
  while (i < positions.size()) {
    out.object.push_back(positions[i]);
    ++i;
  }
  return out;
}

std::string predicate_from_chain(const std::vector<TaggedToken>& tokens,
                                 const ChainAnalysis& chain, const Lexicon& lexicon) {
  std::vector<std::string> parts;
  for (int p : chain.modals) parts.push_back(lexicon.lemmatize(tokens[p]));
  parts.push_back(lexicon.lemmatize(tokens[chain.main_pos]));
  for (int p : chain.trailing_preps) parts.push_back(to_lower(tokens[p].surface));
  return join(parts, "-");
}

std::vector<int> span_positions(const ParseTree& node) {
  std::vector<int> out;
  for (int p = node.begin; p < node.end; ++p) out.push_back(p);
  return out;
}

SlotSource span_of(const std::vector<int>& positions) {
  if (positions.empty()) return SlotSource{0, -1, -1};
  return SlotSource{0, positions.front(), positions.back() + 1};
}

std::vector<int> object_positions(const ChainAnalysis& chain) {
  std::vector<int> out = chain.leftover;
  out.insert(out.end(), chain.object.begin(), chain.object.end());
  std::sort(out.begin(), out.end());
  return out;
}

Extraction map_statement_node(const ParseTree& s_node,
                              const std::vector<TaggedToken>& tokens,
                              const SpeakerContext& ctx, const Lexicon& lexicon,
                              bool embedded) {
  if (s_node.children.empty() || s_node.children[0].sym != kSymNP)
    throw MappingError("statement without a leading noun phrase");

  std::vector<int> subject = span_positions(s_node.children[0]);
  if (embedded) {
    while (!subject.empty() && to_lower(tokens[subject.front()].surface) == "that")
      subject.erase(subject.begin());
    if (subject.empty()) throw MappingError("embedded clause without a subject");
  }

  // matrix clause: "<pronoun> think/know (that) <clause>"
  if (s_node.children.size() == 3 && s_node.children[1].sym == kSymVP &&
      s_node.children[2].sym == kSymS && subject.size() == 1 &&
      tokens[subject[0]].tag == Tag::PRP) {
    ChainAnalysis vp = analyze_chain(tokens, span_positions(s_node.children[1]), lexicon);
    if (vp.mappable() &&
        matrix_verbs().count(lexicon.lemmatize(tokens[vp.main_pos])) > 0) {
      return map_statement_node(s_node.children[2], tokens, ctx, lexicon, true);
    }
  }

  std::vector<int> rest;
  for (std::size_t c = 1; c < s_node.children.size(); ++c) {
    auto child = span_positions(s_node.children[c]);
    rest.insert(rest.end(), child.begin(), child.end());
  }
  ChainAnalysis chain = analyze_chain(tokens, rest, lexicon);
  if (!chain.mappable())
    throw MappingError("no verb in statement and no copular pattern");

  Extraction out;
  out.type = UtteranceType::Statement;

  std::vector<int> object = object_positions(chain);
  auto possessor = subject.size() >= 2 ? resolve_possessive(tokens[subject[0]], ctx)
                                       : std::nullopt;
  if (possessor && lexicon.lemmatize(tokens[chain.main_pos]) == "be" &&
      chain.modals.empty()) {
    // "my best friend is he" folds the possessed phrase into the predicate
    std::vector<std::string> parts;
    for (std::size_t k = 1; k < subject.size(); ++k)
      parts.push_back(tokens[subject[k]].surface);
    parts.push_back(tokens[chain.main_pos].surface);
    out.triple.subject = *possessor;
    out.triple.predicate = join(parts, "-");
  } else {
    out.triple.subject = join_resolved(tokens, subject, ctx);
    out.triple.predicate = predicate_from_chain(tokens, chain, lexicon);
  }
  if (object.empty()) throw MappingError("statement without an object");
  out.triple.object = join_resolved(tokens, object, ctx);

  out.subject_src = span_of(subject);
  out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
  out.object_src = span_of(object);
  out.perspective = score_perspective(tokens, lexicon);
  return out;
}

const ParseTree& root_clause(const ParseTree& tree) {
  if (tree.sym == kSymU && !tree.children.empty()) return tree.children[0];
  return tree;
}

}  // namespace

std::string_view utterance_type_name(UtteranceType t) {
  switch (t) {
    case UtteranceType::Statement: return "statement";
    case UtteranceType::VerbQuestion: return "verb-question";
    case UtteranceType::WhQuestion: return "wh-question";
  }
  return "statement";
}

Perspective score_perspective(const std::vector<TaggedToken>& tokens,
                              const Lexicon& lexicon) {
  Perspective p;
  double certainty = 1.0;
  int negations = 0;
  double sentiment = 0.0;
  for (const auto& tok : tokens) {
    if (auto c = lexicon.modal_certainty(tok.lemma)) certainty = std::min(certainty, *c);
    if (lexicon.is_negation_cue(tok.surface)) ++negations;
    if (auto s = lexicon.sentiment(tok.lemma)) {
      if (std::abs(*s) > std::abs(sentiment)) sentiment = *s;
    }
  }
  p.certainty = certainty;
  p.polarity = (negations % 2 == 1) ? -1 : 1;
  p.sentiment = sentiment;
  return p;
}

Extraction map_statement(const ParseTree& tree, const std::vector<TaggedToken>& tokens,
                         const SpeakerContext& ctx, const Lexicon& lexicon) {
  const ParseTree& clause = root_clause(tree);
  if (clause.sym != kSymS) throw MappingError("tree is not a statement");
  return map_statement_node(clause, tokens, ctx, lexicon, false);
}

Extraction map_verb_question(const ParseTree& tree, const std::vector<TaggedToken>& tokens,
                             const SpeakerContext& ctx, const Lexicon& lexicon) {
  const ParseTree& clause = root_clause(tree);
  if (clause.sym != kSymQ || clause.children.empty() || clause.children[0].sym != kSymV)
    throw MappingError("tree is not a verb-question");

  const ParseTree* subject_np = nullptr;
  std::vector<int> ranges = span_positions(clause.children[0]);
  for (std::size_t c = 1; c < clause.children.size(); ++c) {
    if (!subject_np && clause.children[c].sym == kSymNP) {
      subject_np = &clause.children[c];
      continue;
    }
    auto child = span_positions(clause.children[c]);
    ranges.insert(ranges.end(), child.begin(), child.end());
  }
  if (!subject_np) throw MappingError("verb-question without a subject");

  ChainAnalysis chain = analyze_chain(tokens, ranges, lexicon);
  if (!chain.mappable()) throw MappingError("verb-question without a main verb");

  Extraction out;
  out.type = UtteranceType::VerbQuestion;
  std::vector<int> subject = span_positions(*subject_np);
  out.triple.subject = join_resolved(tokens, subject, ctx);
  out.triple.predicate = predicate_from_chain(tokens, chain, lexicon);
  std::vector<int> object = object_positions(chain);
  out.triple.object = object.empty() ? "?" : join_resolved(tokens, object, ctx);

  out.subject_src = span_of(subject);
  out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
  out.object_src = span_of(object);
  out.perspective = score_perspective(tokens, lexicon);
  out.perspective.polarity = 0;  // questioning
  return out;
}

Extraction map_wh_question(const ParseTree& tree, const std::vector<TaggedToken>& tokens,
                           const SpeakerContext& ctx, const Lexicon& lexicon) {
  const ParseTree& clause = root_clause(tree);
  if (clause.sym != kSymQ || clause.children.empty() || clause.children[0].sym != kSymW)
    throw MappingError("tree is not a WH-question");

  std::string w_word = to_lower(tokens[clause.children[0].begin].surface);

  const ParseTree* subject_np = nullptr;
  std::vector<int> ranges;
  for (std::size_t c = 1; c < clause.children.size(); ++c) {
    if (!subject_np && clause.children[c].sym == kSymNP) {
      subject_np = &clause.children[c];
      continue;
    }
    auto child = span_positions(clause.children[c]);
    ranges.insert(ranges.end(), child.begin(), child.end());
  }

  ChainAnalysis chain = analyze_chain(tokens, ranges, lexicon);
  if (!chain.mappable()) throw MappingError("WH-question without a main verb");

  Extraction out;
  out.type = UtteranceType::WhQuestion;
  std::vector<int> region = object_positions(chain);

  // copular possessive ("who is your best friend", "what is my favorite
  // food") folds the possessed phrase plus the copula into the predicate;
  // depending on the chosen parse the possessive sits in the remainder or in
  // an explicit noun-phrase child
  bool copular = lexicon.lemmatize(tokens[chain.main_pos]) == "be" && chain.modals.empty();
  std::optional<std::string> possessor;
  std::vector<int> fold;
  if (copular) {
    if (!subject_np && !region.empty()) {
      possessor = resolve_possessive(tokens[region[0]], ctx);
      if (possessor && region.size() >= 2)
        fold.assign(region.begin() + 1, region.end());
      else
        possessor.reset();
    } else if (subject_np) {
      std::vector<int> subject = span_positions(*subject_np);
      possessor = resolve_possessive(tokens[subject[0]], ctx);
      if (possessor) {
        fold.assign(subject.begin() + 1, subject.end());
        fold.insert(fold.end(), region.begin(), region.end());
      }
      if (fold.empty()) possessor.reset();
    }
  }
  if (possessor) {
    std::vector<std::string> parts;
    for (int p : fold) parts.push_back(tokens[p].surface);
    parts.push_back(tokens[chain.main_pos].surface);
    out.triple.subject = *possessor;
    out.triple.predicate = join(parts, "-");
    out.triple.object = "?";
    out.question_slot = QuestionSlot::Object;
    out.subject_src = SlotSource{0, -1, -1};
    out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
    out.object_src = SlotSource{0, -1, -1};
  } else if (subject_np) {
    std::vector<int> subject = span_positions(*subject_np);
    out.triple.subject = join_resolved(tokens, subject, ctx);
    out.triple.predicate = predicate_from_chain(tokens, chain, lexicon);
    if (region.empty()) {
      out.triple.object = "?";
      out.question_slot = QuestionSlot::Object;
    } else {
      out.triple.object = join_resolved(tokens, region, ctx);
    }
    out.subject_src = span_of(subject);
    out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
    out.object_src = span_of(region);
  } else if (w_word == "who" || w_word == "what") {
    out.triple.subject = "?";
    out.question_slot = QuestionSlot::Subject;
    out.triple.predicate = predicate_from_chain(tokens, chain, lexicon);
    // a second "?" only marks a missing object, never the question variable
    out.triple.object = region.empty() ? "?" : join_resolved(tokens, region, ctx);
    out.subject_src = SlotSource{0, -1, -1};
    out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
    out.object_src = span_of(region);
  } else {
    // where/when and friends: the remaining noun phrase is the subject
    out.triple.subject = region.empty() ? "?" : join_resolved(tokens, region, ctx);
    out.triple.predicate = predicate_from_chain(tokens, chain, lexicon);
    out.triple.object = "?";
    out.question_slot = QuestionSlot::Object;
    out.subject_src = span_of(region);
    out.predicate_src = SlotSource{0, chain.main_pos, chain.main_pos + 1};
    out.object_src = SlotSource{0, -1, -1};
  }

  out.perspective = score_perspective(tokens, lexicon);
  out.perspective.polarity = 0;
  return out;
}

std::optional<Extraction> extract_turn(const std::string& text, const Lexicon& lexicon,
                                       const SpeakerContext& ctx) {
  NormalizedUtterance norm = normalize_utterance(text, lexicon);
  std::vector<std::string> words;
  for (auto& t : norm.tokens)
    if (!is_punct_token(t)) words.push_back(t);
  if (words.empty()) return std::nullopt;

  std::vector<TaggedToken> tagged = lexicon.tag(words);
  std::vector<Tag> tags;
  tags.reserve(tagged.size());
  for (const auto& t : tagged) tags.push_back(t.tag);

  // the bundled suites never produce more than a dozen parses; the cap only
  // bounds degenerate inputs such as long determiner runs
  constexpr std::size_t kPipelineTreeCap = 2000;
  std::vector<ParseTree> trees;
  try {
    trees = parse(tags, kPipelineTreeCap);
  } catch (const ParserInputError&) {
    return std::nullopt;
  }
  if (trees.empty()) return std::nullopt;
  const ParseTree& best = select_parse(trees);
  const ParseTree& clause = best.children.empty() ? best : best.children[0];

  try {
    if (clause.sym == kSymS) return map_statement(best, tagged, ctx, lexicon);
    if (clause.sym == kSymQ && !clause.children.empty()) {
      if (clause.children[0].sym == kSymW)
        return map_wh_question(best, tagged, ctx, lexicon);
      return map_verb_question(best, tagged, ctx, lexicon);
    }
  } catch (const MappingError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace triplex
