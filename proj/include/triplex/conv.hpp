#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triplex/corpus.hpp"
#include "triplex/lexicon.hpp"
#include "triplex/mapper.hpp"

namespace triplex {

enum class SpanRole { Subject, Predicate, Object };

struct SpanCandidate {
  SpanRole role = SpanRole::Subject;
  int turn = 0;   // 0..2
  int begin = 0;  // token span [begin,end) within the turn
  int end = 0;
  std::string text;
};

struct TripleCandidate {
  SpanCandidate subject, predicate, object;
  double score = 0.0;
};

struct TokenizedDialogue {
  const Dialogue* source = nullptr;
  std::vector<std::vector<TaggedToken>> turns;
};

TokenizedDialogue tokenize_dialogue(const Dialogue& dialogue, const Lexicon& lexicon);

// Scoring contract for ranking triple candidates; deterministic for a fixed
// configuration. The trained ranker this mirrors is out of scope; the default
// below is rule-based.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const TripleCandidate& cand, const TokenizedDialogue& dlg) const = 0;
};

struct ScorerWeights {
  double question_turn_pred = 2.0;   // predicate proposed from the middle turn
  double question_turn_obj = 2.0;    // object proposed from the middle turn
  double answer_cue_pred = 3.0;      // middle-turn predicate when the final turn opens yes/no
  double answer_cue_obj = 3.0;
  double short_answer_bonus = 1.0;   // same, when that final turn is under 6 tokens
  double answering_subject = 2.0;    // subject pronoun resolving to the answering speaker
  double adjacency = 1.5;            // object starts right after the predicate ends
  double svo_order = 1.0;            // subject before predicate in the same turn
  double spread_penalty = -2.0;      // slots drawn from all three turns
  double overlap_penalty = -100.0;   // slots overlapping in the same turn
};

class DefaultScorer : public Scorer {
 public:
  explicit DefaultScorer(ScorerWeights weights = {}) : weights_(weights) {}
  double score(const TripleCandidate& cand, const TokenizedDialogue& dlg) const override;

 private:
  ScorerWeights weights_;
};

// Noun-phrase sub-spans as subject/object candidates, verb chunks (with
// attached in/to and a trailing noun phrase for verbal objects) as predicate
// and object candidates. Throws CorpusError unless the dialogue has 3 turns.
std::vector<SpanCandidate> propose_spans(const TokenizedDialogue& dlg);

// Full cross-product of role-compatible spans, capped at kCandidateCap with
// deterministic truncation (span order).
inline constexpr std::size_t kCandidateCap = 5000;
std::vector<TripleCandidate> generate_candidates(const std::vector<SpanCandidate>& spans);

// Top-k by score, earlier spans win ties; winners pass through
// resolve_speakers and fuse_perspective. Empty candidates -> empty output.
std::vector<Extraction> rank(const std::vector<TripleCandidate>& candidates,
                             const TokenizedDialogue& dlg, const Scorer& scorer,
                             const Lexicon& lexicon, std::size_t k = 1);

// "i"/"my" in turn t -> speaker of t; "you"/"your" -> the other speaker.
Extraction resolve_speakers(Extraction extraction, const Dialogue& dialogue);

// Final-turn yes/no cues set polarity, hedges drop certainty to 0.5, and the
// numeric perspective is mapped to categorical labels
// {negative, positive, uncertain}.
Extraction fuse_perspective(Extraction extraction, const TokenizedDialogue& dlg,
                            const Lexicon& lexicon);

// Convenience pipeline over one dialogue.
std::vector<Extraction> extract_dialogue(const Dialogue& dialogue, const Lexicon& lexicon,
                                         const Scorer& scorer, std::size_t k = 1);

}  // namespace triplex
