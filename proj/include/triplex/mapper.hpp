#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "triplex/corpus.hpp"
#include "triplex/lexicon.hpp"
#include "triplex/parser.hpp"

namespace triplex {

// Who "I" and "you" denote in a single-turn utterance.
struct SpeakerContext {
  std::string self_label = "lenka";
  std::string addressee_label = "agent";
};

enum class UtteranceType { Statement, VerbQuestion, WhQuestion };

std::string_view utterance_type_name(UtteranceType t);

struct SlotSource {
  int turn = 0;   // 0 for single turns
  int begin = 0;  // token span [begin,end); -1/-1 when synthesized
  int end = 0;
};

enum class QuestionSlot { None, Subject, Object };

struct Extraction {
  Triple triple;
  Perspective perspective;
  UtteranceType type = UtteranceType::Statement;
  std::string utterance_id;
  SlotSource subject_src, predicate_src, object_src;
  std::set<std::string> labels;  // conversational categorical labels
  // which slot holds the question variable (WH-questions designate exactly one)
  QuestionSlot question_slot = QuestionSlot::None;
};

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Perspective from the full token sequence: certainty = min over modal cues
// (default 1), polarity = -1 iff an odd number of negation cues, sentiment =
// max-magnitude lexicon hit (default 0, earliest hit wins ties).
Perspective score_perspective(const std::vector<TaggedToken>& tokens,
                              const Lexicon& lexicon);

// tree must be rooted U -> S. Matrix "I think/know (that) ..." clauses are
// stripped (their certainty lands in the perspective); the embedded clause is
// mapped. Throws MappingError when no verb and no copular pattern exists.
Extraction map_statement(const ParseTree& tree,
                         const std::vector<TaggedToken>& tokens,
                         const SpeakerContext& ctx, const Lexicon& lexicon);

// tree rooted U -> Q with a leading V: polar question. Modals stay in the
// predicate ("can-make"); supporting do/does/did is dropped.
Extraction map_verb_question(const ParseTree& tree,
                             const std::vector<TaggedToken>& tokens,
                             const SpeakerContext& ctx, const Lexicon& lexicon);

// tree rooted U -> Q with a leading W: WH-question with one variable slot.
Extraction map_wh_question(const ParseTree& tree,
                           const std::vector<TaggedToken>& tokens,
                           const SpeakerContext& ctx, const Lexicon& lexicon);

// Full single-turn pipeline: normalize -> tag -> parse -> select -> map.
// nullopt when the turn has no parse or no mappable triple.
std::optional<Extraction> extract_turn(const std::string& text,
                                       const Lexicon& lexicon,
                                       const SpeakerContext& ctx);

}  // namespace triplex
