#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace triplex {

// Speaker stance on a claim: certainty in [0,1], polarity in {-1,0,1},
// sentiment in [-1,1]. Serialized in that order.
struct Perspective {
  double certainty = 1.0;
  int polarity = 1;
  double sentiment = 0.0;

  bool valid() const;
  bool operator==(const Perspective&) const = default;
};

// <subject, predicate, object>; "?" marks a question variable or missing slot.
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  bool operator==(const Triple&) const = default;
};

struct GoldAnnotation {
  Triple triple;
  std::optional<Perspective> perspective;    // turn-level numeric gold
  std::set<std::string> perspective_labels;  // conversational categorical gold
};

struct Turn {
  std::string speaker;
  std::string text;
  int index = 0;
};

struct Dialogue {
  std::string id;
  std::vector<Turn> turns;
  std::vector<GoldAnnotation> gold;
};

// One turn-suite record: `utterance: subj pred obj[: c p s]`
struct TurnItem {
  std::string utterance;
  GoldAnnotation gold;
  int line_no = 0;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::string msg, int line_no);
  int line_no() const { return line_no_; }

 private:
  int line_no_;
};

std::vector<TurnItem> parse_turn_suite(std::istream& in);
std::vector<TurnItem> parse_turn_suite_file(const std::string& path);
std::string serialize_turn_suite(const std::vector<TurnItem>& items);

std::vector<Dialogue> parse_dialogue_suite(std::istream& in);
std::vector<Dialogue> parse_dialogue_suite_file(const std::string& path);
std::string serialize_dialogue_suite(const std::vector<Dialogue>& dialogues);

struct CorpusStats {
  std::size_t dialogues = 0;
  std::size_t turns = 0;
  std::size_t tokens = 0;  // whitespace tokens, <eos> excluded
  std::size_t triples = 0;
  double tokens_per_dialogue = 0.0;
  double tokens_per_utterance = 0.0;
  double triples_per_dialogue = 0.0;
  double triples_per_utterance = 0.0;
  bool empty_corpus = false;
};

CorpusStats corpus_stats(const std::vector<Dialogue>& dialogues);

}  // namespace triplex
