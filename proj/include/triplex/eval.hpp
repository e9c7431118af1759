#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "triplex/corpus.hpp"
#include "triplex/lexicon.hpp"
#include "triplex/mapper.hpp"

namespace triplex {

// Symmetric slot matching: case folding, separator folding ("-", "_", " "
// equivalent) and predicate lemma folding are all on by default; "?" matches
// only "?".
struct MatchPolicy {
  bool case_fold = true;
  bool separator_fold = true;
  bool predicate_lemma_fold = true;
};

bool slots_match(const std::string& a, const std::string& b, const MatchPolicy& policy,
                 bool predicate_slot, const Lexicon* lexicon);

struct ItemVerdict {
  bool has_prediction = false;
  bool subject_ok = false;
  bool predicate_ok = false;
  bool object_ok = false;
  bool triple_ok = false;
  int perspective_attrs = 0;    // gold perspective attributes on this item
  int perspective_correct = 0;  // of which the prediction got right
};

// One gold per item; an absent prediction leaves every verdict false and
// counts as a no-triple.
ItemVerdict score_item(const GoldAnnotation& gold, const std::optional<Extraction>& pred,
                       const MatchPolicy& policy, const Lexicon* lexicon);

struct EvalReport {
  std::size_t items = 0;
  std::size_t no_triples = 0;
  double precision_triples = 0.0;
  double precision_elements = 0.0;  // mean of the three slot precisions
  double precision_subjects = 0.0;
  double precision_objects = 0.0;
  double precision_predicates = 0.0;
  std::optional<double> precision_perspective;  // absent without perspective gold
};

// Precisions are 100 * correct / total items; no-triple items stay in the
// denominator. Throws on an empty verdict list.
EvalReport aggregate(const std::vector<ItemVerdict>& verdicts);

// One row per test set, column order as the result tables.
std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

enum class IaaLevel { Subject, Predicate, Object, Triple };

// annotations[annotator][dialogue] = set of marked elements at some level.
// Mean over annotator pairs and dialogues of |A∩B|/|A∪B|; empty∪empty = 1.
// Throws std::invalid_argument with fewer than 2 annotators.
double iaa_jaccard(const std::vector<std::vector<std::set<std::string>>>& annotations);

// Mean over pairs of 2|A∩B|/(|A|+|B|); both empty = 1.
double iaa_pairwise_f(const std::vector<std::vector<std::set<std::string>>>& annotations);

// Element sets per dialogue for one annotator's file, aligned to dialogue order.
std::vector<std::set<std::string>> element_sets(const std::vector<Dialogue>& dialogues,
                                                IaaLevel level);

}  // namespace triplex
