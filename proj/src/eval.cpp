#include "triplex/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "triplex/text.hpp"

namespace triplex {

namespace {

std::string fold_slot(const std::string& s, const MatchPolicy& policy, bool predicate_slot,
                      const Lexicon* lexicon) {
  std::string out = s;
  if (policy.case_fold) out = to_lower(out);
  if (policy.separator_fold) out = fold_separators(out, '-');
  if (predicate_slot && policy.predicate_lemma_fold && lexicon && !out.empty()) {
    auto parts = split(out, '-');
    auto tagged = lexicon->tag(parts);
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (is_verb_tag(tagged[i].tag)) parts[i] = tagged[i].lemma;
    out = join(parts, "-");
  }
  return out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string pair_key(const std::string& a, const std::string& b) { return a + "\x1f" + b; }

double mean_over_pairs(const std::vector<std::vector<std::set<std::string>>>& annotations,
                       double (*pair_value)(const std::set<std::string>&,
                                            const std::set<std::string>&)) {
  if (annotations.size() < 2)
    throw std::invalid_argument("inter-annotator agreement needs at least 2 annotators");
  std::size_t dialogues = annotations[0].size();
  for (const auto& a : annotations)
    if (a.size() != dialogues)
      throw std::invalid_argument("annotators cover different dialogue counts");
  if (dialogues == 0) throw std::invalid_argument("no dialogues to compare");

  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    for (std::size_t j = i + 1; j < annotations.size(); ++j) {
      for (std::size_t d = 0; d < dialogues; ++d) {
        total += pair_value(annotations[i][d], annotations[j][d]);
        ++count;
      }
    }
  }
  return total / static_cast<double>(count);
}

double jaccard_pair(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double pairwise_f_pair(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return 2.0 * static_cast<double>(inter) / static_cast<double>(a.size() + b.size());
}

}  // namespace

bool slots_match(const std::string& a, const std::string& b, const MatchPolicy& policy,
                 bool predicate_slot, const Lexicon* lexicon) {
  if (a == "?" || b == "?") return a == b;
  return fold_slot(a, policy, predicate_slot, lexicon) ==
         fold_slot(b, policy, predicate_slot, lexicon);
}

ItemVerdict score_item(const GoldAnnotation& gold, const std::optional<Extraction>& pred,
                       const MatchPolicy& policy, const Lexicon* lexicon) {
  ItemVerdict v;
  if (gold.perspective) v.perspective_attrs = 3;
  else v.perspective_attrs = static_cast<int>(gold.perspective_labels.size());

  if (!pred) return v;
  v.has_prediction = true;
  v.subject_ok = slots_match(gold.triple.subject, pred->triple.subject, policy, false, lexicon);
  v.predicate_ok =
      slots_match(gold.triple.predicate, pred->triple.predicate, policy, true, lexicon);
  v.object_ok = slots_match(gold.triple.object, pred->triple.object, policy, false, lexicon);
  v.triple_ok = v.subject_ok && v.predicate_ok && v.object_ok;

  if (gold.perspective) {
    // numeric perspectives compare exactly after rounding to 2 decimals
    if (round2(gold.perspective->certainty) == round2(pred->perspective.certainty))
      ++v.perspective_correct;
    if (gold.perspective->polarity == pred->perspective.polarity) ++v.perspective_correct;
    if (round2(gold.perspective->sentiment) == round2(pred->perspective.sentiment))
      ++v.perspective_correct;
  } else {
    for (const auto& label : gold.perspective_labels)
      if (pred->labels.count(label)) ++v.perspective_correct;
  }
  return v;
}

EvalReport aggregate(const std::vector<ItemVerdict>& verdicts) {
  if (verdicts.empty()) throw std::invalid_argument("cannot aggregate zero items");
  EvalReport report;
  report.items = verdicts.size();
  std::size_t triples = 0, subjects = 0, objects = 0, predicates = 0;
  long persp_attrs = 0, persp_correct = 0;
  for (const auto& v : verdicts) {
    if (!v.has_prediction) ++report.no_triples;
    triples += v.triple_ok;
    subjects += v.subject_ok;
    objects += v.object_ok;
    predicates += v.predicate_ok;
    persp_attrs += v.perspective_attrs;
    persp_correct += v.perspective_correct;
  }
  const double n = static_cast<double>(report.items);
  report.precision_triples = 100.0 * triples / n;
  report.precision_subjects = 100.0 * subjects / n;
  report.precision_objects = 100.0 * objects / n;
  report.precision_predicates = 100.0 * predicates / n;
  report.precision_elements =
      (report.precision_subjects + report.precision_objects + report.precision_predicates) /
      3.0;
  if (persp_attrs > 0)
    report.precision_perspective = 100.0 * persp_correct / static_cast<double>(persp_attrs);
  return report;
}

std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::ostringstream out;
  bool any_persp = std::any_of(rows.begin(), rows.end(), [](const auto& r) {
    return r.second.precision_perspective.has_value();
  });
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-24s %6s %9s %9s %9s %9s %9s %9s", "test", "items",
                "no-trip", "triples", "elements", "subjects", "objects", "predicates");
  out << buf;
  if (any_persp) out << "  perspective";
  out << '\n';
  for (const auto& [name, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-24s %6zu %9zu %9.2f %9.2f %9.2f %9.2f %9.2f",
                  name.c_str(), r.items, r.no_triples, r.precision_triples,
                  r.precision_elements, r.precision_subjects, r.precision_objects,
                  r.precision_predicates);
    out << buf;
    if (any_persp) {
      if (r.precision_perspective) {
        std::snprintf(buf, sizeof(buf), "  %11.2f", *r.precision_perspective);
        out << buf;
      } else {
        out << "            -";
      }
    }
    out << '\n';
  }
  return out.str();
}

double iaa_jaccard(const std::vector<std::vector<std::set<std::string>>>& annotations) {
  return mean_over_pairs(annotations, jaccard_pair);
}

double iaa_pairwise_f(const std::vector<std::vector<std::set<std::string>>>& annotations) {
  return mean_over_pairs(annotations, pairwise_f_pair);
}

std::vector<std::set<std::string>> element_sets(const std::vector<Dialogue>& dialogues,
                                                IaaLevel level) {
  std::vector<std::set<std::string>> out;
  out.reserve(dialogues.size());
  for (const auto& d : dialogues) {
    std::set<std::string> elements;
    for (const auto& g : d.gold) {
      switch (level) {
        case IaaLevel::Subject: elements.insert(g.triple.subject); break;
        case IaaLevel::Predicate: elements.insert(g.triple.predicate); break;
        case IaaLevel::Object: elements.insert(g.triple.object); break;
        case IaaLevel::Triple:
          elements.insert(pair_key(pair_key(g.triple.subject, g.triple.predicate),
                                   g.triple.object));
          break;
      }
    }
    out.push_back(std::move(elements));
  }
  return out;
}

}  // namespace triplex
