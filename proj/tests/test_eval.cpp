#include <cmath>
#include <random>

#include "doctest.h"
#include "triplex/eval.hpp"

using namespace triplex;

namespace {

const Lexicon& lex() {
  static const Lexicon instance = Lexicon::load(TRIPLEX_DATA_DIR);
  return instance;
}

GoldAnnotation gold_of(const std::string& s, const std::string& p, const std::string& o) {
  GoldAnnotation g;
  g.triple = Triple{s, p, o};
  return g;
}

Extraction pred_of(const std::string& s, const std::string& p, const std::string& o) {
  Extraction e;
  e.triple = Triple{s, p, o};
  return e;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

TEST_CASE("score_item: identity, slot mismatch, separator folding") {
  MatchPolicy policy;
  auto gold = gold_of("lenka", "have", "three-white-cats");

  auto same = score_item(gold, pred_of("lenka", "have", "three-white-cats"), policy, &lex());
  CHECK(same.triple_ok);

  auto wrong_pred = score_item(gold, pred_of("lenka", "own", "three-white-cats"), policy, &lex());
  CHECK(wrong_pred.subject_ok);
  CHECK(wrong_pred.object_ok);
  CHECK(!wrong_pred.predicate_ok);
  CHECK(!wrong_pred.triple_ok);

  auto folded = score_item(gold, pred_of("Lenka", "have", "three_white_cats"), policy, &lex());
  CHECK(folded.triple_ok);

  auto absent = score_item(gold, std::nullopt, policy, &lex());
  CHECK(!absent.has_prediction);
  CHECK(!absent.subject_ok);
}

TEST_CASE("placeholders match only placeholders") {
  MatchPolicy policy;
  auto gold = gold_of("?", "be-from", "Mexico");
  CHECK(score_item(gold, pred_of("?", "be-from", "Mexico"), policy, &lex()).triple_ok);
  CHECK(!score_item(gold, pred_of("lenka", "be-from", "Mexico"), policy, &lex()).subject_ok);
  CHECK(!score_item(gold_of("x", "p", "o"), pred_of("?", "p", "o"), policy, &lex()).subject_ok);
}

TEST_CASE("predicate lemma folding matches inflected predicates") {
  MatchPolicy policy;
  CHECK(slots_match("likes", "like", policy, true, &lex()));
  CHECK(slots_match("might-come", "might-come", policy, true, &lex()));
  CHECK(!slots_match("like", "hate", policy, true, &lex()));
  policy.predicate_lemma_fold = false;
  CHECK(!slots_match("likes", "like", policy, true, &lex()));
}

TEST_CASE("numeric perspectives compare after rounding to 2 decimals") {
  MatchPolicy policy;
  GoldAnnotation g = gold_of("a", "b", "c");
  g.perspective = Perspective{0.75, -1, 0.75};
  Extraction e = pred_of("a", "b", "c");
  e.perspective = Perspective{0.754, -1, 0.746};  // rounds to 0.75 both ways
  auto v = score_item(g, e, policy, &lex());
  CHECK(v.perspective_attrs == 3);
  CHECK(v.perspective_correct == 3);

  e.perspective = Perspective{0.5, -1, 0.75};
  CHECK(score_item(g, e, policy, &lex()).perspective_correct == 2);
}

TEST_CASE("categorical labels need an exact match") {
  MatchPolicy policy;
  GoldAnnotation g = gold_of("a", "b", "c");
  g.perspective_labels = {"negative"};
  Extraction e = pred_of("a", "b", "c");
  e.labels = {"negative"};
  auto v = score_item(g, e, policy, &lex());
  CHECK(v.perspective_attrs == 1);
  CHECK(v.perspective_correct == 1);
  e.labels = {"positive"};
  CHECK(score_item(g, e, policy, &lex()).perspective_correct == 0);
}

TEST_CASE("aggregate reproduces the reference arithmetic") {
  // 45 correct triples of 88 items; slot counts chosen to match the row
  std::vector<ItemVerdict> verdicts(88);
  for (int i = 0; i < 88; ++i) {
    verdicts[i].has_prediction = i >= 2;  // 2 no-triples
    verdicts[i].triple_ok = i < 45;
    verdicts[i].subject_ok = i < 68;
    verdicts[i].object_ok = i < 60;
    verdicts[i].predicate_ok = i < 49;
  }
  auto report = aggregate(verdicts);
  CHECK(round2(report.precision_triples) == doctest::Approx(51.14));
  CHECK(round2(report.precision_subjects) == doctest::Approx(77.27));
  CHECK(round2(report.precision_objects) == doctest::Approx(68.18));
  CHECK(round2(report.precision_predicates) == doctest::Approx(55.68));
  CHECK(report.precision_elements == doctest::Approx(67.04).epsilon(0.0002));
  CHECK(report.no_triples == 2);
  CHECK(!report.precision_perspective.has_value());
}

TEST_CASE("aggregate edge cases") {
  std::vector<ItemVerdict> none(5);
  auto zero = aggregate(none);
  CHECK(zero.precision_triples == doctest::Approx(0.0));
  CHECK(zero.no_triples == 5);
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("monotonicity: fixing one slot never lowers any precision") {
  std::mt19937 rng(11);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ItemVerdict> verdicts(12);
    for (auto& v : verdicts) {
      v.has_prediction = true;
      v.subject_ok = coin(rng);
      v.predicate_ok = coin(rng);
      v.object_ok = coin(rng);
      v.triple_ok = v.subject_ok && v.predicate_ok && v.object_ok;
    }
    auto before = aggregate(verdicts);
    std::uniform_int_distribution<std::size_t> pick(0, verdicts.size() - 1);
    auto& v = verdicts[pick(rng)];
    int slot = std::uniform_int_distribution<int>(0, 2)(rng);
    if (slot == 0) v.subject_ok = true;
    else if (slot == 1) v.predicate_ok = true;
    else v.object_ok = true;
    v.triple_ok = v.subject_ok && v.predicate_ok && v.object_ok;
    auto after = aggregate(verdicts);
    CHECK(after.precision_triples >= before.precision_triples - 1e-12);
    CHECK(after.precision_subjects >= before.precision_subjects - 1e-12);
    CHECK(after.precision_objects >= before.precision_objects - 1e-12);
    CHECK(after.precision_predicates >= before.precision_predicates - 1e-12);
    CHECK(after.precision_elements >= before.precision_elements - 1e-12);
  }
}

TEST_CASE("IAA set arithmetic") {
  std::vector<std::vector<std::set<std::string>>> ann = {
      {{"x", "y"}},
      {{"y", "z"}},
  };
  CHECK(iaa_jaccard(ann) == doctest::Approx(1.0 / 3.0));
  CHECK(iaa_pairwise_f(ann) == doctest::Approx(0.5));

  std::vector<std::vector<std::set<std::string>>> same = {
      {{"a"}, {"b", "c"}},
      {{"a"}, {"b", "c"}},
  };
  CHECK(iaa_jaccard(same) == doctest::Approx(1.0));
  CHECK(iaa_pairwise_f(same) == doctest::Approx(1.0));

  std::vector<std::vector<std::set<std::string>>> disjoint = {
      {{"a"}},
      {{"b"}},
  };
  CHECK(iaa_pairwise_f(disjoint) == doctest::Approx(0.0));

  std::vector<std::vector<std::set<std::string>>> both_empty = {
      {std::set<std::string>{}},
      {std::set<std::string>{}},
  };
  CHECK(iaa_jaccard(both_empty) == doctest::Approx(1.0));
  CHECK(iaa_pairwise_f(both_empty) == doctest::Approx(1.0));

  std::vector<std::vector<std::set<std::string>>> single = {{{"a"}}};
  CHECK_THROWS_AS(iaa_jaccard(single), std::invalid_argument);
}

TEST_CASE("three annotators equal the brute-force pairwise average") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> element(0, 9), set_size(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::set<std::string>>> ann(3);
    int dialogues = 4;
    for (auto& a : ann) {
      for (int d = 0; d < dialogues; ++d) {
        std::set<std::string> s;
        int n = set_size(rng);
        for (int k = 0; k < n; ++k) s.insert("e" + std::to_string(element(rng)));
        a.push_back(std::move(s));
      }
    }
    // oracle: explicit loop over every annotator pair and dialogue
    double jacc = 0, f = 0;
    int pairs = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        for (int d = 0; d < dialogues; ++d) {
          std::vector<std::string> inter;
          std::set_intersection(ann[i][d].begin(), ann[i][d].end(), ann[j][d].begin(),
                                ann[j][d].end(), std::back_inserter(inter));
          std::size_t u = ann[i][d].size() + ann[j][d].size() - inter.size();
          jacc += u == 0 ? 1.0 : static_cast<double>(inter.size()) / u;
          std::size_t denom = ann[i][d].size() + ann[j][d].size();
          f += denom == 0 ? 1.0 : 2.0 * inter.size() / static_cast<double>(denom);
          ++pairs;
        }
      }
    }
    CHECK(iaa_jaccard(ann) == doctest::Approx(jacc / pairs).epsilon(1e-12));
    CHECK(iaa_pairwise_f(ann) == doctest::Approx(f / pairs).epsilon(1e-12));
  }
}

TEST_CASE("element_sets splits by level") {
  Dialogue d;
  d.id = "x";
  d.turns = {Turn{"speaker1", "a", 0}, Turn{"speaker2", "b", 1}, Turn{"speaker1", "c", 2}};
  d.gold.push_back(GoldAnnotation{Triple{"s1", "p1", "o1"}, std::nullopt, {}});
  d.gold.push_back(GoldAnnotation{Triple{"s2", "p1", "o2"}, std::nullopt, {}});
  auto subjects = element_sets({d}, IaaLevel::Subject);
  CHECK(subjects[0] == std::set<std::string>{"s1", "s2"});
  auto predicates = element_sets({d}, IaaLevel::Predicate);
  CHECK(predicates[0] == std::set<std::string>{"p1"});
  auto triples = element_sets({d}, IaaLevel::Triple);
  CHECK(triples[0].size() == 2);
}
