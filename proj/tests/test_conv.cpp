#include <algorithm>

#include "doctest.h"
#include "triplex/conv.hpp"
#include "triplex/eval.hpp"

using namespace triplex;

namespace {

const Lexicon& lex() {
  static const Lexicon instance = Lexicon::load(TRIPLEX_DATA_DIR);
  return instance;
}

std::vector<Dialogue> fixtures() {
  return parse_dialogue_suite_file(TRIPLEX_DATA_DIR "/fixtures/dialogue_suite.txt");
}

const Dialogue& by_id(const std::vector<Dialogue>& all, const std::string& id) {
  for (const auto& d : all)
    if (d.id == id) return d;
  REQUIRE(false);
  return all[0];
}

bool has_span(const std::vector<SpanCandidate>& spans, SpanRole role, int turn,
              const std::string& text) {
  return std::any_of(spans.begin(), spans.end(), [&](const SpanCandidate& s) {
    return s.role == role && s.turn == turn && s.text == text;
  });
}

}  // namespace

TEST_CASE("span proposal covers the question turn") {
  auto all = fixtures();
  auto dlg = tokenize_dialogue(by_id(all, "personachat-valid-000114"), lex());
  auto spans = propose_spans(dlg);
  CHECK(has_span(spans, SpanRole::Predicate, 1, "have"));
  CHECK(has_span(spans, SpanRole::Object, 1, "kids"));
  CHECK(has_span(spans, SpanRole::Subject, 1, "you"));
}

TEST_CASE("a verbless turn proposes no predicate") {
  Dialogue d;
  d.id = "t";
  d.turns = {Turn{"speaker1", "hello there", 0}, Turn{"speaker2", "kids today", 1},
             Turn{"speaker1", "no.", 2}};
  auto dlg = tokenize_dialogue(d, lex());
  auto spans = propose_spans(dlg);
  for (const auto& s : spans)
    if (s.role == SpanRole::Predicate) CHECK(s.turn != 2);
}

TEST_CASE("verbal predicates include sub-chunks like-to and go-to") {
  auto all = fixtures();
  auto dlg = tokenize_dialogue(by_id(all, "circa-train-002436"), lex());
  auto spans = propose_spans(dlg);
  CHECK(has_span(spans, SpanRole::Predicate, 1, "like to"));
  CHECK(has_span(spans, SpanRole::Predicate, 1, "go to"));
  CHECK(has_span(spans, SpanRole::Object, 1, "go to the movies"));
}

TEST_CASE("non-3-turn dialogues are rejected") {
  Dialogue d;
  d.id = "short";
  d.turns = {Turn{"speaker1", "hi", 0}, Turn{"speaker2", "hello", 1}};
  auto dlg = tokenize_dialogue(d, lex());
  CHECK_THROWS_AS(propose_spans(dlg), CorpusError);
}

TEST_CASE("candidate generation is the role cross-product under the cap") {
  std::vector<SpanCandidate> spans;
  for (int i = 0; i < 2; ++i) spans.push_back({SpanRole::Subject, 0, i, i + 1, "s"});
  for (int i = 0; i < 2; ++i) spans.push_back({SpanRole::Predicate, 1, i, i + 1, "p"});
  for (int i = 0; i < 2; ++i) spans.push_back({SpanRole::Object, 2, i, i + 1, "o"});
  CHECK(generate_candidates(spans).size() == 8);

  std::vector<SpanCandidate> no_pred;
  for (int i = 0; i < 3; ++i) no_pred.push_back({SpanRole::Subject, 0, i, i + 1, "s"});
  CHECK(generate_candidates(no_pred).empty());
}

TEST_CASE("candidate generation truncates deterministically at the cap") {
  std::vector<SpanCandidate> spans;
  for (int i = 0; i < 18; ++i) {
    spans.push_back({SpanRole::Subject, 0, i, i + 1, "s"});
    spans.push_back({SpanRole::Predicate, 1, i, i + 1, "p"});
    spans.push_back({SpanRole::Object, 2, i, i + 1, "o"});
  }
  auto a = generate_candidates(spans);  // 18^3 = 5832 before the cap
  CHECK(a.size() == kCandidateCap);
  auto b = generate_candidates(spans);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); i += 500) {
    CHECK(a[i].subject.begin == b[i].subject.begin);
    CHECK(a[i].predicate.begin == b[i].predicate.begin);
    CHECK(a[i].object.begin == b[i].object.begin);
  }
}

TEST_CASE("the kids candidate set contains the gold combination") {
  auto all = fixtures();
  auto dlg = tokenize_dialogue(by_id(all, "personachat-valid-000114"), lex());
  auto candidates = generate_candidates(propose_spans(dlg));
  bool found = std::any_of(candidates.begin(), candidates.end(), [](const TripleCandidate& c) {
    return c.subject.text == "you" && c.predicate.text == "have" && c.object.text == "kids";
  });
  CHECK(found);
}

TEST_CASE("the four released dialogues reproduce their gold triples") {
  DefaultScorer scorer;
  MatchPolicy policy;
  for (const auto& d : fixtures()) {
    auto out = extract_dialogue(d, lex(), scorer, 1);
    REQUIRE_MESSAGE(out.size() == 1, d.id);
    const auto& gold = d.gold[0];
    CHECK_MESSAGE(slots_match(gold.triple.subject, out[0].triple.subject, policy, false,
                              &lex()), d.id, " subject ", out[0].triple.subject);
    CHECK_MESSAGE(slots_match(gold.triple.predicate, out[0].triple.predicate, policy, true,
                              &lex()), d.id, " predicate ", out[0].triple.predicate);
    CHECK_MESSAGE(slots_match(gold.triple.object, out[0].triple.object, policy, false,
                              &lex()), d.id, " object ", out[0].triple.object);
    CHECK(out[0].labels.count("negative") == 1);
    CHECK(out[0].labels == gold.perspective_labels);
  }
}

TEST_CASE("ranking is deterministic and bounded by k") {
  DefaultScorer scorer;
  auto all = fixtures();
  for (std::size_t k : {1u, 3u}) {
    auto a = extract_dialogue(all[0], lex(), scorer, k);
    auto b = extract_dialogue(all[0], lex(), scorer, k);
    CHECK(a.size() <= k);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].triple == b[i].triple);
  }
}

TEST_CASE("empty candidates flag a no-triple") {
  Dialogue d;
  d.id = "none";
  d.turns = {Turn{"speaker1", "!", 0}, Turn{"speaker2", "?", 1}, Turn{"speaker1", ".", 2}};
  DefaultScorer scorer;
  CHECK(extract_dialogue(d, lex(), scorer, 1).empty());
}

TEST_CASE("a single candidate is returned regardless of score") {
  Dialogue d;
  d.id = "one";
  d.turns = {Turn{"speaker1", "cats", 0}, Turn{"speaker2", "sleep", 1},
             Turn{"speaker1", "today", 2}};
  // spans: subject/object from cats/today, predicate only from "sleep"
  DefaultScorer scorer;
  auto out = extract_dialogue(d, lex(), scorer, 1);
  CHECK(out.size() == 1);
}

TEST_CASE("speaker resolution follows turn parity") {
  auto all = fixtures();
  const auto& kids = by_id(all, "personachat-valid-000114");

  Extraction e;
  e.triple = Triple{"you", "have", "kids"};
  e.subject_src = SlotSource{1, 2, 3};  // "you" inside the middle turn
  e.object_src = SlotSource{1, 4, 5};
  CHECK(resolve_speakers(e, kids).triple.subject == "speaker1");

  Extraction i_final;
  i_final.triple = Triple{"i", "have", "kids"};
  i_final.subject_src = SlotSource{2, 0, 1};
  CHECK(resolve_speakers(i_final, kids).triple.subject == "speaker1");

  Extraction i_middle;
  i_middle.triple = Triple{"i", "have", "kids"};
  i_middle.subject_src = SlotSource{1, 0, 1};
  CHECK(resolve_speakers(i_middle, kids).triple.subject == "speaker2");

  Extraction noun;
  noun.triple = Triple{"the city", "be", "busy"};
  noun.subject_src = SlotSource{2, 0, 2};
  CHECK(resolve_speakers(noun, kids).triple.subject == "the city");
}

TEST_CASE("relabeling speakers relabels exactly the substituted slots") {
  auto all = fixtures();
  Dialogue kids = by_id(all, "personachat-valid-000114");
  DefaultScorer scorer;
  auto base = extract_dialogue(kids, lex(), scorer, 1);

  Dialogue swapped = kids;
  for (auto& t : swapped.turns)
    t.speaker = t.speaker == "speaker1" ? "speaker2" : "speaker1";
  auto renamed = extract_dialogue(swapped, lex(), scorer, 1);

  REQUIRE(base.size() == 1);
  REQUIRE(renamed.size() == 1);
  CHECK(base[0].triple.subject == "speaker1");
  CHECK(renamed[0].triple.subject == "speaker2");
  CHECK(base[0].triple.predicate == renamed[0].triple.predicate);
  CHECK(base[0].triple.object == renamed[0].triple.object);
}

TEST_CASE("final-turn cues drive polarity and hedges lower certainty") {
  auto make = [&](const std::string& final_text) {
    Dialogue d;
    d.id = "cue";
    d.turns = {Turn{"speaker1", "i like cats", 0}, Turn{"speaker2", "do you like cats ?", 1},
               Turn{"speaker1", final_text, 2}};
    auto dlg = tokenize_dialogue(d, lex());
    Extraction e;
    e.triple = Triple{"you", "like", "cats"};
    return fuse_perspective(e, dlg, lex());
  };
  CHECK(make("no, i'm busy").perspective.polarity == -1);
  CHECK(make("no i sadly do not").perspective.polarity == -1);
  CHECK(make("yes, it's me.").perspective.polarity == 1);
  CHECK(make("yes, it's me.").labels.count("positive") == 1);
  CHECK(make("maybe later").perspective.certainty == doctest::Approx(0.5));
  CHECK(make("maybe later").labels.count("uncertain") == 1);
  CHECK(make("i think so").perspective.certainty == doctest::Approx(0.5));
  CHECK(make("i do not").perspective.polarity == -1);  // negation cue without a leading no
}
