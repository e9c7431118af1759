#include "doctest.h"
#include "triplex/baseline.hpp"
#include "triplex/preprocess.hpp"
#include "triplex/text.hpp"

using namespace triplex;

namespace {

const Lexicon& lex() {
  static const Lexicon instance = Lexicon::load(TRIPLEX_DATA_DIR);
  return instance;
}

std::vector<Extraction> run(const std::string& text) {
  auto norm = normalize_utterance(text, lex());
  std::vector<std::string> words;
  for (auto& t : norm.tokens)
    if (!is_punct_token(t)) words.push_back(t);
  return extract_patterns(lex().tag(words), SpeakerContext{}, lex());
}

}  // namespace

TEST_CASE("svo-active") {
  auto out = run("John likes cats");
  REQUIRE(out.size() == 1);
  CHECK(out[0].triple == Triple{"John", "like", "cats"});
  CHECK(out[0].perspective == Perspective{1.0, 1, 0.0});  // baseline default
}

TEST_CASE("s-cop-adj") {
  auto out = run("John is sick");
  REQUIRE(out.size() == 1);
  CHECK(out[0].triple == Triple{"John", "be", "sick"});
}

TEST_CASE("s-v-prepobj") {
  auto out = run("John goes to school");
  REQUIRE(out.size() == 1);
  CHECK(out[0].triple == Triple{"John", "go-to", "school"});
}

TEST_CASE("svo-passive with a by-phrase swaps the arguments") {
  auto out = run("cats are liked by John");
  REQUIRE(out.size() == 1);
  CHECK(out[0].triple == Triple{"John", "like", "cats"});
}

TEST_CASE("by-less passive keeps the surface subject") {
  auto out = run("the song was taken from the movies");
  REQUIRE(out.size() == 1);
  CHECK(out[0].triple.subject == "the-song");
  CHECK(out[0].triple.predicate == "take");
  // nothing after the participle: no extraction rather than a placeholder
  CHECK(run("the cake was eaten").empty());
}

TEST_CASE("no match yields an empty list, questions are not handled") {
  CHECK(run("who is from Mexico").empty());
  CHECK(run("from the start").empty());
}

TEST_CASE("baseline never emits placeholders and at most one extraction") {
  const char* samples[] = {
      "John likes cats",        "John is sick",     "John goes to school",
      "cats are liked by John", "the cake was eaten", "who is from Mexico",
      "I have three white cats", "do you like amsterdam", "selene might come today",
  };
  for (const char* s : samples) {
    auto out = run(s);
    CHECK(out.size() <= 1);
    for (const auto& e : out) {
      CHECK(e.triple.subject != "?");
      CHECK(e.triple.predicate != "?");
      CHECK(e.triple.object != "?");
    }
  }
}
