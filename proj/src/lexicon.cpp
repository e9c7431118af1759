#include "triplex/lexicon.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "triplex/text.hpp"

namespace triplex {

namespace {

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "WRB", "WP",  "WDT", "VBD", "VBP", "VBZ",    "VBN", "VBG",
    "VB",  "MD",  "DT",  "CD",  "PRPPOS", "NN",  "NNS", "NNP",
    "NNPS", "PRP", "JJ", "JJR", "JJS", "RB", "IN", "TO"};

// verb base forms that the suffix rules cannot reach
const std::unordered_map<std::string, std::string>& irregular_lemma_table() {
  static const std::unordered_map<std::string, std::string> table = {
      {"is", "be"},      {"am", "be"},     {"are", "be"},    {"was", "be"},
      {"were", "be"},    {"been", "be"},   {"being", "be"},  {"'s", "be"},
      {"has", "have"},   {"had", "have"},  {"having", "have"},
      {"does", "do"},    {"did", "do"},    {"done", "do"},
      {"cannot", "can"}, {"goes", "go"},   {"went", "go"},   {"gone", "go"},
      {"came", "come"},  {"saw", "see"},   {"seen", "see"},  {"said", "say"},
      {"taken", "take"}, {"took", "take"}, {"given", "give"}, {"gave", "give"},
      {"made", "make"},  {"got", "get"},   {"gotten", "get"}, {"left", "leave"},
      {"met", "meet"},   {"told", "tell"}, {"thought", "think"},
      {"knew", "know"},  {"known", "know"}, {"felt", "feel"},
      {"men", "man"},    {"women", "woman"}, {"children", "child"},
      {"people", "person"},
  };
  return table;
}

const std::set<std::string>& negation_cue_table() {
  static const std::set<std::string> cues = {
      "not", "cannot", "never", "no", "none", "nothing", "nobody", "neither",
      "nor", "nope", "nah"};
  return cues;
}

const std::unordered_map<std::string, std::string>& semantic_category_table() {
  static const std::unordered_map<std::string, std::string> table = {
      {"swimming", "activity"},  {"reading", "activity"},  {"dancing", "activity"},
      {"cooking", "activity"},   {"singing", "activity"},  {"running", "activity"},
      {"teacher", "profession"}, {"doctor", "profession"}, {"waitress", "profession"},
      {"artist", "profession"},  {"nurse", "profession"},  {"engineer", "profession"},
      {"mother", "kinship"},     {"father", "kinship"},    {"sister", "kinship"},
      {"brother", "kinship"},    {"friend", "kinship"},    {"cousin", "kinship"},
      {"amsterdam", "location"}, {"paris", "location"},    {"mexico", "location"},
      {"england", "location"},   {"school", "location"},   {"university", "location"},
      {"home", "location"},      {"city", "location"},
  };
  return table;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file " + path);
  return in;
}

bool data_line(const std::string& raw, std::string* out) {
  std::string line = raw;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.empty() || line[0] == '#') return false;
  *out = line;
  return true;
}

bool all_digits(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

}  // namespace

std::string_view tag_name(Tag t) { return kTagNames[static_cast<int>(t)]; }

std::optional<Tag> tag_from_name(std::string_view name) {
  for (int i = 0; i < kTagCount; ++i)
    if (kTagNames[i] == name) return static_cast<Tag>(i);
  return std::nullopt;
}

bool is_verb_tag(Tag t) {
  switch (t) {
    case Tag::VBD: case Tag::VBP: case Tag::VBZ: case Tag::VBN:
    case Tag::VBG: case Tag::VB: case Tag::MD:
      return true;
    default:
      return false;
  }
}

bool is_nominal_tag(Tag t) {
  switch (t) {
    case Tag::NN: case Tag::NNS: case Tag::NNP: case Tag::NNPS: case Tag::PRP:
      return true;
    default:
      return false;
  }
}

bool is_prep_tag(Tag t) { return t == Tag::IN || t == Tag::TO; }

Lexicon Lexicon::load(const std::string& data_dir) {
  Lexicon lex;
  const std::string dir = data_dir + "/lexicon/";
  std::string line, payload;

  {
    auto in = open_or_throw(dir + "pos.tsv");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      auto fields = split(payload, '\t');
      if (fields.size() != 2) throw std::runtime_error("bad pos.tsv line: " + payload);
      auto tag = tag_from_name(fields[1]);
      if (!tag) throw std::runtime_error("unknown tag in pos.tsv: " + fields[1]);
      lex.pos_[to_lower(fields[0])] = *tag;
    }
  }
  {
    auto in = open_or_throw(dir + "modals.tsv");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      auto fields = split(payload, '\t');
      if (fields.size() != 2) throw std::runtime_error("bad modals.tsv line: " + payload);
      double v = std::stod(fields[1]);
      if (v < 0.0 || v > 1.0) throw std::runtime_error("modal certainty out of range: " + payload);
      lex.modals_[to_lower(fields[0])] = v;
    }
  }
  {
    auto in = open_or_throw(dir + "sentiment.tsv");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      auto fields = split(payload, '\t');
      if (fields.size() != 2) throw std::runtime_error("bad sentiment.tsv line: " + payload);
      double v = std::stod(fields[1]);
      if (v < -1.0 || v > 1.0) throw std::runtime_error("sentiment out of range: " + payload);
      lex.sentiment_[to_lower(fields[0])] = v;
    }
  }
  {
    auto in = open_or_throw(dir + "collocations.txt");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      auto entry = to_lower(trim(payload));
      lex.collocations_.insert(entry);
      lex.max_collocation_len_ = std::max(lex.max_collocation_len_, split_ws(entry).size());
    }
  }
  {
    auto in = open_or_throw(dir + "predicates.txt");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      lex.predicates_.insert(trim(payload));
    }
  }
  {
    auto in = open_or_throw(dir + "contractions.tsv");
    while (std::getline(in, line)) {
      if (!data_line(line, &payload)) continue;
      auto fields = split(payload, '\t');
      if (fields.size() != 2) throw std::runtime_error("bad contractions.tsv line: " + payload);
      lex.contractions_.emplace_back(to_lower(fields[0]), fields[1]);
    }
  }
  lex.negation_cues_ = negation_cue_table();
  lex.semantic_categories_ = semantic_category_table();
  lex.irregular_lemmas_ = irregular_lemma_table();
  return lex;
}

std::optional<Tag> Lexicon::lookup_pos(std::string_view word) const {
  auto it = pos_.find(to_lower(word));
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

std::vector<TaggedToken> Lexicon::tag(const std::vector<std::string>& tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& w = tokens[i];
    TaggedToken t;
    t.surface = w;

    // merged collocations carry hyphens where the list has spaces
    std::string dehyphenated = fold_separators(to_lower(w), ' ');
    if (w.find('-') != std::string::npos && collocations_.count(dehyphenated)) {
      t.tag = Tag::NNP;
      t.mwe = true;
      t.lemma = lemmatize(t);
      out.push_back(std::move(t));
      continue;
    }

    if (auto tag = lookup_pos(w)) {
      t.tag = *tag;
    } else if (i > 0 && std::isupper(static_cast<unsigned char>(w[0]))) {
      t.tag = Tag::NNP;
    } else if (all_digits(w)) {
      t.tag = Tag::CD;
    } else if (ends_with(to_lower(w), "ing") && w.size() > 4) {
      t.tag = Tag::VBG;
    } else if (ends_with(to_lower(w), "ed") && w.size() > 3) {
      t.tag = Tag::VBD;
    } else if (ends_with(to_lower(w), "s") && w.size() > 2) {
      // -s on a known noun is a plural, on a known verb a 3rd person form
      std::string stem = to_lower(w).substr(0, w.size() - 1);
      std::string es_stem =
          ends_with(to_lower(w), "es") ? to_lower(w).substr(0, w.size() - 2) : "";
      std::string ies_stem =
          ends_with(to_lower(w), "ies") ? to_lower(w).substr(0, w.size() - 3) + "y" : "";
      auto stem_tag = [&](const std::string& cand) -> std::optional<Tag> {
        if (cand.empty()) return std::nullopt;
        return lookup_pos(cand);
      };
      std::optional<Tag> st = stem_tag(stem);
      if (!st) st = stem_tag(es_stem);
      if (!st) st = stem_tag(ies_stem);
      if (st && (*st == Tag::NN || *st == Tag::NNP)) {
        t.tag = *st == Tag::NN ? Tag::NNS : Tag::NNPS;
      } else if (st && is_verb_tag(*st)) {
        t.tag = Tag::VBZ;
      } else {
        t.tag = Tag::NNS;
      }
    } else {
      t.tag = Tag::NN;
    }
    t.lemma = lemmatize(t);
    out.push_back(std::move(t));
  }
  return out;
}

std::string Lexicon::lemmatize(const TaggedToken& token) const {
  std::string w = to_lower(token.surface);
  auto irr = irregular_lemmas_.find(w);
  if (irr != irregular_lemmas_.end()) return irr->second;

  auto known_verb = [&](const std::string& cand) {
    auto t = lookup_pos(cand);
    return t && is_verb_tag(*t);
  };
  auto known_noun = [&](const std::string& cand) {
    auto t = lookup_pos(cand);
    return t && (*t == Tag::NN || *t == Tag::NNP);
  };

  switch (token.tag) {
    case Tag::VBZ:
    case Tag::VBP:
    case Tag::VBD:
    case Tag::VBN:
    case Tag::VBG: {
      if (ends_with(w, "ing") && w.size() > 4) {
        std::string stem = w.substr(0, w.size() - 3);
        if (known_verb(stem)) return stem;
        if (known_verb(stem + "e")) return stem + "e";
        if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
          std::string undoubled = stem.substr(0, stem.size() - 1);
          if (known_verb(undoubled)) return undoubled;
        }
        return stem;
      }
      if (ends_with(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
      if (ends_with(w, "ed") && w.size() > 3) {
        std::string stem = w.substr(0, w.size() - 2);
        if (known_verb(stem)) return stem;
        if (known_verb(stem + "e")) return stem + "e";
        if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
          std::string undoubled = stem.substr(0, stem.size() - 1);
          if (known_verb(undoubled)) return undoubled;
        }
        return stem;
      }
      if (ends_with(w, "s") && w.size() > 2 && !ends_with(w, "ss")) {
        std::string stripped = w.substr(0, w.size() - 1);
        if (known_verb(stripped)) return stripped;
        if (ends_with(w, "es") && known_verb(w.substr(0, w.size() - 2)))
          return w.substr(0, w.size() - 2);
        if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
        return stripped;
      }
      return w;
    }
    case Tag::NNS:
    case Tag::NNPS: {
      if (ends_with(w, "s") && w.size() > 2 && !ends_with(w, "ss")) {
        std::string stripped = w.substr(0, w.size() - 1);
        if (known_noun(stripped)) return stripped;
        if (ends_with(w, "es") && known_noun(w.substr(0, w.size() - 2)))
          return w.substr(0, w.size() - 2);
        if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
        return stripped;
      }
      return w;
    }
    default:
      return w;
  }
}

std::optional<double> Lexicon::modal_certainty(std::string_view lemma) const {
  auto it = modals_.find(to_lower(lemma));
  if (it == modals_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Lexicon::sentiment(std::string_view word) const {
  auto it = sentiment_.find(to_lower(word));
  if (it == sentiment_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::is_negation_cue(std::string_view word) const {
  return negation_cues_.count(to_lower(word)) > 0;
}

bool Lexicon::is_collocation(std::string_view space_joined) const {
  return collocations_.count(to_lower(space_joined)) > 0;
}

bool Lexicon::has_predicate(std::string_view predicate) const {
  return predicates_.count(fold_separators(to_lower(predicate), ' ')) > 0;
}

std::optional<std::string> Lexicon::semantic_category(std::string_view word) const {
  auto it = semantic_categories_.find(to_lower(word));
  if (it == semantic_categories_.end()) return std::nullopt;
  return it->second;
}

}  // namespace triplex
