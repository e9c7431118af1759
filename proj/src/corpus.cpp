#include "triplex/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "triplex/text.hpp"

namespace triplex {

namespace {

constexpr const char* kEos = "<eos>";

// multiword elements arrive with either separator; "-" is canonical
std::string canonical_element(std::string s) {
  for (char& c : s)
    if (c == '_') c = '-';
  return s;
}

bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    *out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

Perspective parse_perspective(const std::vector<std::string>& fields, int line_no) {
  double c, p, s;
  if (!parse_number(fields[0], &c) || !parse_number(fields[1], &p) ||
      !parse_number(fields[2], &s))
    throw CorpusError("malformed perspective block: " + join(fields, " "), line_no);
  Perspective out{c, static_cast<int>(p), s};
  if (p != std::floor(p) || !out.valid())
    throw CorpusError("perspective value out of range: " + join(fields, " "), line_no);
  return out;
}

}  // namespace

bool Perspective::valid() const {
  return certainty >= 0.0 && certainty <= 1.0 && (polarity == -1 || polarity == 0 || polarity == 1) &&
         sentiment >= -1.0 && sentiment <= 1.0;
}

CorpusError::CorpusError(std::string msg, int line_no)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line_no_(line_no) {}

std::vector<TurnItem> parse_turn_suite(std::istream& in) {
  std::vector<TurnItem> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    auto first = line.find(": ");
    if (first == std::string::npos)
      throw CorpusError("expected `utterance: subject predicate object`: " + line, line_no);
    TurnItem item;
    item.line_no = line_no;
    item.utterance = line.substr(0, first);
    std::string rest = line.substr(first + 2);

    std::string triple_part = rest;
    auto second = rest.find(": ");
    if (second != std::string::npos) {
      triple_part = rest.substr(0, second);
      auto fields = split_ws(rest.substr(second + 2));
      if (fields.size() != 3)
        throw CorpusError("expected three perspective values: " + line, line_no);
      item.gold.perspective = parse_perspective(fields, line_no);
    }

    auto elements = split_ws(triple_part);
    if (elements.size() != 3)
      throw CorpusError("expected three triple elements: " + line, line_no);
    item.gold.triple = Triple{canonical_element(elements[0]), canonical_element(elements[1]),
                              canonical_element(elements[2])};
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<TurnItem> parse_turn_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_turn_suite(in);
}

std::string serialize_turn_suite(const std::vector<TurnItem>& items) {
  std::ostringstream out;
  for (const auto& item : items) {
    out << item.utterance << ": " << item.gold.triple.subject << ' '
        << item.gold.triple.predicate << ' ' << item.gold.triple.object;
    if (item.gold.perspective) {
      const auto& p = *item.gold.perspective;
      out << ": " << fmt_score(p.certainty) << ' ' << p.polarity << ' '
          << fmt_score(p.sentiment);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_eos(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(kEos, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + std::string(kEos).size();
  }
  return out;
}

Dialogue finish_record(std::vector<std::string>& lines, int first_line_no) {
  Dialogue d;
  if (lines.size() < 3)
    throw CorpusError("record needs id, text and at least one triple line", first_line_no);
  d.id = lines[0];
  auto segments = split_eos(lines[1]);
  if (segments.size() != 3)
    throw CorpusError("expected 3 <eos>-separated turns, got " +
                          std::to_string(segments.size()) + " in " + d.id,
                      first_line_no + 1);
  for (int i = 0; i < 3; ++i) {
    if (trim(segments[i]).empty())
      throw CorpusError("empty turn " + std::to_string(i) + " in " + d.id, first_line_no + 1);
    d.turns.push_back(Turn{i % 2 == 0 ? "speaker1" : "speaker2", segments[i], i});
  }
  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto fields = split(lines[li], ',');
    if (fields.size() < 3)
      throw CorpusError("triple line needs subject,predicate,object: " + lines[li],
                        first_line_no + static_cast<int>(li));
    GoldAnnotation gold;
    for (std::size_t f = 0; f < 3; ++f)
      if (trim(fields[f]).empty())
        throw CorpusError("empty triple field in: " + lines[li],
                          first_line_no + static_cast<int>(li));
    gold.triple = Triple{canonical_element(fields[0]), canonical_element(fields[1]),
                         canonical_element(fields[2])};
    for (std::size_t f = 3; f < fields.size(); ++f) {
      if (trim(fields[f]).empty())
        throw CorpusError("empty label field in: " + lines[li],
                          first_line_no + static_cast<int>(li));
      gold.perspective_labels.insert(fields[f]);
    }
    d.gold.push_back(std::move(gold));
  }
  lines.clear();
  return d;
}

}  // namespace

std::vector<Dialogue> parse_dialogue_suite(std::istream& in) {
  std::vector<Dialogue> dialogues;
  std::vector<std::string> record;
  std::string line;
  int line_no = 0;
  int record_start = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      if (!record.empty()) dialogues.push_back(finish_record(record, record_start));
      record_start = line_no + 1;
      continue;
    }
    if (record.empty()) record_start = line_no;
    record.push_back(line);
  }
  if (!record.empty()) dialogues.push_back(finish_record(record, record_start));
  return dialogues;
}

std::vector<Dialogue> parse_dialogue_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dialogue_suite(in);
}

std::string serialize_dialogue_suite(const std::vector<Dialogue>& dialogues) {
  std::ostringstream out;
  for (std::size_t i = 0; i < dialogues.size(); ++i) {
    const auto& d = dialogues[i];
    if (i) out << '\n';
    out << d.id << '\n';
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      if (t) out << kEos;
      out << d.turns[t].text;
    }
    out << '\n';
    for (const auto& g : d.gold) {
      out << g.triple.subject << ',' << g.triple.predicate << ',' << g.triple.object;
      for (const auto& label : g.perspective_labels) out << ',' << label;
      out << '\n';
    }
  }
  return out.str();
}

CorpusStats corpus_stats(const std::vector<Dialogue>& dialogues) {
  CorpusStats stats;
  stats.dialogues = dialogues.size();
  if (dialogues.empty()) {
    stats.empty_corpus = true;
    return stats;
  }
  for (const auto& d : dialogues) {
    stats.turns += d.turns.size();
    stats.triples += d.gold.size();
    for (const auto& t : d.turns) stats.tokens += split_ws(t.text).size();
  }
  stats.tokens_per_dialogue = static_cast<double>(stats.tokens) / stats.dialogues;
  stats.tokens_per_utterance =
      stats.turns ? static_cast<double>(stats.tokens) / stats.turns : 0.0;
  stats.triples_per_dialogue = static_cast<double>(stats.triples) / stats.dialogues;
  stats.triples_per_utterance =
      stats.turns ? static_cast<double>(stats.triples) / stats.turns : 0.0;
  return stats;
}

}  // namespace triplex
