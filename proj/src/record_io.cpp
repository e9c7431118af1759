#include "triplex/record_io.hpp"

#include <fstream>
#include <sstream>

#include "triplex/text.hpp"

namespace triplex {

const char* const kExtractionHeader =
    "id\tsubject\tpredicate\tobject\tcertainty\tpolarity\tsentiment\ttype\tlabels\tsource";

namespace {

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n') c = ' ';
  return s;
}

std::string source_field(const Extraction& e) {
  auto one = [](char slot, const SlotSource& s) {
    std::ostringstream out;
    out << slot << '@' << s.turn << ':' << s.begin << ".." << s.end;
    return out.str();
  };
  return one('s', e.subject_src) + ";" + one('p', e.predicate_src) + ";" +
         one('o', e.object_src);
}

SlotSource parse_source_one(const std::string& field) {
  SlotSource s;
  auto at = field.find('@');
  auto colon = field.find(':', at);
  auto dots = field.find("..", colon + 1);
  if (at == std::string::npos || colon == std::string::npos || dots == std::string::npos)
    return s;
  s.turn = std::stoi(field.substr(at + 1, colon - at - 1));
  s.begin = std::stoi(field.substr(colon + 1, dots - colon - 1));
  s.end = std::stoi(field.substr(dots + 2));
  return s;
}

}  // namespace

std::string serialize_extractions(const std::vector<ExtractionRecord>& records) {
  std::ostringstream out;
  out << kExtractionHeader << '\n';
  for (const auto& rec : records) {
    out << sanitize(rec.id) << '\t';
    if (!rec.extraction) {
      out << "\t\t\t\t\t\tno-triple\t\t\n";
      continue;
    }
    const Extraction& e = *rec.extraction;
    out << sanitize(e.triple.subject) << '\t' << sanitize(e.triple.predicate) << '\t'
        << sanitize(e.triple.object) << '\t' << fmt_score(e.perspective.certainty) << '\t'
        << e.perspective.polarity << '\t' << fmt_score(e.perspective.sentiment) << '\t'
        << utterance_type_name(e.type) << '\t';
    bool first = true;
    for (const auto& label : e.labels) {
      if (!first) out << ',';
      first = false;
      out << label;
    }
    out << '\t' << source_field(e) << '\n';
  }
  return out.str();
}

std::vector<ExtractionRecord> parse_extractions(std::istream& in) {
  std::vector<ExtractionRecord> out;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      first = false;
      if (line == kExtractionHeader) continue;  // header optional but expected
    }
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() < 8)
      throw CorpusError("extraction record needs at least 8 fields: " + line, line_no);
    ExtractionRecord rec;
    rec.id = fields[0];
    if (fields[7] == "no-triple") {
      out.push_back(std::move(rec));
      continue;
    }
    Extraction e;
    e.triple = Triple{fields[1], fields[2], fields[3]};
    e.perspective.certainty = std::stod(fields[4]);
    e.perspective.polarity = std::stoi(fields[5]);
    e.perspective.sentiment = std::stod(fields[6]);
    if (fields[7] == "verb-question") e.type = UtteranceType::VerbQuestion;
    else if (fields[7] == "wh-question") e.type = UtteranceType::WhQuestion;
    else e.type = UtteranceType::Statement;
    if (fields.size() > 8 && !fields[8].empty())
      for (const auto& label : split(fields[8], ','))
        if (!label.empty()) e.labels.insert(label);
    if (fields.size() > 9 && !fields[9].empty()) {
      auto parts = split(fields[9], ';');
      if (parts.size() == 3) {
        e.subject_src = parse_source_one(parts[0]);
        e.predicate_src = parse_source_one(parts[1]);
        e.object_src = parse_source_one(parts[2]);
      }
    }
    e.utterance_id = rec.id;
    rec.extraction = std::move(e);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ExtractionRecord> parse_extractions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_extractions(in);
}

}  // namespace triplex
