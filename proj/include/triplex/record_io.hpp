#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triplex/mapper.hpp"

namespace triplex {

// Tab-separated extraction records, one per input item. no-triple items keep
// their row with empty slots so gold/prediction alignment stays total.
// Columns: id subject predicate object certainty polarity sentiment type labels source
struct ExtractionRecord {
  std::string id;
  std::optional<Extraction> extraction;  // nullopt = no-triple
};

extern const char* const kExtractionHeader;

std::string serialize_extractions(const std::vector<ExtractionRecord>& records);
std::vector<ExtractionRecord> parse_extractions(std::istream& in);
std::vector<ExtractionRecord> parse_extractions_file(const std::string& path);

}  // namespace triplex
