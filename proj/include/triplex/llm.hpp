#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triplex/mapper.hpp"

namespace triplex {

struct LlmConfig {
  std::string endpoint;            // e.g. http://host:port/v1/chat/completions
  std::string model;
  std::string api_key_env = "LLM_API_KEY";
  double timeout_s = 30.0;
  int max_retries = 2;
  double temperature = 0.0;
  int backoff_ms = 200;  // doubled per retry
};

struct LlmMessage {
  std::string role;
  std::string content;
};

// The instruction block sent as the system message, with its few-shot
// exemplars. Byte-identical to data/llm_prompt.txt.
const std::string& llm_system_prompt();

// [system prompt, user utterance]; throws std::invalid_argument on empty input.
std::vector<LlmMessage> build_messages(const std::string& utterance);

struct LlmTripleRecord {
  std::string subject, predicate, object;
  double sentiment = 0.0;
  double polarity = 1.0;
  double certainty = 1.0;
};

struct LlmParsedRecord {
  std::string sender;
  std::string text;
  std::vector<LlmTripleRecord> triples;
};

struct LlmRawResult {
  std::string raw;  // completion text, verbatim
  std::vector<LlmParsedRecord> records;
  bool recovered_from_prose = false;
  std::vector<std::string> warnings;
  std::string request_id;
};

enum class LlmErrorKind { Timeout, Http, RetriesExhausted, BadResponse };

class LlmError : public std::runtime_error {
 public:
  LlmError(LlmErrorKind kind, std::string request_id, const std::string& msg);
  LlmErrorKind kind() const { return kind_; }
  const std::string& request_id() const { return request_id_; }

 private:
  LlmErrorKind kind_;
  std::string request_id_;
};

// One chat completion. Retries transport errors and 5xx with exponential
// backoff; the raw text is preserved verbatim. When prose precedes the JSON,
// the first balanced object is recovered and a warning is flagged.
LlmRawResult call(const LlmConfig& config, const std::vector<LlmMessage>& messages);

// Parse the completion text alone (used by call(); exposed for tests and for
// cached responses).
LlmRawResult parse_completion(const std::string& text, std::string request_id = "");

// Underscores normalized to the canonical separator, empty subject/object
// to "?", out-of-range values clamped with a warning. Records missing a
// required field produce a record-level error; the rest still come through.
std::vector<Extraction> to_extractions(const LlmRawResult& raw, const SpeakerContext& ctx,
                                       std::vector<std::string>* record_errors = nullptr);

// Batch over utterances with bounded worker threads; results in input order.
// Transport failures surface as nullopt per item with the error recorded.
std::vector<std::optional<LlmRawResult>> call_batch(const LlmConfig& config,
                                                    const std::vector<std::string>& utterances,
                                                    int workers,
                                                    std::vector<std::string>* errors);

}  // namespace triplex
