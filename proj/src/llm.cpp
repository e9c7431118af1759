#include "triplex/llm.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "triplex/text.hpp"

namespace triplex {

namespace {

using nlohmann::json;

std::string next_request_id() {
  static std::atomic<std::uint64_t> counter{0};
  return "req-" + std::to_string(counter.fetch_add(1) + 1);
}

// endpoint -> (scheme://host[:port], path)
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme = endpoint.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  auto path_start = endpoint.find('/', host_start);
  if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

// first balanced {...} block, string-literal aware
std::optional<std::string> first_balanced_object(const std::string& text) {
  auto start = text.find('{');
  if (start == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}') {
      --depth;
      if (depth == 0) return text.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

double number_or(const json& j, const char* key, double fallback, bool* present = nullptr) {
  if (present) *present = false;
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) return fallback;
  if (present) *present = true;
  return it->get<double>();
}

void parse_triple_array(const json& arr, LlmParsedRecord* record) {
  for (const auto& t : arr) {
    if (!t.is_object()) continue;
    LlmTripleRecord rec;
    rec.subject = t.value("subject", std::string());
    rec.predicate = t.value("predicate", std::string());
    rec.object = t.value("object", std::string());
    rec.sentiment = number_or(t, "sentiment", 0.0);
    rec.polarity = number_or(t, "polarity", 1.0);
    rec.certainty = number_or(t, "certainty", 1.0);
    record->triples.push_back(std::move(rec));
  }
}

void collect_records(const json& node, std::vector<LlmParsedRecord>* out) {
  if (node.is_array()) {
    for (const auto& item : node) collect_records(item, out);
    return;
  }
  if (!node.is_object()) return;
  if (node.contains("dialogue")) {
    collect_records(node["dialogue"], out);
    return;
  }
  if (node.contains("triples")) {
    LlmParsedRecord record;
    record.sender = node.value("sender", std::string());
    record.text = node.value("text", std::string());
    if (node["triples"].is_array()) parse_triple_array(node["triples"], &record);
    out->push_back(std::move(record));
  }
}

}  // namespace

LlmError::LlmError(LlmErrorKind kind, std::string request_id, const std::string& msg)
    : std::runtime_error("[" + request_id + "] " + msg),
      kind_(kind),
      request_id_(std::move(request_id)) {}

const std::string& llm_system_prompt() {
  static const std::string prompt = [] {
    // embedded copy of data/llm_prompt.txt; the checksum test keeps them equal
    return std::string(
"You will analyze a dialogue and\n"
"break it down into triples consisting of a subject, predicate,and object.\n"
"Each triple should capture the essence of interactions between speakers.\n"
"Replace the predicate by its lemma, for example \"is\" and \"am\" should become \"be\".\n"
"Remove auxiliary verbs such as \"be\", \"have\", \"can\", \"might\" from predicates.\n"
"If the object starts with a preposition, concatenate the preposition to the\n"
"predicate separated by a hyphen, for example \"be-from\".\n"
"Additionally, annotate each triple with:\n"
"- Sentiment (-1 for negative, 0 for neutral, 1 for positive)\n"
"- Polarity (-1 for negation, 0 for neutral/questioning, 1 for affirmation)\n"
"- Certainty (a scale between 0 for uncertain and 1 for certain)\n"
"Ensure that predicates are semantically meaningful.\n"
"Separate multi-word items with an underscore.\n"
"Save it as a JSON with this format:\n"
"{\"dialogue\": [{\"sender\": \"human\", \"text\": \"I am from Amsterdam.\",\n"
"\"triples\": [ { \"subject\": \"I\", \"predicate\": \"be_from\", \"object\": \"Amsterdam\",\n"
"\"sentiment\": 0, \"polarity\": 1, \"certainty\": 1}]},\n"
"{\"dialogue\": [{\"sender\": \"human\", \"text\": \"lana is reading a book.\",\n"
"\"triples\": [ { \"subject\": \"lana\", \"predicate\": \"read\", \"object\": \"a-book\",\n"
"\"sentiment\": 0, \"polarity\": 1, \"certainty\": 1}]},\n"
"{\"dialogue\": [{\"sender\": \"human\", \"text\": \"You hate dogs.\",\n"
"\"triples\": [{ \"subject\": \"You\", \"predicate\": \"hate\", \"object\": \"dogs\",\n"
"\"sentiment\": -1, \"polarity\": 1, \"certainty\": 0.7}]},\n"
"{\"dialogue\": [{\"sender\": \"human\", \"text\": \"Selene does not like cheese.\",\n"
"\"triples\": [ { \"subject\": \"Selene\", \"predicate\": \"like\", \"object\": \"cheese\",\n"
"\"sentiment\": -1, \"polarity\": -1, \"certainty\": 0.5}]},\n"
"{\"sender\": \"human\",\"text\": \" Who likes cats?\",\n"
"\"triples\": [ {\"subject\": \"\", \"predicate\": \"like\", \"object\": \"cats\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]},\n"
"{\"sender\": \"human\",\"text\": \" Wen did Selene come?\",\n"
"\"triples\": [ {\"subject\": \"Selene\", \"predicate\": \"come\", \"object\": \"\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]},\n"
"{\"sender\": \"human\",\"text\": \" Where can I go?\",\n"
"\"triples\": [ {\"subject\": \"I\", \"predicate\": \"go\", \"object\": \"\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]},\n"
"{\"sender\": \"human\",\"text\": \" Who likes cats?\",\n"
"\"triples\": [ {\"subject\": \"\", \"predicate\": \"like\", \"object\": \"cats\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]},\n"
"{\"sender\": \"human\",\"text\": \" Are cats pets?\",\n"
"\"triples\": [ {\"subject\": \"cats\", \"predicate\": \"be\", \"object\": \"pets\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]}]}\n"
"{\"sender\": \"human\",\"text\": \" Do you like cats?\",\n"
"\"triples\": [ {\"subject\": \"you\", \"predicate\": \"like\", \"object\": \"cats\",\n"
"\"sentiment\": 1, \"polarity\": 1, \"certainty\": 0.1}]}]}\n"
"Do not output any other text than the JSON.\n");
  }();
  return prompt;
}

std::vector<LlmMessage> build_messages(const std::string& utterance) {
  if (trim(utterance).empty())
    throw std::invalid_argument("cannot build messages for an empty utterance");
  return {LlmMessage{"system", llm_system_prompt()}, LlmMessage{"user", utterance}};
}

LlmRawResult parse_completion(const std::string& text, std::string request_id) {
  LlmRawResult out;
  out.raw = text;
  out.request_id = std::move(request_id);

  json doc;
  bool direct = false;
  try {
    doc = json::parse(text);
    direct = true;
  } catch (const json::exception&) {
  }
  if (!direct) {
    auto block = first_balanced_object(text);
    if (!block)
      throw LlmError(LlmErrorKind::BadResponse, out.request_id,
                     "completion contains no JSON object");
    try {
      doc = json::parse(*block);
    } catch (const json::exception& e) {
      throw LlmError(LlmErrorKind::BadResponse, out.request_id,
                     std::string("unparseable JSON in completion: ") + e.what());
    }
    out.recovered_from_prose = true;
    out.warnings.push_back("prose around the JSON payload; recovered the first balanced object");
  }

  collect_records(doc, &out.records);
  if (out.records.empty())
    out.warnings.push_back("completion parsed but carried no triple records");
  return out;
}

LlmRawResult call(const LlmConfig& config, const std::vector<LlmMessage>& messages) {
  const std::string request_id = next_request_id();
  auto [base, path] = split_endpoint(config.endpoint);

  json body;
  body["model"] = config.model;
  body["temperature"] = config.temperature;
  body["messages"] = json::array();
  for (const auto& m : messages)
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});

  httplib::Client client(base);
  client.set_connection_timeout(std::chrono::duration<double>(config.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(config.timeout_s));

  httplib::Headers headers;
  if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config.backoff_ms << (attempt - 1)));

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
      auto err = res.error();
      if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
          err == httplib::Error::Write) {
        last_error = "timeout talking to " + config.endpoint;
        if (attempt == config.max_retries)
          throw LlmError(LlmErrorKind::Timeout, request_id, last_error);
      } else {
        last_error = "transport error: " + httplib::to_string(err);
      }
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status) + " from " + config.endpoint;
      continue;
    }
    if (res->status != 200)
      throw LlmError(LlmErrorKind::Http, request_id,
                     "HTTP " + std::to_string(res->status) + ": " + res->body);

    std::string content;
    try {
      json reply = json::parse(res->body);
      content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw LlmError(LlmErrorKind::BadResponse, request_id,
                     std::string("unexpected completion envelope: ") + e.what());
    }
    return parse_completion(content, request_id);
  }
  throw LlmError(LlmErrorKind::RetriesExhausted, request_id,
                 "retries exhausted: " + last_error);
}

std::vector<Extraction> to_extractions(const LlmRawResult& raw, const SpeakerContext& ctx,
                                       std::vector<std::string>* record_errors) {
  std::vector<Extraction> out;
  for (const auto& record : raw.records) {
    for (const auto& t : record.triples) {
      if (t.predicate.empty()) {
        if (record_errors)
          record_errors->push_back("record without a predicate in " + raw.request_id);
        continue;
      }
      Extraction e;
      auto normalize = [&](const std::string& s) {
        if (trim(s).empty()) return std::string("?");
        std::string folded = fold_separators(s, '-');
        std::string lower = to_lower(folded);
        if (lower == "i" || lower == "me") return ctx.self_label;
        if (lower == "you") return ctx.addressee_label;
        return folded;
      };
      e.triple.subject = normalize(t.subject);
      e.triple.predicate = fold_separators(t.predicate, '-');
      e.triple.object = normalize(t.object);
      if (e.triple.subject == "?") e.question_slot = QuestionSlot::Subject;
      else if (e.triple.object == "?") e.question_slot = QuestionSlot::Object;
      if (e.question_slot != QuestionSlot::None) e.type = UtteranceType::WhQuestion;

      auto clamp = [&](double v, double lo, double hi, const char* what) {
        if (v < lo || v > hi) {
          if (record_errors)
            record_errors->push_back(std::string("clamped out-of-range ") + what + " in " +
                                     raw.request_id);
        }
        return std::min(hi, std::max(lo, v));
      };
      e.perspective.certainty = clamp(t.certainty, 0.0, 1.0, "certainty");
      e.perspective.sentiment = clamp(t.sentiment, -1.0, 1.0, "sentiment");
      double pol = clamp(t.polarity, -1.0, 1.0, "polarity");
      e.perspective.polarity = pol > 0.5 ? 1 : (pol < -0.5 ? -1 : 0);
      e.subject_src = e.predicate_src = e.object_src = SlotSource{0, -1, -1};
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<std::optional<LlmRawResult>> call_batch(const LlmConfig& config,
                                                    const std::vector<std::string>& utterances,
                                                    int workers,
                                                    std::vector<std::string>* errors) {
  std::vector<std::optional<LlmRawResult>> results(utterances.size());
  std::vector<std::string> local_errors(utterances.size());
  std::atomic<std::size_t> next{0};
  int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(utterances.size())));

  auto worker = [&] {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= utterances.size()) return;
      try {
        results[idx] = call(config, build_messages(utterances[idx]));
      } catch (const std::exception& e) {
        local_errors[idx] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (errors)
    for (auto& msg : local_errors)
      if (!msg.empty()) errors->push_back(msg);
  return results;
}

}  // namespace triplex
