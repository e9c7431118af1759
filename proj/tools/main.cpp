// triplex: triple and perspective extraction from dialogue turns, with the
// evaluation harness used by the test suites.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "triplex/baseline.hpp"
#include "triplex/conv.hpp"
#include "triplex/corpus.hpp"
#include "triplex/eval.hpp"
#include "triplex/grammar.hpp"
#include "triplex/llm.hpp"
#include "triplex/mapper.hpp"
#include "triplex/preprocess.hpp"
#include "triplex/record_io.hpp"
#include "triplex/text.hpp"

namespace fs = std::filesystem;
using namespace triplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string file_stem(const std::string& path) { return fs::path(path).stem().string(); }

std::string default_data_dir() {
  if (const char* env = std::getenv("TRIPLEX_DATA"); env && *env) return env;
  return TRIPLEX_DATA_DIR;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// bounded worker pool over [0, n); results land at their input index, so the
// serialized output order never depends on scheduling
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  for (auto& t : pool) t.join();
}

struct ExtractArgs {
  std::string model = "cfg";
  std::string format = "turns";
  std::string input, output;
  std::string data_dir = default_data_dir();
  std::string self_label = "lenka";
  std::string addressee_label = "agent";
  std::size_t k = 1;
  int workers = 4;
  unsigned seed = 1;
};

int run_extract(const ExtractArgs& args) {
  const bool turns = args.format == "turns";
  if ((args.model == "cfg" || args.model == "pattern") && !turns) {
    std::cerr << "model '" << args.model << "' requires --format turns\n";
    return kExitUsage;
  }
  if (args.model == "conv" && turns) {
    std::cerr << "model 'conv' requires --format dialogues\n";
    return kExitUsage;
  }

  Lexicon lexicon = Lexicon::load(args.data_dir);
  SpeakerContext ctx{args.self_label, args.addressee_label};
  std::vector<ExtractionRecord> records;

  auto llm_config = [] {
    LlmConfig config;
    if (const char* v = std::getenv("LLM_ENDPOINT")) config.endpoint = v;
    if (const char* v = std::getenv("LLM_MODEL")) config.model = v;
    return config;
  };

  auto run_llm = [&](const std::vector<std::pair<std::string, std::string>>& items) {
    LlmConfig config = llm_config();
    if (config.endpoint.empty())
      throw std::runtime_error("llm model needs LLM_ENDPOINT (and optionally LLM_MODEL)");
    // responses cached next to the output so reruns are reproducible
    const std::string cache_path = args.output + ".llmcache.json";
    nlohmann::json cache = nlohmann::json::object();
    if (std::ifstream in(cache_path); in) {
      try {
        in >> cache;
      } catch (const nlohmann::json::exception&) {
        cache = nlohmann::json::object();
      }
    }
    auto cache_key = [&](const std::string& user) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(fnv1a(
                        config.endpoint + "\x1f" + config.model + "\x1f" +
                        llm_system_prompt() + "\x1f" + user)));
      return std::string(buf);
    };

    std::vector<std::string> pending;
    std::vector<std::size_t> pending_idx;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!cache.contains(cache_key(items[i].second))) {
        pending.push_back(items[i].second);
        pending_idx.push_back(i);
      }
    if (!pending.empty()) {
      std::vector<std::string> errors;
      auto results = call_batch(config, pending, args.workers, &errors);
      for (std::size_t p = 0; p < pending.size(); ++p)
        if (results[p]) cache[cache_key(pending[p])] = results[p]->raw;
      for (const auto& e : errors) std::cerr << "llm: " << e << '\n';
      write_file(cache_path, cache.dump(2) + "\n");
    }

    for (const auto& [id, user] : items) {
      ExtractionRecord rec;
      rec.id = id;
      auto key = cache_key(user);
      if (cache.contains(key)) {
        try {
          auto raw = parse_completion(cache[key].get<std::string>());
          auto extractions = to_extractions(raw, ctx);
          if (!extractions.empty()) {
            rec.extraction = extractions.front();
            rec.extraction->utterance_id = id;
          }
        } catch (const LlmError& e) {
          std::cerr << "llm: " << e.what() << '\n';
        }
      }
      records.push_back(std::move(rec));
    }
  };

  if (turns) {
    auto items = parse_turn_suite_file(args.input);
    const std::string stem = file_stem(args.input);
    if (args.model == "llm") {
      std::vector<std::pair<std::string, std::string>> list;
      for (const auto& item : items)
        list.emplace_back(stem + ":" + std::to_string(item.line_no), item.utterance);
      run_llm(list);
    } else {
      records.resize(items.size());
      parallel_for(items.size(), args.workers, [&](std::size_t i) {
        const auto& item = items[i];
        ExtractionRecord rec;
        rec.id = stem + ":" + std::to_string(item.line_no);
        std::optional<Extraction> ext;
        if (args.model == "cfg") {
          ext = extract_turn(item.utterance, lexicon, ctx);
        } else {  // pattern
          auto norm = normalize_utterance(item.utterance, lexicon);
          std::vector<std::string> words;
          for (auto& t : norm.tokens)
            if (!is_punct_token(t)) words.push_back(t);
          auto found = extract_patterns(lexicon.tag(words), ctx, lexicon);
          if (!found.empty()) ext = found.front();
        }
        if (ext) ext->utterance_id = rec.id;
        rec.extraction = std::move(ext);
        records[i] = std::move(rec);
      });
    }
  } else {
    auto dialogues = parse_dialogue_suite_file(args.input);
    if (args.model == "llm") {
      std::vector<std::pair<std::string, std::string>> list;
      for (const auto& d : dialogues) {
        std::string joined;
        for (const auto& t : d.turns) {
          if (!joined.empty()) joined += '\n';
          joined += t.text;
        }
        list.emplace_back(d.id, joined);
      }
      run_llm(list);
    } else {  // conv
      DefaultScorer scorer;
      std::vector<std::vector<ExtractionRecord>> per_dialogue(dialogues.size());
      parallel_for(dialogues.size(), args.workers, [&](std::size_t i) {
        const auto& d = dialogues[i];
        auto extractions = extract_dialogue(d, lexicon, scorer, args.k);
        ExtractionRecord rec;
        rec.id = d.id;
        if (!extractions.empty()) rec.extraction = extractions.front();
        per_dialogue[i].push_back(std::move(rec));
        for (std::size_t r = 1; r < extractions.size(); ++r) {
          ExtractionRecord extra;
          extra.id = d.id + "#" + std::to_string(r + 1);
          extra.extraction = extractions[r];
          per_dialogue[i].push_back(std::move(extra));
        }
      });
      for (auto& batch : per_dialogue)
        for (auto& rec : batch) records.push_back(std::move(rec));
    }
  }

  std::string payload = serialize_extractions(records);
  if (args.output.empty() || args.output == "-") std::cout << payload;
  else write_file(args.output, payload);
  return kExitOk;
}

struct EvalArgs {
  std::string gold, pred;
  std::string format = "turns";
  std::string data_dir = default_data_dir();
  std::string json_out;
  bool per_category = false;
  bool no_case_fold = false;
  bool no_separator_fold = false;
  bool no_lemma_fold = false;
};

std::string category_of(const std::string& id) {
  auto colon = id.rfind(':');
  if (colon != std::string::npos) return id.substr(0, colon);
  auto dash = id.find('-');
  return dash == std::string::npos ? id : id.substr(0, dash);
}

int run_evaluate(const EvalArgs& args) {
  Lexicon lexicon = Lexicon::load(args.data_dir);
  MatchPolicy policy;
  policy.case_fold = !args.no_case_fold;
  policy.separator_fold = !args.no_separator_fold;
  policy.predicate_lemma_fold = !args.no_lemma_fold;

  // gold items in file order
  std::vector<std::pair<std::string, GoldAnnotation>> gold;
  if (args.format == "turns") {
    const std::string stem = file_stem(args.gold);
    for (const auto& item : parse_turn_suite_file(args.gold))
      gold.emplace_back(stem + ":" + std::to_string(item.line_no), item.gold);
  } else {
    for (const auto& d : parse_dialogue_suite_file(args.gold)) {
      if (d.gold.empty()) continue;
      gold.emplace_back(d.id, d.gold.front());
    }
  }
  if (gold.empty()) {
    std::cerr << "no gold items in " << args.gold << '\n';
    return kExitRuntime;
  }

  // predictions: an extraction record file, or a suite file scored as its own
  // annotations (gold-vs-gold checks)
  std::map<std::string, std::optional<Extraction>> pred;
  {
    std::ifstream probe(args.pred);
    if (!probe) {
      std::cerr << "cannot open " << args.pred << '\n';
      return kExitRuntime;
    }
    std::string first_line;
    std::getline(probe, first_line);
    if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();
    if (first_line == kExtractionHeader) {
      for (const auto& rec : parse_extractions_file(args.pred)) {
        if (rec.id.find('#') != std::string::npos) continue;  // k>1 extras
        pred[rec.id] = rec.extraction;
      }
    } else {
      auto as_extraction = [](const GoldAnnotation& g) {
        Extraction e;
        e.triple = g.triple;
        if (g.perspective) e.perspective = *g.perspective;
        e.labels = g.perspective_labels;
        return e;
      };
      if (args.format == "turns") {
        const std::string stem = file_stem(args.pred);
        for (const auto& item : parse_turn_suite_file(args.pred))
          pred[stem + ":" + std::to_string(item.line_no)] = as_extraction(item.gold);
      } else {
        for (const auto& d : parse_dialogue_suite_file(args.pred))
          if (!d.gold.empty()) pred[d.id] = as_extraction(d.gold.front());
      }
    }
  }

  // ids must align; gold stems may differ from prediction stems when the
  // files have different names, so retry alignment by line suffix
  std::vector<std::string> missing;
  bool suffix_mode = false;
  std::map<std::string, std::optional<Extraction>> by_suffix;
  if (args.format == "turns") {
    for (auto& [id, e] : pred) {
      auto colon = id.rfind(':');
      if (colon != std::string::npos) by_suffix[id.substr(colon)] = e;
    }
    std::size_t hits = 0;
    for (const auto& [id, g] : gold) {
      auto colon = id.rfind(':');
      if (colon != std::string::npos && by_suffix.count(id.substr(colon))) ++hits;
    }
    suffix_mode = hits == gold.size() && by_suffix.size() >= gold.size() &&
                  pred.count(gold.front().first) == 0;
  }
  auto lookup = [&](const std::string& id) -> std::optional<Extraction>* {
    if (suffix_mode) {
      auto colon = id.rfind(':');
      auto it = by_suffix.find(id.substr(colon));
      return it == by_suffix.end() ? nullptr : &it->second;
    }
    auto it = pred.find(id);
    return it == pred.end() ? nullptr : &it->second;
  };
  for (const auto& [id, g] : gold)
    if (!lookup(id)) missing.push_back(id);
  if (!missing.empty()) {
    std::cerr << "prediction file misses " << missing.size() << " gold ids:";
    for (const auto& id : missing) std::cerr << ' ' << id;
    std::cerr << '\n';
    return kExitRuntime;
  }

  std::vector<std::pair<std::string, EvalReport>> rows;
  auto score_range = [&](const std::string& name,
                         const std::vector<std::pair<std::string, GoldAnnotation>>& items) {
    std::vector<ItemVerdict> verdicts;
    for (const auto& [id, g] : items)
      verdicts.push_back(score_item(g, *lookup(id), policy, &lexicon));
    rows.emplace_back(name, aggregate(verdicts));
  };

  if (args.per_category) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<std::string, GoldAnnotation>>> groups;
    for (const auto& item : gold) {
      auto cat = category_of(item.first);
      if (!groups.count(cat)) order.push_back(cat);
      groups[cat].push_back(item);
    }
    for (const auto& cat : order) score_range(cat, groups[cat]);
  }
  score_range(args.per_category ? "total" : file_stem(args.gold), gold);

  std::cout << format_report_table(rows);
  if (!args.json_out.empty()) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& [name, r] : rows) {
      nlohmann::json row;
      row["test"] = name;
      row["items"] = r.items;
      row["no_triples"] = r.no_triples;
      row["precision_triples"] = r.precision_triples;
      row["precision_elements"] = r.precision_elements;
      row["precision_subjects"] = r.precision_subjects;
      row["precision_objects"] = r.precision_objects;
      row["precision_predicates"] = r.precision_predicates;
      if (r.precision_perspective) row["precision_perspective"] = *r.precision_perspective;
      doc.push_back(std::move(row));
    }
    write_file(args.json_out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

int run_iaa(const std::vector<std::string>& inputs) {
  if (inputs.size() < 2) {
    std::cerr << "iaa needs at least 2 annotation files\n";
    return kExitUsage;
  }
  std::vector<std::vector<Dialogue>> annotators;
  for (const auto& path : inputs) annotators.push_back(parse_dialogue_suite_file(path));

  std::set<std::string> reference;
  for (const auto& d : annotators[0]) reference.insert(d.id);
  for (std::size_t a = 1; a < annotators.size(); ++a) {
    std::set<std::string> ids;
    for (const auto& d : annotators[a]) ids.insert(d.id);
    if (ids != reference) {
      std::cerr << "annotation files cover different dialogue ids\n";
      return kExitRuntime;
    }
  }
  // align by id order of the first file
  for (auto& ann : annotators)
    std::sort(ann.begin(), ann.end(),
              [](const Dialogue& a, const Dialogue& b) { return a.id < b.id; });

  std::printf("%-12s %10s %12s\n", "level", "Jaccard", "Pairwise-F");
  const std::pair<const char*, IaaLevel> levels[] = {{"Subjects", IaaLevel::Subject},
                                                     {"Predicates", IaaLevel::Predicate},
                                                     {"Objects", IaaLevel::Object},
                                                     {"Triples", IaaLevel::Triple}};
  for (const auto& [name, level] : levels) {
    std::vector<std::vector<std::set<std::string>>> sets;
    for (const auto& ann : annotators) sets.push_back(element_sets(ann, level));
    std::printf("%-12s %10.3f %12.3f\n", name, iaa_jaccard(sets), iaa_pairwise_f(sets));
  }
  return kExitOk;
}

int run_stats(const std::string& input) {
  auto dialogues = parse_dialogue_suite_file(input);
  CorpusStats stats = corpus_stats(dialogues);
  if (stats.empty_corpus) std::cout << "empty corpus\n";
  std::printf("dialogues              %zu\n", stats.dialogues);
  std::printf("turns                  %zu\n", stats.turns);
  std::printf("tokens                 %zu\n", stats.tokens);
  std::printf("triples                %zu\n", stats.triples);
  std::printf("tokens per dialogue    %.2f\n", stats.tokens_per_dialogue);
  std::printf("tokens per utterance   %.2f\n", stats.tokens_per_utterance);
  std::printf("triples per dialogue   %.2f\n", stats.triples_per_dialogue);
  std::printf("triples per utterance  %.2f\n", stats.triples_per_utterance);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triple and perspective extraction from dialogue"};
  app.require_subcommand(1);

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "run an extractor over a test suite");
  extract->add_option("--model", extract_args.model, "cfg | pattern | conv | llm")
      ->check(CLI::IsMember({"cfg", "pattern", "conv", "llm"}));
  extract->add_option("--format", extract_args.format, "turns | dialogues")
      ->check(CLI::IsMember({"turns", "dialogues"}));
  extract->add_option("--input", extract_args.input, "suite file")->required();
  extract->add_option("--output", extract_args.output, "extraction records (default stdout)");
  extract->add_option("--data", extract_args.data_dir, "data directory");
  extract->add_option("--self", extract_args.self_label, "label for the speaking human");
  extract->add_option("--addressee", extract_args.addressee_label, "label for the agent");
  extract->add_option("--k", extract_args.k, "extractions per dialogue (conv)");
  extract->add_option("--workers", extract_args.workers, "parallel llm requests");
  extract->add_option("--seed", extract_args.seed, "reserved for sampling extractors");

  EvalArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold");
  evaluate->add_option("--gold", eval_args.gold, "gold suite file")->required();
  evaluate->add_option("--pred", eval_args.pred, "extraction records or suite file")->required();
  evaluate->add_option("--format", eval_args.format, "turns | dialogues")
      ->check(CLI::IsMember({"turns", "dialogues"}));
  evaluate->add_option("--data", eval_args.data_dir, "data directory");
  evaluate->add_option("--json", eval_args.json_out, "also write the report as JSON");
  evaluate->add_flag("--per-category", eval_args.per_category, "split by item-id category");
  evaluate->add_flag("--no-case-fold", eval_args.no_case_fold);
  evaluate->add_flag("--no-separator-fold", eval_args.no_separator_fold);
  evaluate->add_flag("--no-lemma-fold", eval_args.no_lemma_fold);

  std::vector<std::string> iaa_inputs;
  auto* iaa = app.add_subcommand("iaa", "inter-annotator agreement over annotation files");
  iaa->add_option("--input", iaa_inputs, "annotation files (repeat)")->required();

  std::string stats_input;
  auto* stats = app.add_subcommand("stats", "corpus statistics for a dialogue suite");
  stats->add_option("--input", stats_input, "dialogue suite file")->required();

  auto* dump = app.add_subcommand("dump-grammar", "print the phrase grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (extract->parsed()) return run_extract(extract_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (iaa->parsed()) return run_iaa(iaa_inputs);
    if (stats->parsed()) return run_stats(stats_input);
    if (dump->parsed()) {
      std::cout << Grammar::instance().text();
      return kExitOk;
    }
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
