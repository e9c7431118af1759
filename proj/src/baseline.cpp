#include "triplex/baseline.hpp"

#include "triplex/text.hpp"

namespace triplex {

namespace {

bool nominal_run_tag(Tag t) {
  return is_nominal_tag(t) || t == Tag::DT || t == Tag::CD || t == Tag::PRPPOS ||
         t == Tag::JJ || t == Tag::JJR || t == Tag::JJS;
}

struct Run {
  int begin = 0;
  int end = 0;
  bool has_nominal = false;
};

// maximal determiner/adjective/noun runs; a usable phrase needs a nominal
std::vector<Run> noun_runs(const std::vector<TaggedToken>& tokens) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!nominal_run_tag(tokens[i].tag) || is_punct_token(tokens[i].surface)) {
      ++i;
      continue;
    }
    Run run{static_cast<int>(i), static_cast<int>(i), false};
    while (i < tokens.size() && nominal_run_tag(tokens[i].tag) &&
           !is_punct_token(tokens[i].surface)) {
      run.has_nominal = run.has_nominal || is_nominal_tag(tokens[i].tag);
      ++i;
    }
    run.end = static_cast<int>(i);
    runs.push_back(run);
  }
  return runs;
}

std::string resolve_join(const std::vector<TaggedToken>& tokens, int begin, int end,
                         const SpeakerContext& ctx) {
  std::vector<std::string> parts;
  for (int p = begin; p < end; ++p) {
    std::string lower = to_lower(tokens[p].surface);
    if (lower == "i" || lower == "me")
      parts.push_back(ctx.self_label);
    else if (lower == "you")
      parts.push_back(ctx.addressee_label);
    else if (lower == "my")
      parts.push_back(ctx.self_label);
    else if (lower == "your")
      parts.push_back(ctx.addressee_label);
    else
      parts.push_back(tokens[p].surface);
  }
  return join(parts, "-");
}

Extraction make(const std::vector<TaggedToken>& tokens, const SpeakerContext& ctx,
                int sb, int se, std::string predicate, int ob, int oe) {
  Extraction out;
  out.type = UtteranceType::Statement;
  out.triple.subject = resolve_join(tokens, sb, se, ctx);
  out.triple.predicate = std::move(predicate);
  out.triple.object = resolve_join(tokens, ob, oe, ctx);
  out.subject_src = SlotSource{0, sb, se};
  out.object_src = SlotSource{0, ob, oe};
  return out;  // baseline leaves the default perspective
}

}  // namespace

std::vector<Extraction> extract_patterns(const std::vector<TaggedToken>& tokens,
                                         const SpeakerContext& ctx,
                                         const Lexicon& lexicon) {
  auto runs = noun_runs(tokens);
  if (runs.empty() || !runs[0].has_nominal || runs[0].begin != 0) return {};
  const Run& subj = runs[0];

  // first verb group after the subject
  int v = subj.end;
  while (v < static_cast<int>(tokens.size()) && !is_verb_tag(tokens[v].tag)) ++v;
  if (v >= static_cast<int>(tokens.size())) return {};
  int vend = v;
  while (vend < static_cast<int>(tokens.size()) &&
         (is_verb_tag(tokens[vend].tag) || tokens[vend].tag == Tag::RB))
    ++vend;

  std::vector<int> verbs;
  for (int p = v; p < vend; ++p)
    if (is_verb_tag(tokens[p].tag)) verbs.push_back(p);
  if (verbs.empty()) return {};

  auto lemma = [&](int p) { return lexicon.lemmatize(tokens[p]); };
  int last_verb = verbs.back();
  // the suffix tagger marks regular participles VBD, so a be-verb followed by
  // VBD counts as passive too
  bool passive = verbs.size() >= 2 && lemma(verbs[verbs.size() - 2]) == "be" &&
                 (tokens[last_verb].tag == Tag::VBN || tokens[last_verb].tag == Tag::VBD);

  // 1. svo-active: <NP> <verb> <NP-with-nominal>
  if (!passive) {
    int main = verbs.back();
    for (const Run& r : runs) {
      if (r.begin >= vend && r.has_nominal) {
        if (r.begin == vend)  // object right after the verb group
          return {make(tokens, ctx, subj.begin, subj.end, lemma(main), r.begin, r.end)};
        break;
      }
    }
  }

  // 2. s-cop-adj: <NP> <be> <adjective>
  if (lemma(verbs.back()) == "be" && vend < static_cast<int>(tokens.size())) {
    Tag t = tokens[vend].tag;
    if (t == Tag::JJ || t == Tag::JJR || t == Tag::JJS) {
      int ae = vend;
      while (ae < static_cast<int>(tokens.size()) &&
             (tokens[ae].tag == Tag::JJ || tokens[ae].tag == Tag::JJR ||
              tokens[ae].tag == Tag::JJS))
        ++ae;
      return {make(tokens, ctx, subj.begin, subj.end, "be", vend, ae)};
    }
  }

  // 3. s-v-prepobj: <NP> <verb> <in/to> <NP>
  if (!passive && vend < static_cast<int>(tokens.size()) &&
      is_prep_tag(tokens[vend].tag)) {
    int pend = vend;
    while (pend < static_cast<int>(tokens.size()) && is_prep_tag(tokens[pend].tag)) ++pend;
    for (const Run& r : runs) {
      if (r.begin == pend && r.has_nominal) {
        std::string pred = lemma(verbs.back());
        for (int p = vend; p < pend; ++p) pred += "-" + to_lower(tokens[p].surface);
        return {make(tokens, ctx, subj.begin, subj.end, pred, r.begin, r.end)};
      }
    }
  }

  // 4. svo-passive: <NP> <be> <VBN> [by <NP>]
  if (passive) {
    int after = vend;
    if (after < static_cast<int>(tokens.size()) &&
        to_lower(tokens[after].surface) == "by") {
      for (const Run& r : runs) {
        if (r.begin == after + 1 && r.has_nominal)
          return {make(tokens, ctx, r.begin, r.end, lemma(last_verb), subj.begin, subj.end)};
      }
    }
    // no by-phrase: surface subject stays in the subject slot; skip when
    // nothing follows the participle (the baseline never emits "?")
    for (const Run& r : runs) {
      if (r.begin >= after && r.has_nominal)
        return {make(tokens, ctx, subj.begin, subj.end, lemma(last_verb), r.begin, r.end)};
    }
    return {};
  }

  return {};
}

}  // namespace triplex
