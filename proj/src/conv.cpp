#include "triplex/conv.hpp"

#include <algorithm>

#include "triplex/preprocess.hpp"
#include "triplex/text.hpp"

namespace triplex {

namespace {

bool nominal_chunk_tag(Tag t) {
  return is_nominal_tag(t) || t == Tag::DT || t == Tag::CD || t == Tag::PRPPOS ||
         t == Tag::JJ || t == Tag::JJR || t == Tag::JJS;
}

bool verbal_chunk_tag(Tag t) {
  return is_verb_tag(t) || t == Tag::RB || is_prep_tag(t);
}

std::string span_text(const std::vector<TaggedToken>& tokens, int begin, int end) {
  std::vector<std::string> parts;
  for (int p = begin; p < end; ++p) parts.push_back(tokens[p].surface);
  return join(parts, " ");
}

bool is_yes_cue(std::string_view w) {
  auto lower = to_lower(w);
  return lower == "yes" || lower == "yeah" || lower == "yep" || lower == "yup" ||
         lower == "sure";
}

bool is_no_cue(std::string_view w) {
  auto lower = to_lower(w);
  return lower == "no" || lower == "nope" || lower == "nah";
}

}  // namespace

TokenizedDialogue tokenize_dialogue(const Dialogue& dialogue, const Lexicon& lexicon) {
  TokenizedDialogue out;
  out.source = &dialogue;
  for (const auto& turn : dialogue.turns) {
    auto norm = normalize_utterance(turn.text, lexicon);
    out.turns.push_back(lexicon.tag(norm.tokens));
  }
  return out;
}

std::vector<SpanCandidate> propose_spans(const TokenizedDialogue& dlg) {
  if (!dlg.source || dlg.source->turns.size() != 3)
    throw CorpusError("conversational extraction expects exactly 3 turns", 0);

  std::vector<SpanCandidate> out;
  for (int t = 0; t < 3; ++t) {
    const auto& tokens = dlg.turns[t];
    const int n = static_cast<int>(tokens.size());

    auto add = [&](SpanRole role, int b, int e) {
      out.push_back(SpanCandidate{role, t, b, e, span_text(tokens, b, e)});
    };

    // noun-phrase runs; prefixes ending at a nominal plus bare nominals make
    // subject and object candidates ("the movies tonight" also yields
    // "the movies" and "movies")
    int i = 0;
    while (i < n) {
      if (!nominal_chunk_tag(tokens[i].tag) || is_punct_token(tokens[i].surface)) {
        ++i;
        continue;
      }
      int b = i;
      while (i < n && nominal_chunk_tag(tokens[i].tag) && !is_punct_token(tokens[i].surface))
        ++i;
      for (int se = b + 1; se <= i; ++se) {
        if (!is_nominal_tag(tokens[se - 1].tag)) continue;
        add(SpanRole::Subject, b, se);
        add(SpanRole::Object, b, se);
      }
      for (int p = b; p < i; ++p) {
        if (p == b || !is_nominal_tag(tokens[p].tag)) continue;
        add(SpanRole::Subject, p, p + 1);
        add(SpanRole::Object, p, p + 1);
      }
    }

    // verb runs (with attached in/to); sub-spans starting at a verb are
    // predicate candidates, and a run ending in a preposition followed by a
    // noun phrase yields a verbal object candidate ("go to the movies")
    i = 0;
    while (i < n) {
      if (!verbal_chunk_tag(tokens[i].tag) || !is_verb_tag(tokens[i].tag)) {
        ++i;
        continue;
      }
      int b = i;
      int e = i;
      while (e < n && verbal_chunk_tag(tokens[e].tag) && !is_punct_token(tokens[e].surface))
        ++e;
      // trim trailing adverbs from the run frame
      for (int sb = b; sb < e; ++sb) {
        if (!is_verb_tag(tokens[sb].tag)) continue;
        for (int se = sb + 1; se <= e; ++se) {
          Tag last = tokens[se - 1].tag;
          if (!is_verb_tag(last) && !is_prep_tag(last)) continue;
          bool has_verb = false;
          for (int p = sb; p < se; ++p)
            if (is_verb_tag(tokens[p].tag)) has_verb = true;
          if (!has_verb) continue;
          add(SpanRole::Predicate, sb, se);
          if (is_prep_tag(last) && se < n && nominal_chunk_tag(tokens[se].tag)) {
            int oe = se;
            while (oe < n && nominal_chunk_tag(tokens[oe].tag) &&
                   !is_punct_token(tokens[oe].surface))
              ++oe;
            for (int cut = se + 1; cut <= oe; ++cut) {
              bool has_nominal = false;
              for (int p = se; p < cut; ++p)
                if (is_nominal_tag(tokens[p].tag)) has_nominal = true;
              if (has_nominal) add(SpanRole::Object, sb, cut);
            }
          }
        }
      }
      i = e > i ? e : i + 1;
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const SpanCandidate& a, const SpanCandidate& b) {
    if (a.role != b.role) return static_cast<int>(a.role) < static_cast<int>(b.role);
    if (a.turn != b.turn) return a.turn < b.turn;
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end < b.end;
  });
  return out;
}

std::vector<TripleCandidate> generate_candidates(const std::vector<SpanCandidate>& spans) {
  std::vector<SpanCandidate> subjects, predicates, objects;
  for (const auto& s : spans) {
    if (s.role == SpanRole::Subject) subjects.push_back(s);
    else if (s.role == SpanRole::Predicate) predicates.push_back(s);
    else objects.push_back(s);
  }
  std::vector<TripleCandidate> out;
  for (const auto& s : subjects) {
    for (const auto& p : predicates) {
      for (const auto& o : objects) {
        if (out.size() >= kCandidateCap) return out;
        out.push_back(TripleCandidate{s, p, o, 0.0});
      }
    }
  }
  return out;
}

double DefaultScorer::score(const TripleCandidate& cand, const TokenizedDialogue& dlg) const {
  const auto& w = weights_;
  double score = 0.0;
  if (dlg.turns.empty()) return score;

  const auto& final_turn = dlg.turns.back();
  bool final_cue = false;
  std::size_t final_len = 0;
  for (const auto& tok : final_turn) {
    if (is_punct_token(tok.surface)) continue;
    if (final_len == 0 && (is_yes_cue(tok.surface) || is_no_cue(tok.surface)))
      final_cue = true;
    ++final_len;
  }

  if (cand.predicate.turn == 1) score += w.question_turn_pred;
  if (cand.object.turn == 1) score += w.question_turn_obj;
  if (final_cue) {
    if (cand.predicate.turn == 1) score += w.answer_cue_pred;
    if (cand.object.turn == 1) score += w.answer_cue_obj;
    if (final_len < 6 && cand.predicate.turn == 1 && cand.object.turn == 1)
      score += w.short_answer_bonus;
  }

  // subject pronoun that resolves to the answering speaker (the speaker of
  // turns 0 and 2)
  const auto& subj = cand.subject;
  if (subj.end - subj.begin == 1) {
    std::string lower = to_lower(dlg.turns[subj.turn][subj.begin].surface);
    bool answering = (lower == "i" && subj.turn != 1) || (lower == "you" && subj.turn == 1);
    if (answering) score += w.answering_subject;
  }

  if (cand.predicate.turn == cand.object.turn && cand.object.begin == cand.predicate.end)
    score += w.adjacency;
  if (cand.subject.turn == cand.predicate.turn && cand.subject.end <= cand.predicate.begin)
    score += w.svo_order;

  bool spread = cand.subject.turn != cand.predicate.turn &&
                cand.predicate.turn != cand.object.turn &&
                cand.subject.turn != cand.object.turn;
  if (spread) score += w.spread_penalty;

  auto overlaps = [](const SpanCandidate& a, const SpanCandidate& b) {
    return a.turn == b.turn && a.begin < b.end && b.begin < a.end;
  };
  if (overlaps(cand.subject, cand.predicate) || overlaps(cand.predicate, cand.object) ||
      overlaps(cand.subject, cand.object))
    score += w.overlap_penalty;

  return score;
}

std::vector<Extraction> rank(const std::vector<TripleCandidate>& candidates,
                             const TokenizedDialogue& dlg, const Scorer& scorer,
                             const Lexicon& lexicon, std::size_t k) {
  if (candidates.empty()) return {};

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    scored.emplace_back(scorer.score(candidates[i], dlg), i);
  // earlier spans (generation order) win ties
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<Extraction> out;
  for (std::size_t r = 0; r < scored.size() && out.size() < k; ++r) {
    const TripleCandidate& cand = candidates[scored[r].second];
    Extraction e;
    e.type = UtteranceType::Statement;
    if (dlg.source) e.utterance_id = dlg.source->id;
    e.triple.subject = cand.subject.text;
    e.triple.predicate = cand.predicate.text;
    e.triple.object = cand.object.text;
    e.subject_src = SlotSource{cand.subject.turn, cand.subject.begin, cand.subject.end};
    e.predicate_src =
        SlotSource{cand.predicate.turn, cand.predicate.begin, cand.predicate.end};
    e.object_src = SlotSource{cand.object.turn, cand.object.begin, cand.object.end};
    if (dlg.source) e = resolve_speakers(std::move(e), *dlg.source);
    e = fuse_perspective(std::move(e), dlg, lexicon);
    out.push_back(std::move(e));
  }
  return out;
}

Extraction resolve_speakers(Extraction extraction, const Dialogue& dialogue) {
  auto other_label = [&](const std::string& label) {
    for (const auto& turn : dialogue.turns)
      if (turn.speaker != label) return turn.speaker;
    return label;
  };
  auto resolve_slot = [&](std::string text, int turn_idx) {
    if (turn_idx < 0 || turn_idx >= static_cast<int>(dialogue.turns.size())) return text;
    const std::string& speaker = dialogue.turns[turn_idx].speaker;
    auto words = split_ws(text);
    for (auto& word : words) {
      std::string lower = to_lower(word);
      if (lower == "i" || lower == "me" || lower == "my")
        word = speaker;
      else if (lower == "you" || lower == "your")
        word = other_label(speaker);
    }
    return join(words, " ");
  };
  extraction.triple.subject =
      resolve_slot(extraction.triple.subject, extraction.subject_src.turn);
  extraction.triple.object =
      resolve_slot(extraction.triple.object, extraction.object_src.turn);
  return extraction;
}

Extraction fuse_perspective(Extraction extraction, const TokenizedDialogue& dlg,
                            const Lexicon& lexicon) {
  if (dlg.turns.empty()) return extraction;
  const auto& final_turn = dlg.turns.back();

  Perspective p;  // defaults: certainty 1, polarity 1, sentiment 0
  const TaggedToken* first_word = nullptr;
  for (const auto& tok : final_turn) {
    if (!is_punct_token(tok.surface)) {
      first_word = &tok;
      break;
    }
  }
  bool negated = false;
  if (first_word && is_no_cue(first_word->surface)) {
    negated = true;
  } else if (first_word && is_yes_cue(first_word->surface)) {
    p.polarity = 1;
  } else {
    for (const auto& tok : final_turn)
      if (lexicon.is_negation_cue(tok.surface)) negated = true;
  }
  if (negated) p.polarity = -1;

  // hedges lower certainty
  for (std::size_t i = 0; i < final_turn.size(); ++i) {
    std::string lower = to_lower(final_turn[i].surface);
    if (lower == "maybe" || lower == "probably" || lower == "perhaps" ||
        lower == "possibly")
      p.certainty = 0.5;
    if ((lower == "think" || lower == "guess") && i > 0 &&
        to_lower(final_turn[i - 1].surface) == "i")
      p.certainty = 0.5;
    if (lower == "sure" && i > 0 && to_lower(final_turn[i - 1].surface) == "not")
      p.certainty = 0.5;
  }

  for (const auto& tok : final_turn)
    if (auto s = lexicon.sentiment(tok.lemma))
      if (std::abs(*s) > std::abs(p.sentiment)) p.sentiment = *s;

  extraction.perspective = p;
  extraction.labels.clear();
  if (p.polarity < 0) extraction.labels.insert("negative");
  if (p.polarity > 0) extraction.labels.insert("positive");
  if (p.certainty < 0.75) extraction.labels.insert("uncertain");
  return extraction;
}

std::vector<Extraction> extract_dialogue(const Dialogue& dialogue, const Lexicon& lexicon,
                                         const Scorer& scorer, std::size_t k) {
  TokenizedDialogue dlg = tokenize_dialogue(dialogue, lexicon);
  auto spans = propose_spans(dlg);
  auto candidates = generate_candidates(spans);
  return rank(candidates, dlg, scorer, lexicon, k);
}

}  // namespace triplex
