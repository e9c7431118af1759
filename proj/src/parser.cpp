#include "triplex/parser.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>

namespace triplex {

namespace {

struct NodeKey {
  Sym sym;
  int begin;
  int end;
  auto operator<=>(const NodeKey&) const = default;
};

struct Derivation {
  int alt = -1;                  // index into Grammar::alternatives()
  std::vector<NodeKey> children; // terminals appear as (tag, i, i+1)
};

using SpanEntry = std::map<Sym, std::vector<Derivation>>;

// Unary closure: closure[s] = bit(s) | bits of every A with A =>* s through
// single-symbol rewrites. The unary graph of this grammar is acyclic.
const std::array<std::uint64_t, kSymCount>& unary_closure() {
  static const auto closure = [] {
    std::array<std::uint64_t, kSymCount> c{};
    for (int s = 0; s < kSymCount; ++s) c[s] = 1ull << s;
    const auto& alts = Grammar::instance().alternatives();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < kSymCount; ++s) {
        for (const auto& alt : alts) {
          if (alt.rhs.size() != 1) continue;
          if ((c[s] & (1ull << alt.rhs[0])) && !(c[s] & (1ull << alt.lhs))) {
            c[s] |= 1ull << alt.lhs;
            changed = true;
          }
        }
      }
    }
    return c;
  }();
  return closure;
}

// k>=2 alternatives, fetched once
const std::vector<int>& multi_alts() {
  static const std::vector<int> alts = [] {
    std::vector<int> out;
    const auto& all = Grammar::instance().alternatives();
    for (int i = 0; i < static_cast<int>(all.size()); ++i)
      if (all[i].rhs.size() >= 2) out.push_back(i);
    return out;
  }();
  return alts;
}

// same-span unary application order; every lhs is complete once its
// predecessors here are done (k>=2 results use strictly smaller spans)
const std::vector<int>& unary_alts_in_order() {
  static const std::vector<int> alts = [] {
    const Sym order[] = {kSymW, kSymPREP, kSymV, kSymD, kSymN, kSymJ,
                         kSymNP, kSymVP, kSymC, kSymS, kSymQ, kSymU};
    std::vector<int> out;
    const auto& all = Grammar::instance().alternatives();
    for (Sym lhs : order)
      for (int i = 0; i < static_cast<int>(all.size()); ++i)
        if (all[i].lhs == lhs && all[i].rhs.size() == 1) out.push_back(i);
    return out;
  }();
  return alts;
}

void validate_input(const std::vector<Tag>& tags) {
  if (tags.empty()) throw ParserInputError("empty tag sequence");
  if (tags.size() > kMaxUtteranceLen)
    throw ParserInputError("utterance longer than " + std::to_string(kMaxUtteranceLen) +
                           " tokens (" + std::to_string(tags.size()) + ")");
}

}  // namespace

std::size_t node_count(const ParseTree& tree) {
  std::size_t n = 1;
  for (const auto& child : tree.children) n += node_count(child);
  return n;
}

std::string bracketing(const ParseTree& tree) {
  if (tree.is_leaf()) return std::string(sym_name(tree.sym));
  std::string out = "(";
  out += sym_name(tree.sym);
  for (const auto& child : tree.children) {
    if (child.is_leaf()) {
      out += ' ';
      out += sym_name(child.sym);
    } else {
      out += bracketing(child);
    }
  }
  out += ')';
  return out;
}

namespace {

// full chart with backpointers; spans keyed by (begin, end)
class Chart {
 public:
  explicit Chart(int n) : n_(n), spans_(static_cast<std::size_t>(n) * (n + 1)) {}

  SpanEntry& at(int b, int e) { return spans_[static_cast<std::size_t>(b) * (n_ + 1) + e]; }
  const SpanEntry& at(int b, int e) const {
    return spans_[static_cast<std::size_t>(b) * (n_ + 1) + e];
  }

 private:
  int n_;
  std::vector<SpanEntry> spans_;
};

void fill_chart(Chart& chart, const std::vector<Tag>& tags) {
  const auto& grammar = Grammar::instance();
  const auto& alts = grammar.alternatives();
  const int n = static_cast<int>(tags.size());

  auto apply_unaries = [&](int b, int e) {
    for (int ai : unary_alts_in_order()) {
      const auto& alt = alts[ai];
      Sym rhs = alt.rhs[0];
      bool present = is_terminal(rhs)
                         ? (e - b == 1 && sym_of_tag(tags[b]) == rhs)
                         : chart.at(b, e).count(rhs) > 0;
      if (present)
        chart.at(b, e)[alt.lhs].push_back(Derivation{ai, {NodeKey{rhs, b, e}}});
    }
  };

  for (int len = 1; len <= n; ++len) {
    for (int b = 0; b + len <= n; ++b) {
      int e = b + len;
      // k>=2 alternatives over strictly smaller parts
      if (len >= 2) {
        for (int ai : multi_alts()) {
          const auto& alt = alts[ai];
          const int k = static_cast<int>(alt.rhs.size());
          if (k > len) continue;
          std::vector<NodeKey> children(k);
          // enumerate decompositions left to right
          auto descend = [&](auto&& self, int idx, int pos) -> void {
            if (idx == k - 1) {
              Sym sym = alt.rhs[idx];
              bool ok = is_terminal(sym)
                            ? (e - pos == 1 && sym_of_tag(tags[pos]) == sym)
                            : chart.at(pos, e).count(sym) > 0;
              if (ok) {
                children[idx] = NodeKey{sym, pos, e};
                chart.at(b, e)[alt.lhs].push_back(Derivation{ai, children});
              }
              return;
            }
            Sym sym = alt.rhs[idx];
            int remaining = k - idx - 1;
            for (int mid = pos + 1; mid <= e - remaining; ++mid) {
              bool ok = is_terminal(sym)
                            ? (mid - pos == 1 && sym_of_tag(tags[pos]) == sym)
                            : chart.at(pos, mid).count(sym) > 0;
              if (ok) {
                children[idx] = NodeKey{sym, pos, mid};
                self(self, idx + 1, mid);
              }
            }
          };
          descend(descend, 0, b);
        }
      }
      apply_unaries(b, e);
    }
  }
}

// deterministic tree enumeration from the packed chart, bounded by `budget`
class TreeEnumerator {
 public:
  TreeEnumerator(const Chart& chart, std::size_t budget)
      : chart_(chart), budget_(budget) {}

  std::vector<ParseTree> trees(const NodeKey& key) {
    if (is_terminal(key.sym))
      return {ParseTree{key.sym, key.begin, key.end, {}}};
    std::vector<ParseTree> out;
    auto it = chart_.at(key.begin, key.end).find(key.sym);
    if (it == chart_.at(key.begin, key.end).end()) return out;
    for (const auto& deriv : it->second) {
      std::vector<std::vector<ParseTree>> child_options;
      child_options.reserve(deriv.children.size());
      for (const auto& child : deriv.children) child_options.push_back(trees(child));
      // cross product in lexicographic order
      std::vector<std::size_t> idx(child_options.size(), 0);
      bool any_empty = std::any_of(child_options.begin(), child_options.end(),
                                   [](const auto& v) { return v.empty(); });
      if (any_empty) continue;
      while (true) {
        ParseTree t{key.sym, key.begin, key.end, {}};
        for (std::size_t c = 0; c < idx.size(); ++c)
          t.children.push_back(child_options[c][idx[c]]);
        out.push_back(std::move(t));
        if (out.size() >= budget_) return out;
        int c = static_cast<int>(idx.size()) - 1;
        while (c >= 0 && ++idx[c] == child_options[c].size()) {
          idx[c] = 0;
          --c;
        }
        if (c < 0) break;
      }
    }
    return out;
  }

 private:
  const Chart& chart_;
  std::size_t budget_;
};

}  // namespace

std::vector<ParseTree> parse(const std::vector<Tag>& tags, std::size_t max_trees) {
  validate_input(tags);
  const int n = static_cast<int>(tags.size());
  Chart chart(n);
  fill_chart(chart, tags);
  TreeEnumerator walker(chart, max_trees);
  return walker.trees(NodeKey{kSymU, 0, n});
}

bool recognize(const std::vector<Tag>& tags) {
  validate_input(tags);
  const int n = static_cast<int>(tags.size());
  const auto& closure = unary_closure();
  const auto& grammar = Grammar::instance();
  const auto& alts = grammar.alternatives();

  thread_local std::vector<std::uint64_t> masks;
  masks.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  auto at = [&](int b, int e) -> std::uint64_t& {
    return masks[static_cast<std::size_t>(b) * (n + 1) + e];
  };

  for (int b = 0; b < n; ++b) at(b, b + 1) = closure[sym_of_tag(tags[b])];

  for (int len = 2; len <= n; ++len) {
    for (int b = 0; b + len <= n; ++b) {
      const int e = b + len;
      std::uint64_t found = 0;
      for (int ai : multi_alts()) {
        const auto& alt = alts[ai];
        if (found & (1ull << alt.lhs)) continue;
        const int k = static_cast<int>(alt.rhs.size());
        if (k > len) continue;
        auto descend = [&](auto&& self, int idx, int pos) -> bool {
          const std::uint64_t want = 1ull << alt.rhs[idx];
          if (idx == k - 1) return (at(pos, e) & want) != 0;
          const int remaining = k - idx - 1;
          for (int mid = pos + 1; mid <= e - remaining; ++mid)
            if ((at(pos, mid) & want) && self(self, idx + 1, mid)) return true;
          return false;
        };
        if (descend(descend, 0, b)) found |= 1ull << alt.lhs;
      }
      std::uint64_t full = 0;
      std::uint64_t bits = found;
      while (bits) {
        int s = std::countr_zero(bits);
        bits &= bits - 1;
        full |= closure[s];
      }
      at(b, e) = full;
    }
  }
  return (at(0, n) & (1ull << kSymU)) != 0;
}

namespace {

int first_constituent_len(const ParseTree& tree) {
  // length of the first constituent under the root's S/Q child
  if (tree.children.empty()) return 0;
  const ParseTree& top = tree.children[0];
  if (top.children.empty()) return 0;
  const ParseTree& first = top.children[0];
  return first.end - first.begin;
}

}  // namespace

const ParseTree& select_parse(const std::vector<ParseTree>& trees) {
  if (trees.empty()) throw ParserInputError("no parse to select from");
  const ParseTree* best = &trees[0];
  std::size_t best_nodes = node_count(*best);
  int best_first = first_constituent_len(*best);
  std::string best_bracket = bracketing(*best);
  for (std::size_t i = 1; i < trees.size(); ++i) {
    std::size_t nodes = node_count(trees[i]);
    int first = first_constituent_len(trees[i]);
    std::string bracket = bracketing(trees[i]);
    bool better = false;
    if (nodes != best_nodes) {
      better = nodes < best_nodes;
    } else if (first != best_first) {
      better = first > best_first;
    } else {
      better = bracket < best_bracket;
    }
    if (better) {
      best = &trees[i];
      best_nodes = nodes;
      best_first = first;
      best_bracket = std::move(bracket);
    }
  }
  return *best;
}

namespace {

const std::array<int, kSymCount>& min_depth_table() {
  static const auto table = [] {
    std::array<int, kSymCount> depth{};
    depth.fill(1 << 20);
    for (int s = 0; s < kTagCount; ++s) depth[s] = 1;
    const auto& alts = Grammar::instance().alternatives();
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& alt : alts) {
        int worst = 0;
        for (Sym s : alt.rhs) worst = std::max(worst, depth[s]);
        if (worst + 1 < depth[alt.lhs]) {
          depth[alt.lhs] = worst + 1;
          changed = true;
        }
      }
    }
    return depth;
  }();
  return table;
}

void sample(Sym sym, int budget, std::mt19937& rng, std::vector<Tag>* out) {
  if (is_terminal(sym)) {
    out->push_back(static_cast<Tag>(sym));
    return;
  }
  const auto& grammar = Grammar::instance();
  const auto& alts = grammar.alternatives();
  const auto& depth = min_depth_table();

  std::vector<int> viable;
  for (int ai : grammar.by_lhs()[sym]) {
    int worst = 0;
    for (Sym s : alts[ai].rhs) worst = std::max(worst, depth[s]);
    if (worst <= budget - 1) viable.push_back(ai);
  }
  if (viable.empty()) {
    // budget too tight: fall back to a minimum-height alternative
    int best_worst = 1 << 20, best_ai = -1;
    for (int ai : grammar.by_lhs()[sym]) {
      int worst = 0;
      for (Sym s : alts[ai].rhs) worst = std::max(worst, depth[s]);
      if (worst < best_worst) {
        best_worst = worst;
        best_ai = ai;
      }
    }
    viable.push_back(best_ai);
  }
  std::uniform_int_distribution<std::size_t> pick(0, viable.size() - 1);
  const auto& alt = alts[viable[pick(rng)]];
  for (Sym s : alt.rhs) sample(s, budget - 1, rng, out);
}

}  // namespace

std::vector<Tag> generate(std::mt19937& rng, int max_depth) {
  if (max_depth < 3) throw ParserInputError("max_depth must be at least 3");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Tag> out;
    sample(kSymU, max_depth, rng, &out);
    if (!out.empty() && out.size() <= kMaxUtteranceLen) return out;
  }
  throw ParserInputError("generation kept exceeding the utterance length cap");
}

}  // namespace triplex
