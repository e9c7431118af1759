#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "triplex/grammar.hpp"

namespace triplex {

class ParserInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Utterances longer than this are rejected; the test suites stay around a
// dozen tokens.
inline constexpr std::size_t kMaxUtteranceLen = 64;

struct ParseTree {
  Sym sym = 0;
  int begin = 0;  // token span [begin, end)
  int end = 0;
  std::vector<ParseTree> children;  // empty for terminal leaves

  bool is_leaf() const { return children.empty(); }
};

std::size_t node_count(const ParseTree& tree);
// canonical bracketing, e.g. (U(S(NP(N PRP))(VP(V VBP))(C(NP(N NNS)))))
std::string bracketing(const ParseTree& tree);

// All complete U-derivations for the tag sequence, via a bottom-up chart with
// per-(symbol,span) packing. Enumeration order is deterministic (rule order,
// then split positions). Stops quietly at max_trees; fixture inputs stay far
// below any sensible cap.
std::vector<ParseTree> parse(const std::vector<Tag>& tags,
                             std::size_t max_trees = 20000);

// Recognition only; same chart core without backpointers, allocation-light.
bool recognize(const std::vector<Tag>& tags);

// Deterministic choice among complete parses: fewest total nodes, then the
// longer first constituent under the root's child, then lexicographically
// smaller bracketing.
const ParseTree& select_parse(const std::vector<ParseTree>& trees);

// Sample a derivation from the grammar (depth-bounded, min-depth aware so it
// always terminates). Used by the generate-and-parse property.
std::vector<Tag> generate(std::mt19937& rng, int max_depth);

}  // namespace triplex
