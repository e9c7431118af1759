#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "triplex/lexicon.hpp"

namespace triplex {

// Symbols are small ints: 0..23 are the terminals (same order as Tag),
// 24..35 the nonterminals.
using Sym = int;

inline constexpr Sym kSymU = kTagCount + 0;
inline constexpr Sym kSymQ = kTagCount + 1;
inline constexpr Sym kSymW = kTagCount + 2;
inline constexpr Sym kSymS = kTagCount + 3;
inline constexpr Sym kSymC = kTagCount + 4;
inline constexpr Sym kSymNP = kTagCount + 5;
inline constexpr Sym kSymVP = kTagCount + 6;
inline constexpr Sym kSymPREP = kTagCount + 7;
inline constexpr Sym kSymV = kTagCount + 8;
inline constexpr Sym kSymD = kTagCount + 9;
inline constexpr Sym kSymN = kTagCount + 10;
inline constexpr Sym kSymJ = kTagCount + 11;
inline constexpr int kSymCount = kTagCount + 12;

inline bool is_terminal(Sym s) { return s >= 0 && s < kTagCount; }
inline Sym sym_of_tag(Tag t) { return static_cast<Sym>(t); }

std::string_view sym_name(Sym s);

// One rewriting alternative, e.g. Q -> W VP C.
struct Alternative {
  Sym lhs;
  std::vector<Sym> rhs;
};

// The whole phrase grammar: 12 rewriting rules (one per left-hand side),
// flattened into alternatives. Start symbol U.
class Grammar {
 public:
  static const Grammar& instance();

  const std::vector<Alternative>& alternatives() const { return alts_; }
  Sym start() const { return kSymU; }

  // alternatives grouped by lhs, in rule order
  const std::vector<std::vector<int>>& by_lhs() const { return by_lhs_; }

  // rule listing, one lhs per line, alternatives joined with " | "
  std::string text() const;

 private:
  Grammar();
  std::vector<Alternative> alts_;
  std::vector<std::vector<int>> by_lhs_;  // indexed by Sym
};

}  // namespace triplex
