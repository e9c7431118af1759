#include "triplex/grammar.hpp"

#include <sstream>

namespace triplex {

namespace {

constexpr std::string_view kNonterminalNames[] = {"U", "Q", "W",  "S", "C",  "NP",
                                                  "VP", "PREP", "V", "D", "N", "J"};

}  // namespace

std::string_view sym_name(Sym s) {
  if (is_terminal(s)) return tag_name(static_cast<Tag>(s));
  return kNonterminalNames[s - kTagCount];
}

Grammar::Grammar() {
  auto t = [](Tag tag) { return sym_of_tag(tag); };
  auto add = [this](Sym lhs, std::vector<Sym> rhs) {
    alts_.push_back(Alternative{lhs, std::move(rhs)});
  };

  add(kSymU, {kSymS});
  add(kSymU, {kSymQ});

  add(kSymQ, {kSymW, kSymVP, kSymC});
  add(kSymQ, {kSymW, kSymNP, kSymC});
  add(kSymQ, {kSymW, kSymVP, kSymNP, kSymC});
  add(kSymQ, {kSymW, kSymVP, kSymNP, kSymVP, kSymC});
  add(kSymQ, {kSymW, kSymNP, kSymVP, kSymC});
  add(kSymQ, {kSymV, kSymNP, kSymC});
  add(kSymQ, {kSymV, kSymNP, kSymC, kSymC});

  add(kSymW, {t(Tag::WRB)});
  add(kSymW, {t(Tag::WP)});
  add(kSymW, {t(Tag::WDT)});

  add(kSymS, {kSymNP, kSymVP, kSymC});
  add(kSymS, {kSymNP, kSymC});
  add(kSymS, {kSymNP, kSymVP, kSymS});

  add(kSymC, {kSymNP});
  add(kSymC, {kSymVP});
  add(kSymC, {kSymPREP});

  add(kSymNP, {kSymN});
  add(kSymNP, {t(Tag::JJ)});
  add(kSymNP, {kSymJ, kSymNP});
  add(kSymNP, {kSymD, kSymNP});
  add(kSymNP, {kSymN, kSymNP});
  add(kSymNP, {t(Tag::RB), kSymNP});
  add(kSymNP, {kSymPREP, kSymNP});

  add(kSymVP, {kSymV, kSymVP});
  add(kSymVP, {kSymV, t(Tag::RB)});
  add(kSymVP, {t(Tag::RB), kSymVP});
  add(kSymVP, {kSymV});
  add(kSymVP, {kSymV, kSymPREP, kSymVP});
  add(kSymVP, {kSymV, kSymPREP});

  add(kSymPREP, {t(Tag::IN)});
  add(kSymPREP, {t(Tag::TO)});

  add(kSymV, {t(Tag::VBD)});
  add(kSymV, {t(Tag::VBP)});
  add(kSymV, {t(Tag::VBZ)});
  add(kSymV, {t(Tag::VBN)});
  add(kSymV, {t(Tag::VBG)});
  add(kSymV, {t(Tag::VB)});
  add(kSymV, {t(Tag::MD)});

  add(kSymD, {t(Tag::DT)});
  add(kSymD, {t(Tag::CD)});
  add(kSymD, {t(Tag::PRPPOS)});

  add(kSymN, {t(Tag::NN)});
  add(kSymN, {t(Tag::NNS)});
  add(kSymN, {t(Tag::NNP)});
  add(kSymN, {t(Tag::NNPS)});
  add(kSymN, {t(Tag::PRP)});
  add(kSymN, {t(Tag::DT)});

  add(kSymJ, {t(Tag::JJ)});
  add(kSymJ, {t(Tag::JJR)});
  add(kSymJ, {t(Tag::JJS)});

  by_lhs_.assign(kSymCount, {});
  for (int i = 0; i < static_cast<int>(alts_.size()); ++i)
    by_lhs_[alts_[i].lhs].push_back(i);
}

const Grammar& Grammar::instance() {
  static const Grammar g;
  return g;
}

std::string Grammar::text() const {
  // one line per rewriting rule, in declaration order
  std::ostringstream out;
  std::vector<Sym> order;
  for (const auto& alt : alts_)
    if (order.empty() || order.back() != alt.lhs) order.push_back(alt.lhs);
  for (Sym lhs : order) {
    out << sym_name(lhs) << " ->";
    bool first = true;
    for (int idx : by_lhs_[lhs]) {
      if (!first) out << " |";
      first = false;
      for (Sym s : alts_[idx].rhs) out << ' ' << sym_name(s);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace triplex
