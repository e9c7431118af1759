#pragma once

#include <vector>

#include "triplex/mapper.hpp"

namespace triplex {

// Tag-template baseline over four pattern families, first match wins in the
// order svo-active, s-cop-adj, s-v-prepobj, svo-passive. At most one
// extraction per utterance, default perspective, no question handling and no
// "?" placeholders.
std::vector<Extraction> extract_patterns(const std::vector<TaggedToken>& tokens,
                                         const SpeakerContext& ctx,
                                         const Lexicon& lexicon);

}  // namespace triplex
