#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adaptok/bpe.hpp"
#include "adaptok/match_index.hpp"
#include "adaptok/vocab.hpp"

namespace adaptok {

// Initial segmentation of one pre-token surface: domain matches kept whole,
// everything else split to single symbols.
struct InitSegment {
    std::string surface;
    bool domain_match = false;

    bool operator==(const InitSegment&) const = default;
};

using InitSegmentation = std::vector<InitSegment>;

// Iterates longest-substring matching against the domain token set, masking
// each match so later matches cannot overlap it, then decomposes the
// unmatched remainder into single symbols in source order.
InitSegmentation adapt_initialize(std::string_view surface, const MatchIndex& index);

// Adaptive encoding of one pre-token: the modified initialization followed
// by the standard ranked merge loop. Domain segments enter the loop as
// atomic units; they are never split but may merge with neighbors when a
// rule names them.
std::vector<std::string> adapt_encode_word(std::string_view surface, const MatchIndex& index,
                                           const MergeRuleTable& merges,
                                           MergeTrace* trace = nullptr,
                                           InitSegmentation* init = nullptr);

// Full adaptive pipeline: pre-tokenize, adaptively encode each pre-token,
// resolve ids against the extended vocabulary. With an empty domain this is
// exactly encode().
TokenSequence adapt_encode(std::string_view text, const ExtendedVocabulary& ev);

}  // namespace adaptok
