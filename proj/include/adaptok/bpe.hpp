#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adaptok/vocab.hpp"

namespace adaptok {

// Tokens with their ids and byte spans into the source text.
struct TokenSequence {
    std::vector<std::string> tokens;
    std::vector<int> ids;
    std::vector<std::pair<std::size_t, std::size_t>> spans;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    bool operator==(const TokenSequence&) const = default;
};

// One applied merge, for trace mode.
struct AppliedMerge {
    std::string left;
    std::string right;
    std::size_t rank = 0;

    bool operator==(const AppliedMerge&) const = default;
};

using MergeTrace = std::vector<AppliedMerge>;

// The ranked merge loop shared by both encoders: repeatedly apply the
// lowest-ranked rule among all adjacent segment pairs, merging every
// occurrence left to right, until no rule applies.
void run_merge_loop(std::vector<std::string>& segments, const MergeRuleTable& merges,
                    MergeTrace* trace = nullptr);

// Standard BPE over one pre-token surface: per-symbol segments, then the
// merge loop.
std::vector<std::string> encode_word(std::string_view surface, const MergeRuleTable& merges,
                                     MergeTrace* trace = nullptr);

// Pre-tokenize then encode each pre-token with the combined merge table.
// Final segments missing from the vocabulary fall back to per-symbol
// tokens; the byte alphabet itself must be present (the byte-level
// vocab.json convention guarantees it).
TokenSequence encode(std::string_view text, const ExtendedVocabulary& ev);

// Concatenate token surfaces and undo the byte-level mapping. Throws
// std::out_of_range on ids outside [0, |ev|).
std::string decode(const std::vector<int>& ids, const ExtendedVocabulary& ev);

// Resolve pre-computed token strings against the vocabulary, applying the
// same per-symbol fallback as encode(). `word_begin` is the byte offset of
// the surface in the source text; spans come out one source byte per
// symbol.
void resolve_tokens(const std::vector<std::string>& word_tokens, const ExtendedVocabulary& ev,
                    std::size_t word_begin, TokenSequence& out);

struct TrainResult {
    // symbols seen in the input (sorted), then one token per merge in
    // creation order
    std::vector<std::string> tokens;
    std::vector<MergeRuleTable::Rule> merges;
};

// Frequency-greedy BPE training over a word multiset. Stops after
// `target_merges` merges or as soon as no adjacent pair occurs at least
// twice. Ties on frequency break lexicographically on (left, right).
TrainResult train_bpe(const std::map<std::string, std::uint64_t>& word_counts,
                      std::size_t target_merges);

}  // namespace adaptok
