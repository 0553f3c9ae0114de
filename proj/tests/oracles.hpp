#pragma once

// Naive reference implementations used as oracles. These deliberately avoid
// the library's lookup structures: the merge oracle walks the rule list in
// rank order each round, and the match oracle enumerates every substring.
// Keep them simple and obviously correct; speed does not matter here.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adaptok/adapt.hpp"
#include "adaptok/vocab.hpp"

namespace oracles {

// Standard BPE over one surface: re-scan all adjacent pairs every round,
// apply the first applicable rule in rank order.
std::vector<std::string> encode_word(std::string_view surface,
                                     const std::vector<adaptok::MergeRuleTable::Rule>& rules);

// Initialization by exhaustive longest-substring search over all
// (start, end) spans, leftmost on ties, masking each match.
adaptok::InitSegmentation adapt_initialize(std::string_view surface,
                                           const std::set<std::string>& domain_tokens);

// Adaptive encoding of one surface: oracle initialization, then the oracle
// merge loop over the resulting segments.
std::vector<std::string> adapt_encode_word(std::string_view surface,
                                           const std::set<std::string>& domain_tokens,
                                           const std::vector<adaptok::MergeRuleTable::Rule>& rules);

// Word -> tokens as the metrics define it: tokenize " " + word (or the bare
// word), concatenating per-pre-token oracle encodings, expanding segments
// missing from the vocabulary into their symbols.
std::vector<std::string> word_tokens(const std::string& word, const adaptok::ExtendedVocabulary& ev,
                                     bool adaptive, bool mid_sentence = true);

struct CompareNumbers {
    double score_occurrence_a = 0.0;
    double score_occurrence_b = 0.0;
    double score_type_a = 0.0;
    double score_type_b = 0.0;
    double drop_percent = 0.0;
    std::uint64_t word_count = 0;
    std::uint64_t changed_words = 0;
    std::uint64_t domain_token_usage_a = 0;
    std::uint64_t domain_token_usage_b = 0;
};

// The full comparison pipeline computed with the oracle tokenizers and
// plain loops.
CompareNumbers compare(const std::vector<std::string>& documents,
                       const adaptok::ExtendedVocabulary& ev);

struct AvocadoOutcome {
    std::size_t added = 0;
    double final_score = 0.0;
    bool exhausted = false;
};

// The threshold builder loop with the oracle tokenizer inside.
AvocadoOutcome simulate_avocado(const std::map<std::string, std::uint64_t>& words,
                                const adaptok::Vocabulary& base,
                                const adaptok::MergeRuleTable& merges,
                                const std::vector<std::string>& ranked,
                                const std::vector<adaptok::MergeRuleTable::Rule>& ranked_merges,
                                double gamma, std::size_t batch);

// Exhaustive grid evaluation with the oracle tokenizer; returns the chosen
// size and the grid scores.
std::pair<std::size_t, std::vector<double>> simulate_sizesearch(
    const std::map<std::string, std::uint64_t>& words, const adaptok::Vocabulary& base,
    const adaptok::MergeRuleTable& merges, const std::vector<std::string>& ranked,
    const std::vector<adaptok::MergeRuleTable::Rule>& ranked_merges,
    const std::vector<std::size_t>& grid, double epsilon);

// Occurrence-weighted mean subword count of a word multiset under the
// oracle tokenizer.
double mean_subwords(const std::map<std::string, std::uint64_t>& words,
                     const adaptok::ExtendedVocabulary& ev, bool adaptive);

}  // namespace oracles
