#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaptok/bpe.hpp"
#include "adaptok/vocab.hpp"

namespace adaptok {

// Candidate material for domain-vocabulary construction: the filtered word
// multiset, the full corpus word multiset, and candidate tokens ranked by
// training order.
struct CandidatePool {
    std::map<std::string, std::uint64_t> words;      // subword_count > threshold_k
    std::map<std::string, std::uint64_t> all_words;  // every corpus word
    std::vector<std::string> ranked_subwords;        // creation order, base members removed
    std::vector<MergeRuleTable::Rule> ranked_merges;  // aligned with ranked_subwords
    int threshold_k = 2;
};

struct BuildConfig {
    double gamma = 2.0;             // fragment-score threshold (threshold strategy)
    std::vector<std::size_t> size_grid;  // candidate sizes (size-search strategy)
    int threshold_k = 2;            // candidate words split into > k subwords
    double epsilon = 0.01;          // relative tolerance for size selection
    std::size_t batch = 100;        // tokens added per score recomputation
    std::size_t max_candidates = 1000;  // training budget for candidate tokens

    // Throws std::invalid_argument when a field is out of range.
    void validate(bool need_gamma, bool need_grid) const;
};

// Scans the corpus (one document per line), keeps words the base tokenizer
// splits into more than `threshold_k` subwords (scored mid-sentence), and
// trains candidate tokens on that word set. Tokens already whole in the
// base vocabulary are dropped from the ranking.
CandidatePool collect_candidates(std::istream& corpus, const Vocabulary& base,
                                 const MergeRuleTable& merges, int threshold_k,
                                 std::size_t max_candidates = 1000);
CandidatePool collect_candidates(const std::vector<std::string>& documents,
                                 const Vocabulary& base, const MergeRuleTable& merges,
                                 int threshold_k, std::size_t max_candidates = 1000);

struct BuildResult {
    std::vector<std::string> tokens;             // chosen domain tokens, creation order
    std::vector<MergeRuleTable::Rule> merges;    // their merges, same order
    std::size_t chosen_size = 0;
    bool exhausted = false;  // threshold strategy ran out of candidates early
    std::vector<std::pair<std::size_t, double>> trajectory;  // (size, score) evaluations

    nlohmann::json manifest(const std::string& strategy, const BuildConfig& config) const;
};

// Threshold strategy: add ranked candidates in batches until the fragment
// score of the filtered word set, measured under the adaptive tokenizer
// with the tokens added so far, first reaches gamma or below.
BuildResult build_avocado(const CandidatePool& pool, const Vocabulary& base,
                          const MergeRuleTable& merges, double gamma, std::size_t batch = 100);

// Size-search strategy: evaluate each grid size on the full corpus word
// multiset and pick the smallest size whose score is within (1 + epsilon)
// of the grid minimum.
BuildResult build_sizesearch(const CandidatePool& pool, const Vocabulary& base,
                             const MergeRuleTable& merges,
                             const std::vector<std::size_t>& size_grid, double epsilon = 0.01);

}  // namespace adaptok
