#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adaptok/vocab.hpp"

namespace adaptok {

// Splits a document into words: whitespace-delimited units with leading and
// trailing characters from `strip` removed. Units that strip to nothing are
// dropped.
extern const std::string kAsciiPunct;
std::vector<std::string> corpus_words(std::string_view document,
                                      std::string_view strip = kAsciiPunct);

// word -> token list; the unit the fragment metrics count over
using WordTokenizer = std::function<std::vector<std::string>(const std::string&)>;

enum class Mode { bpe, adaptbpe };

// Tokenizes single words as standalone pre-token sequences, by default in
// mid-sentence position (leading space marker). Caches per word; the
// returned callable is not safe to share across threads and must not
// outlive `ev`.
WordTokenizer word_tokenizer(const ExtendedVocabulary& ev, Mode mode, bool mid_sentence = true);

struct WordStats {
    std::uint64_t occurrences = 0;
    std::uint32_t subword_count = 0;

    bool operator==(const WordStats&) const = default;
};

// Per-word and corpus-aggregate subword counts for one tokenizer.
struct FragmentReport {
    std::uint64_t word_count = 0;    // occurrences counted
    std::uint64_t unique_words = 0;
    double fragment_score_occurrence = 0.0;  // mean subwords per occurrence
    double fragment_score_type = 0.0;        // mean subwords per unique word
    bool scores_defined = false;             // false when word_count == 0
    std::map<std::string, WordStats> per_word;

    nlohmann::json to_json(bool include_per_word = false) const;
};

// Mean subwords per word over a corpus (one document per line). The
// optional filter keeps only words it accepts, e.g. "more than k subwords
// under the base tokenizer". `strip` is the punctuation set corpus_words
// removes from word edges.
FragmentReport fragment_score(std::istream& corpus, const WordTokenizer& tokenize,
                              const std::function<bool(const std::string&)>& word_filter = {},
                              std::string_view strip = kAsciiPunct);
FragmentReport fragment_score(const std::vector<std::string>& documents,
                              const WordTokenizer& tokenize,
                              const std::function<bool(const std::string&)>& word_filter = {},
                              std::string_view strip = kAsciiPunct);

struct OovReport {
    std::vector<double> per_document;
    double median = 0.0;
    std::size_t empty_documents = 0;  // counted as fraction 0, with a warning

    nlohmann::json to_json() const;
};

// Per document: fraction of unique words absent from the vocabulary as a
// whole token, in both bare and space-marker form. Plus the corpus median.
OovReport oov_rate(std::istream& documents, const Vocabulary& vocab,
                   std::string_view strip = kAsciiPunct);
OovReport oov_rate(const std::vector<std::string>& documents, const Vocabulary& vocab,
                   std::string_view strip = kAsciiPunct);

struct ChangedWord {
    std::string word;
    std::vector<std::string> tokens_a;  // standard
    std::vector<std::string> tokens_b;  // adaptive

    bool operator==(const ChangedWord&) const = default;
};

// Standard-vs-adaptive corpus comparison.
struct DiffReport {
    FragmentReport fragment_a;  // standard
    FragmentReport fragment_b;  // adaptive
    double drop_percent = 0.0;  // 100 * (a - b) / a on the occurrence scores
    std::vector<ChangedWord> changed_words;
    std::uint64_t domain_token_usage_a = 0;  // emitted tokens with domain ids
    std::uint64_t domain_token_usage_b = 0;

    nlohmann::json to_json(bool include_changed_words = true) const;
};

DiffReport compare(std::istream& corpus, const ExtendedVocabulary& ev,
                   std::string_view strip = kAsciiPunct);
DiffReport compare(const std::vector<std::string>& documents, const ExtendedVocabulary& ev,
                   std::string_view strip = kAsciiPunct);

}  // namespace adaptok
