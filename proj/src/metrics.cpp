#include "adaptok/metrics.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <unordered_map>

#include "adaptok/adapt.hpp"
#include "adaptok/bpe.hpp"
#include "adaptok/byte_level.hpp"

namespace adaptok {

const std::string kAsciiPunct = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

namespace {

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

void finalize(FragmentReport& report) {
    report.unique_words = report.per_word.size();
    std::uint64_t occurrences = 0;
    std::uint64_t weighted_subwords = 0;  // integer accumulation, one division
    std::uint64_t type_subwords = 0;
    for (const auto& [word, stats] : report.per_word) {
        occurrences += stats.occurrences;
        weighted_subwords += stats.occurrences * stats.subword_count;
        type_subwords += stats.subword_count;
    }
    report.word_count = occurrences;
    report.scores_defined = occurrences > 0;
    if (report.scores_defined) {
        report.fragment_score_occurrence =
            static_cast<double>(weighted_subwords) / static_cast<double>(occurrences);
        report.fragment_score_type =
            static_cast<double>(type_subwords) / static_cast<double>(report.unique_words);
    }
}

}  // namespace

std::vector<std::string> corpus_words(std::string_view document, std::string_view strip) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < document.size()) {
        while (i < document.size() && is_ws(document[i])) ++i;
        std::size_t j = i;
        while (j < document.size() && !is_ws(document[j])) ++j;
        if (j > i) {
            std::size_t b = i, e = j;
            while (b < e && strip.find(document[b]) != std::string_view::npos) ++b;
            while (e > b && strip.find(document[e - 1]) != std::string_view::npos) --e;
            if (e > b) words.emplace_back(document.substr(b, e - b));
        }
        i = j;
    }
    return words;
}

WordTokenizer word_tokenizer(const ExtendedVocabulary& ev, Mode mode, bool mid_sentence) {
    auto cache = std::make_shared<std::unordered_map<std::string, std::vector<std::string>>>();
    const ExtendedVocabulary* evp = &ev;
    return [evp, mode, mid_sentence, cache](const std::string& word) {
        if (auto it = cache->find(word); it != cache->end()) return it->second;
        std::string text = mid_sentence ? " " + word : word;
        TokenSequence seq =
            mode == Mode::adaptbpe ? adapt_encode(text, *evp) : encode(text, *evp);
        cache->emplace(word, seq.tokens);
        return seq.tokens;
    };
}

FragmentReport fragment_score(const std::vector<std::string>& documents,
                              const WordTokenizer& tokenize,
                              const std::function<bool(const std::string&)>& word_filter,
                              std::string_view strip) {
    FragmentReport report;
    for (const auto& doc : documents) {
        for (auto& word : corpus_words(doc, strip)) {
            if (word_filter && !word_filter(word)) continue;
            auto it = report.per_word.find(word);
            if (it == report.per_word.end()) {
                std::uint32_t count = static_cast<std::uint32_t>(tokenize(word).size());
                it = report.per_word.emplace(std::move(word), WordStats{0, count}).first;
            }
            it->second.occurrences += 1;
        }
    }
    finalize(report);
    return report;
}

FragmentReport fragment_score(std::istream& corpus, const WordTokenizer& tokenize,
                              const std::function<bool(const std::string&)>& word_filter,
                              std::string_view strip) {
    return fragment_score(read_lines(corpus), tokenize, word_filter, strip);
}

nlohmann::json FragmentReport::to_json(bool include_per_word) const {
    nlohmann::json j{{"fragment_score_occurrence", fragment_score_occurrence},
                     {"fragment_score_type", fragment_score_type},
                     {"word_count", word_count},
                     {"unique_words", unique_words},
                     {"scores_defined", scores_defined}};
    if (include_per_word) {
        nlohmann::json words = nlohmann::json::object();
        for (const auto& [word, stats] : per_word) {
            words[word] = {{"occurrences", stats.occurrences},
                           {"subword_count", stats.subword_count}};
        }
        j["per_word"] = std::move(words);
    }
    return j;
}

OovReport oov_rate(const std::vector<std::string>& documents, const Vocabulary& vocab,
                   std::string_view strip) {
    OovReport report;
    for (const auto& doc : documents) {
        std::vector<std::string> words = corpus_words(doc, strip);
        std::set<std::string> unique(words.begin(), words.end());
        if (unique.empty()) {
            report.per_document.push_back(0.0);
            ++report.empty_documents;
            continue;
        }
        std::size_t oov = 0;
        for (const auto& word : unique) {
            bool in_vocab = vocab.contains(byte_encode(word)) ||
                            vocab.contains(byte_encode(" " + word));
            if (!in_vocab) ++oov;
        }
        report.per_document.push_back(static_cast<double>(oov) /
                                      static_cast<double>(unique.size()));
    }
    report.median = median_of(report.per_document);
    return report;
}

OovReport oov_rate(std::istream& documents, const Vocabulary& vocab, std::string_view strip) {
    return oov_rate(read_lines(documents), vocab, strip);
}

nlohmann::json OovReport::to_json() const {
    return {{"per_document", per_document},
            {"median", median},
            {"empty_documents", empty_documents}};
}

DiffReport compare(const std::vector<std::string>& documents, const ExtendedVocabulary& ev,
                   std::string_view strip) {
    DiffReport report;
    WordTokenizer tok_a = word_tokenizer(ev, Mode::bpe);
    WordTokenizer tok_b = word_tokenizer(ev, Mode::adaptbpe);

    struct PairStats {
        std::uint64_t occurrences = 0;
        std::vector<std::string> tokens_a;
        std::vector<std::string> tokens_b;
    };
    std::map<std::string, PairStats> words;
    for (const auto& doc : documents) {
        for (auto& word : corpus_words(doc, strip)) {
            auto it = words.find(word);
            if (it == words.end()) {
                PairStats stats;
                stats.tokens_a = tok_a(word);
                stats.tokens_b = tok_b(word);
                it = words.emplace(std::move(word), std::move(stats)).first;
            }
            it->second.occurrences += 1;
        }
    }

    auto domain_hits = [&](const std::vector<std::string>& tokens) {
        std::uint64_t hits = 0;
        for (const auto& t : tokens) {
            if (auto id = ev.id_of(t); id && *id >= ev.domain_id_start()) ++hits;
        }
        return hits;
    };
    for (const auto& [word, stats] : words) {
        report.fragment_a.per_word[word] = {stats.occurrences,
                                            static_cast<std::uint32_t>(stats.tokens_a.size())};
        report.fragment_b.per_word[word] = {stats.occurrences,
                                            static_cast<std::uint32_t>(stats.tokens_b.size())};
        report.domain_token_usage_a += stats.occurrences * domain_hits(stats.tokens_a);
        report.domain_token_usage_b += stats.occurrences * domain_hits(stats.tokens_b);
        if (stats.tokens_a != stats.tokens_b) {
            report.changed_words.push_back({word, stats.tokens_a, stats.tokens_b});
        }
    }
    finalize(report.fragment_a);
    finalize(report.fragment_b);
    if (report.fragment_a.scores_defined && report.fragment_a.fragment_score_occurrence > 0) {
        report.drop_percent = 100.0 *
                              (report.fragment_a.fragment_score_occurrence -
                               report.fragment_b.fragment_score_occurrence) /
                              report.fragment_a.fragment_score_occurrence;
    }
    return report;
}

DiffReport compare(std::istream& corpus, const ExtendedVocabulary& ev,
                   std::string_view strip) {
    return compare(read_lines(corpus), ev, strip);
}

nlohmann::json DiffReport::to_json(bool include_changed_words) const {
    nlohmann::json j{{"fragment_a", fragment_a.to_json()},
                     {"fragment_b", fragment_b.to_json()},
                     {"drop_percent", drop_percent},
                     {"word_count", fragment_a.word_count},
                     {"domain_token_usage",
                      {{"bpe", domain_token_usage_a}, {"adaptbpe", domain_token_usage_b}}}};
    nlohmann::json changed = nlohmann::json::array();
    if (include_changed_words) {
        for (const auto& cw : changed_words) {
            changed.push_back({{"word", cw.word},
                               {"tokens_a", cw.tokens_a},
                               {"tokens_b", cw.tokens_b}});
        }
    }
    j["changed_words"] = std::move(changed);
    return j;
}

}  // namespace adaptok
