#include "adaptok/builder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "adaptok/adapt.hpp"
#include "adaptok/byte_level.hpp"
#include "adaptok/metrics.hpp"

namespace adaptok {

namespace {

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

// Occurrence-weighted mean subword count of `words` under the adaptive
// tokenizer extended with a candidate prefix.
double score_with_prefix(const std::map<std::string, std::uint64_t>& words,
                         const Vocabulary& base, const MergeRuleTable& merges,
                         const std::vector<std::string>& tokens,
                         const std::vector<MergeRuleTable::Rule>& token_merges,
                         std::size_t prefix) {
    std::vector<std::string> chosen(tokens.begin(), tokens.begin() + prefix);
    std::vector<MergeRuleTable::Rule> chosen_merges(token_merges.begin(),
                                                    token_merges.begin() + prefix);
    ExtendedVocabulary ev = extend(base, merges, chosen, chosen_merges).ev;
    WordTokenizer tokenize = word_tokenizer(ev, Mode::adaptbpe);

    std::uint64_t occurrences = 0;
    std::uint64_t weighted = 0;
    for (const auto& [word, count] : words) {
        occurrences += count;
        weighted += count * tokenize(word).size();
    }
    if (occurrences == 0) return 0.0;
    return static_cast<double>(weighted) / static_cast<double>(occurrences);
}

}  // namespace

void BuildConfig::validate(bool need_gamma, bool need_grid) const {
    if (need_gamma && !(gamma > 1.0)) {
        throw std::invalid_argument("gamma must be greater than 1");
    }
    if (need_grid) {
        if (size_grid.empty()) throw std::invalid_argument("size grid must be non-empty");
        for (std::size_t i = 1; i < size_grid.size(); ++i) {
            if (size_grid[i] <= size_grid[i - 1]) {
                throw std::invalid_argument("size grid must be strictly increasing");
            }
        }
    }
    if (threshold_k != 1 && threshold_k != 2) {
        throw std::invalid_argument("threshold_k must be 1 or 2");
    }
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    if (need_gamma && batch == 0) throw std::invalid_argument("batch must be positive");
}

CandidatePool collect_candidates(const std::vector<std::string>& documents,
                                 const Vocabulary& base, const MergeRuleTable& merges,
                                 int threshold_k, std::size_t max_candidates) {
    CandidatePool pool;
    pool.threshold_k = threshold_k;

    ExtendedVocabulary base_ev = extend(base, merges, {}).ev;
    WordTokenizer tokenize = word_tokenizer(base_ev, Mode::bpe);

    for (const auto& doc : documents) {
        for (auto& word : corpus_words(doc)) pool.all_words[std::move(word)] += 1;
    }
    for (const auto& [word, count] : pool.all_words) {
        if (tokenize(word).size() > static_cast<std::size_t>(threshold_k)) {
            pool.words.emplace(word, count);
        }
    }
    if (pool.words.empty()) return pool;

    // train on the mid-sentence surfaces the scorer uses
    std::map<std::string, std::uint64_t> training;
    for (const auto& [word, count] : pool.words) {
        training[byte_encode(" " + word)] += count;
    }
    TrainResult trained = train_bpe(training, max_candidates);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < trained.merges.size(); ++i) {
        std::string token = trained.merges[i].first + trained.merges[i].second;
        // distinct merges can compose the same string; keep the first
        if (base.contains(token) || !seen.insert(token).second) continue;
        pool.ranked_subwords.push_back(std::move(token));
        pool.ranked_merges.push_back(trained.merges[i]);
    }
    return pool;
}

CandidatePool collect_candidates(std::istream& corpus, const Vocabulary& base,
                                 const MergeRuleTable& merges, int threshold_k,
                                 std::size_t max_candidates) {
    return collect_candidates(read_lines(corpus), base, merges, threshold_k, max_candidates);
}

BuildResult build_avocado(const CandidatePool& pool, const Vocabulary& base,
                          const MergeRuleTable& merges, double gamma, std::size_t batch) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must be greater than 1");
    if (batch == 0) throw std::invalid_argument("batch must be positive");

    BuildResult result;
    std::size_t size = 0;
    double score = score_with_prefix(pool.words, base, merges, pool.ranked_subwords,
                                     pool.ranked_merges, size);
    result.trajectory.emplace_back(size, score);
    while (score > gamma && size < pool.ranked_subwords.size()) {
        size = std::min(size + batch, pool.ranked_subwords.size());
        score = score_with_prefix(pool.words, base, merges, pool.ranked_subwords,
                                  pool.ranked_merges, size);
        result.trajectory.emplace_back(size, score);
    }
    result.exhausted = score > gamma;
    result.chosen_size = size;
    result.tokens.assign(pool.ranked_subwords.begin(), pool.ranked_subwords.begin() + size);
    result.merges.assign(pool.ranked_merges.begin(), pool.ranked_merges.begin() + size);
    return result;
}

BuildResult build_sizesearch(const CandidatePool& pool, const Vocabulary& base,
                             const MergeRuleTable& merges,
                             const std::vector<std::size_t>& size_grid, double epsilon) {
    if (size_grid.empty()) throw std::invalid_argument("size grid must be non-empty");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");

    BuildResult result;
    double min_score = 0.0;
    for (std::size_t s : size_grid) {
        std::size_t capped = std::min(s, pool.ranked_subwords.size());
        double score = score_with_prefix(pool.all_words, base, merges, pool.ranked_subwords,
                                         pool.ranked_merges, capped);
        result.trajectory.emplace_back(capped, score);
        if (result.trajectory.size() == 1 || score < min_score) min_score = score;
    }
    for (const auto& [size, score] : result.trajectory) {
        if (score <= (1.0 + epsilon) * min_score) {
            result.chosen_size = size;
            break;
        }
    }
    result.tokens.assign(pool.ranked_subwords.begin(),
                         pool.ranked_subwords.begin() + result.chosen_size);
    result.merges.assign(pool.ranked_merges.begin(),
                         pool.ranked_merges.begin() + result.chosen_size);
    return result;
}

nlohmann::json BuildResult::manifest(const std::string& strategy,
                                     const BuildConfig& config) const {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& [size, score] : trajectory) {
        traj.push_back({{"size", size}, {"score", score}});
    }
    nlohmann::json cfg{{"threshold_k", config.threshold_k},
                       {"max_candidates", config.max_candidates}};
    if (strategy == "avocado") {
        cfg["gamma"] = config.gamma;
        cfg["batch"] = config.batch;
    } else {
        cfg["size_grid"] = config.size_grid;
        cfg["epsilon"] = config.epsilon;
    }
    return {{"strategy", strategy},
            {"config", cfg},
            {"chosen_size", chosen_size},
            {"exhausted", exhausted},
            {"trajectory", traj}};
}

}  // namespace adaptok
