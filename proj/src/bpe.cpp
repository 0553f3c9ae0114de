#include "adaptok/bpe.hpp"

#include <limits>
#include <stdexcept>

#include "adaptok/byte_level.hpp"
#include "adaptok/pretokenize.hpp"

namespace adaptok {

void run_merge_loop(std::vector<std::string>& segments, const MergeRuleTable& merges,
                    MergeTrace* trace) {
    while (segments.size() >= 2) {
        std::size_t best_rank = std::numeric_limits<std::size_t>::max();
        std::size_t best_at = segments.size();
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            if (auto rank = merges.rank_of(segments[i], segments[i + 1])) {
                if (*rank < best_rank) {
                    best_rank = *rank;
                    best_at = i;
                }
            }
        }
        if (best_at == segments.size()) break;
        const std::string left = segments[best_at];
        const std::string right = segments[best_at + 1];
        if (trace) trace->push_back({left, right, best_rank});

        // merge every occurrence, left to right, non-overlapping
        std::vector<std::string> next;
        next.reserve(segments.size());
        std::size_t i = 0;
        while (i < segments.size()) {
            if (i + 1 < segments.size() && segments[i] == left && segments[i + 1] == right) {
                next.push_back(left + right);
                i += 2;
            } else {
                next.push_back(std::move(segments[i]));
                i += 1;
            }
        }
        segments = std::move(next);
    }
}

std::vector<std::string> encode_word(std::string_view surface, const MergeRuleTable& merges,
                                     MergeTrace* trace) {
    std::vector<std::string> segments = split_symbols(surface);
    run_merge_loop(segments, merges, trace);
    return segments;
}

void resolve_tokens(const std::vector<std::string>& word_tokens, const ExtendedVocabulary& ev,
                    std::size_t word_begin, TokenSequence& out) {
    std::size_t offset = word_begin;
    auto push = [&](const std::string& token, int id) {
        std::size_t nbytes = symbol_count(token);  // one source byte per symbol
        out.tokens.push_back(token);
        out.ids.push_back(id);
        out.spans.emplace_back(offset, offset + nbytes);
        offset += nbytes;
    };
    for (const auto& token : word_tokens) {
        if (auto id = ev.id_of(token)) {
            push(token, *id);
            continue;
        }
        // unknown merged segment: emit its symbols individually
        for (const auto& sym : split_symbols(token)) {
            auto id = ev.id_of(sym);
            if (!id) {
                throw std::runtime_error("vocabulary is missing byte-level symbol '" + sym +
                                         "'; not a byte-level vocab?");
            }
            push(sym, *id);
        }
    }
}

TokenSequence encode(std::string_view text, const ExtendedVocabulary& ev) {
    TokenSequence out;
    for (const PreToken& pt : pre_tokenize(text)) {
        resolve_tokens(encode_word(pt.surface, ev.merges()), ev, pt.begin, out);
    }
    return out;
}

std::string decode(const std::vector<int>& ids, const ExtendedVocabulary& ev) {
    std::string symbols;
    for (int id : ids) {
        const std::string* token = ev.token_of(id);
        if (!token) throw std::out_of_range("decode: id " + std::to_string(id) + " out of range");
        symbols += *token;
    }
    return byte_decode(symbols);
}

TrainResult train_bpe(const std::map<std::string, std::uint64_t>& word_counts,
                      std::size_t target_merges) {
    TrainResult result;

    std::vector<std::vector<std::string>> words;
    std::vector<std::uint64_t> counts;
    words.reserve(word_counts.size());
    std::map<std::string, bool> symbols_seen;
    for (const auto& [word, count] : word_counts) {
        if (word.empty() || count == 0) continue;
        words.push_back(split_symbols(word));
        counts.push_back(count);
        for (const auto& s : words.back()) symbols_seen[s] = true;
    }
    for (const auto& [sym, _] : symbols_seen) result.tokens.push_back(sym);

    for (std::size_t step = 0; step < target_merges; ++step) {
        // weighted counts of adjacent pairs; ordered map so the frequency
        // tie-break is lexicographic
        std::map<MergeRuleTable::Rule, std::uint64_t> pair_counts;
        for (std::size_t w = 0; w < words.size(); ++w) {
            const auto& segs = words[w];
            for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
                pair_counts[{segs[i], segs[i + 1]}] += counts[w];
            }
        }
        const MergeRuleTable::Rule* best = nullptr;
        std::uint64_t best_count = 0;
        for (const auto& [pair, count] : pair_counts) {
            if (count > best_count) {
                best_count = count;
                best = &pair;
            }
        }
        if (!best || best_count < 2) break;

        const std::string left = best->first;
        const std::string right = best->second;
        result.merges.emplace_back(left, right);
        result.tokens.push_back(left + right);

        for (auto& segs : words) {
            if (segs.size() < 2) continue;
            std::vector<std::string> next;
            next.reserve(segs.size());
            std::size_t i = 0;
            while (i < segs.size()) {
                if (i + 1 < segs.size() && segs[i] == left && segs[i + 1] == right) {
                    next.push_back(left + right);
                    i += 2;
                } else {
                    next.push_back(std::move(segs[i]));
                    i += 1;
                }
            }
            segs = std::move(next);
        }
    }
    return result;
}

}  // namespace adaptok
