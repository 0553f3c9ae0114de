#include "adaptok/adapt.hpp"

#include <algorithm>

#include "adaptok/byte_level.hpp"
#include "adaptok/pretokenize.hpp"

namespace adaptok {

InitSegmentation adapt_initialize(std::string_view surface, const MatchIndex& index) {
    const std::vector<std::string> symbols = split_symbols(surface);
    InitSegmentation segments;
    if (index.empty()) {
        segments.reserve(symbols.size());
        for (const auto& s : symbols) segments.push_back({s, false});
        return segments;
    }

    std::vector<char> masked(symbols.size(), 0);
    std::vector<MatchIndex::Match> matches;
    while (auto m = index.longest_substr(symbols, masked)) {
        matches.push_back(*m);
        std::fill(masked.begin() + m->pos, masked.begin() + m->pos + m->len, 1);
    }
    std::sort(matches.begin(), matches.end(),
              [](const MatchIndex::Match& a, const MatchIndex::Match& b) { return a.pos < b.pos; });

    std::size_t next_match = 0;
    std::size_t i = 0;
    while (i < symbols.size()) {
        if (next_match < matches.size() && matches[next_match].pos == i) {
            const auto& m = matches[next_match++];
            segments.push_back({index.token(m.token), true});
            i += m.len;
        } else {
            segments.push_back({symbols[i], false});
            ++i;
        }
    }
    return segments;
}

std::vector<std::string> adapt_encode_word(std::string_view surface, const MatchIndex& index,
                                           const MergeRuleTable& merges, MergeTrace* trace,
                                           InitSegmentation* init) {
    InitSegmentation initial = adapt_initialize(surface, index);
    std::vector<std::string> segments;
    segments.reserve(initial.size());
    for (const auto& seg : initial) segments.push_back(seg.surface);
    if (init) *init = std::move(initial);
    run_merge_loop(segments, merges, trace);
    return segments;
}

TokenSequence adapt_encode(std::string_view text, const ExtendedVocabulary& ev) {
    TokenSequence out;
    const MatchIndex& index = ev.domain().match_index;
    for (const PreToken& pt : pre_tokenize(text)) {
        resolve_tokens(adapt_encode_word(pt.surface, index, ev.merges()), ev, pt.begin, out);
    }
    return out;
}

}  // namespace adaptok
