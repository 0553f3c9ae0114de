#include "adaptok/match_index.hpp"

#include "adaptok/byte_level.hpp"

namespace adaptok {

MatchIndex::MatchIndex(const std::vector<std::string>& tokens) : tokens_(tokens) {
    nodes_.emplace_back();
    for (std::size_t t = 0; t < tokens_.size(); ++t) {
        const std::vector<std::string> syms = split_symbols(tokens_[t]);
        if (syms.empty()) continue;
        std::size_t node = 0;
        for (const auto& s : syms) {
            auto [it, inserted] = nodes_[node].children.try_emplace(s, nodes_.size());
            if (inserted) nodes_.emplace_back();
            node = it->second;
        }
        if (nodes_[node].token < 0) nodes_[node].token = static_cast<std::ptrdiff_t>(t);
        max_len_ = std::max(max_len_, syms.size());
    }
}

std::optional<MatchIndex::Match> MatchIndex::longest_substr(
        const std::vector<std::string>& symbols, const std::vector<char>& masked) const {
    if (tokens_.empty() || symbols.empty()) return std::nullopt;
    std::optional<Match> best;
    const std::size_t n = symbols.size();
    for (std::size_t start = 0; start < n; ++start) {
        if (!masked.empty() && masked[start]) continue;
        // no point scanning once even a full-length walk cannot beat best
        if (best && n - start < best->len + 1) break;
        std::size_t node = 0;
        for (std::size_t i = start; i < n && i - start < max_len_; ++i) {
            if (!masked.empty() && masked[i]) break;
            auto it = nodes_[node].children.find(symbols[i]);
            if (it == nodes_[node].children.end()) break;
            node = it->second;
            if (nodes_[node].token >= 0) {
                std::size_t len = i - start + 1;
                if (!best || len > best->len) {
                    best = Match{start, len, static_cast<std::size_t>(nodes_[node].token)};
                }
            }
        }
    }
    return best;
}

}  // namespace adaptok
