#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace adaptok {

// Substring-query structure over a token set: given a symbol sequence,
// find the longest member occurring as a contiguous, unmasked substring.
// Built once, immutable afterwards; queries are read-only.
class MatchIndex {
public:
    MatchIndex() = default;
    explicit MatchIndex(const std::vector<std::string>& tokens);

    struct Match {
        std::size_t pos = 0;  // symbol index of the match start
        std::size_t len = 0;  // match length in symbols
        std::size_t token = 0;  // index into tokens()
    };

    // Longest member occurring as a substring of `symbols` that touches no
    // masked position. Ties on length break to the leftmost occurrence.
    // `masked` may be empty (nothing masked) or have the same size as
    // `symbols`.
    std::optional<Match> longest_substr(const std::vector<std::string>& symbols,
                                        const std::vector<char>& masked = {}) const;

    bool empty() const { return tokens_.empty(); }
    std::size_t size() const { return tokens_.size(); }
    const std::string& token(std::size_t i) const { return tokens_[i]; }
    const std::vector<std::string>& tokens() const { return tokens_; }

private:
    struct Node {
        std::unordered_map<std::string, std::size_t> children;  // symbol -> node
        std::ptrdiff_t token = -1;  // terminal: index into tokens_
    };

    std::vector<std::string> tokens_;
    std::vector<Node> nodes_;
    std::size_t max_len_ = 0;  // longest token, in symbols
};

}  // namespace adaptok
