#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adaptok/match_index.hpp"

namespace adaptok {

// Bidirectional token-string <-> id mapping, the vocab.json side of a
// byte-level BPE model.
class Vocabulary {
public:
    Vocabulary() = default;

    // Parses a UTF-8 JSON object mapping token strings to integer ids.
    // Throws std::runtime_error on malformed documents, duplicate tokens,
    // duplicate ids, or negative ids. Non-dense ids load fine but append a
    // note to `warnings` when given.
    static Vocabulary load(std::istream& in, std::vector<std::string>* warnings = nullptr);
    static Vocabulary load_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

    // Builds from (token, id) pairs under the same rules as load().
    static Vocabulary from_entries(const std::vector<std::pair<std::string, int>>& entries,
                                   std::vector<std::string>* warnings = nullptr);

    std::optional<int> id_of(std::string_view token) const;
    const std::string* token_of(int id) const;  // nullptr when unknown
    bool contains(std::string_view token) const { return id_of(token).has_value(); }
    std::size_t size() const { return by_token_.size(); }
    int max_id() const { return max_id_; }
    bool dense() const { return dense_; }

    // Serializes as a JSON object, entries ordered by id.
    void save(std::ostream& out) const;

    bool operator==(const Vocabulary& other) const { return by_token_ == other.by_token_; }

private:
    std::unordered_map<std::string, int> by_token_;
    std::unordered_map<int, std::string> by_id_;
    int max_id_ = -1;
    bool dense_ = true;
};

// Ordered merge rules; position in the list is the rank, 0 = highest
// priority.
class MergeRuleTable {
public:
    using Rule = std::pair<std::string, std::string>;

    MergeRuleTable() = default;

    // Parses the merges.txt convention: lines starting with '#' are skipped,
    // every other line holds exactly two whitespace-separated fields.
    // A "#domain" line marks where appended domain rules start; its rank is
    // reported through `domain_split` when given. Throws std::runtime_error
    // on malformed lines or duplicate pairs.
    static MergeRuleTable load(std::istream& in, std::size_t* domain_split = nullptr);
    static MergeRuleTable load_file(const std::string& path, std::size_t* domain_split = nullptr);
    static MergeRuleTable from_rules(const std::vector<Rule>& rules);

    std::optional<std::size_t> rank_of(std::string_view left, std::string_view right) const;
    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    // Appends a lower-priority rule; throws on duplicates.
    void append(const std::string& left, const std::string& right);

    // Writes "#version: adaptok 1" then one rule per line; rules from rank
    // `domain_split` on are preceded by a "#domain" marker line.
    void save(std::ostream& out, std::size_t domain_split = npos) const;

    bool operator==(const MergeRuleTable& other) const { return rules_ == other.rules_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    struct RuleHash {
        std::size_t operator()(const Rule& r) const {
            std::size_t h = std::hash<std::string>{}(r.first);
            return h ^ (std::hash<std::string>{}(r.second) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
        }
    };

    std::vector<Rule> rules_;
    std::unordered_map<Rule, std::size_t, RuleHash> rank_;
};

// The appended token set: tokens in id order (id = base size + position),
// optional merge rules appended after all base rules, and a substring index
// for the adaptive initializer.
struct DomainVocabulary {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> ids;  // token -> absolute id
    std::vector<MergeRuleTable::Rule> appended_merges;
    MatchIndex match_index;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
};

class ExtendedVocabulary;
struct ExtendResult;
ExtendResult extend(Vocabulary base, MergeRuleTable base_merges,
                    const std::vector<std::string>& domain_tokens,
                    const std::vector<MergeRuleTable::Rule>& domain_merges);

// Base vocabulary plus appended domain vocabulary, with the combined merge
// table used for encoding. Immutable after construction.
class ExtendedVocabulary {
public:
    ExtendedVocabulary() = default;

    const Vocabulary& base() const { return base_; }
    const DomainVocabulary& domain() const { return domain_; }
    const MergeRuleTable& merges() const { return merges_; }
    std::size_t base_merge_count() const { return base_merge_count_; }

    // First id of the domain range; every id at or above it is a domain
    // token.
    int domain_id_start() const { return domain_id_start_; }
    std::size_t base_size() const { return base_.size(); }
    std::size_t size() const { return base_.size() + domain_.size(); }

    std::optional<int> id_of(std::string_view token) const;
    const std::string* token_of(int id) const;

    bool operator==(const ExtendedVocabulary& other) const;

private:
    friend ExtendResult extend(Vocabulary base, MergeRuleTable base_merges,
                               const std::vector<std::string>& domain_tokens,
                               const std::vector<MergeRuleTable::Rule>& domain_merges);

    Vocabulary base_;
    DomainVocabulary domain_;
    MergeRuleTable merges_;  // base rules first, appended domain rules after
    std::size_t base_merge_count_ = 0;
    int domain_id_start_ = 0;
};

struct ExtendResult {
    ExtendedVocabulary ev;
    std::size_t filtered_in_base = 0;    // domain tokens already whole in the base
    std::size_t filtered_duplicate = 0;  // repeated within the domain list
};

// Appends domain tokens at the end of the base id space. Tokens already
// present whole in the base and duplicates within the list are filtered,
// with counts reported. Domain merges land after all base rules. Throws
// std::invalid_argument on empty token strings.
inline ExtendResult extend(Vocabulary base, MergeRuleTable base_merges,
                           const std::vector<std::string>& domain_tokens) {
    return extend(std::move(base), std::move(base_merges), domain_tokens, {});
}

// Domain-token document: one token per line, order defines id assignment.
std::vector<std::string> load_domain_tokens(std::istream& in);
std::vector<std::string> load_domain_tokens_file(const std::string& path);
void save_domain_tokens(std::ostream& out, const std::vector<std::string>& tokens);

// Writes the three documents: full vocab map (base + domain), merges (base
// rules, then "#domain", then appended rules), domain tokens in id order.
// load_extended(save_extended(ev)) reconstructs an equal vocabulary.
void save_extended(const ExtendedVocabulary& ev, std::ostream& vocab_out,
                   std::ostream& merges_out, std::ostream& domain_out);
ExtendedVocabulary load_extended(std::istream& vocab_in, std::istream& merges_in,
                                 std::istream& domain_in,
                                 std::vector<std::string>* warnings = nullptr);

// Convenience loader for the CLI: accepts either a base vocab plus separate
// domain file, or a saved extended vocab whose top ids already hold the
// domain tokens.
ExtendedVocabulary load_tokenizer(const std::string& vocab_path, const std::string& merges_path,
                                  const std::string& domain_path = "",
                                  std::vector<std::string>* warnings = nullptr);

}  // namespace adaptok
