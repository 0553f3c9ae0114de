#include "adaptok/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adaptok {

namespace {

using nlohmann::json;

// SAX handler for vocab.json: a single flat object of token -> integer id.
// Parsing through SAX keeps duplicate keys visible, which json::parse would
// silently collapse.
struct VocabSax : nlohmann::json_sax<json> {
    std::vector<std::pair<std::string, int>> entries;
    std::string current_key;
    int depth = 0;
    bool have_key = false;

    bool key(string_t& val) override {
        current_key = val;
        have_key = true;
        return true;
    }
    bool number_integer(number_integer_t val) override { return add(static_cast<long long>(val)); }
    bool number_unsigned(number_unsigned_t val) override { return add(static_cast<long long>(val)); }

    bool start_object(std::size_t) override {
        if (++depth > 1) throw std::runtime_error("vocab document: nested objects are not allowed");
        return true;
    }
    bool end_object() override {
        --depth;
        return true;
    }
    bool start_array(std::size_t) override {
        throw std::runtime_error("vocab document: arrays are not allowed");
    }
    bool end_array() override { return true; }
    bool null() override { return fail("null"); }
    bool boolean(bool) override { return fail("boolean"); }
    bool number_float(number_float_t, const string_t&) override { return fail("float"); }
    bool string(string_t&) override { return fail("string"); }
    bool binary(binary_t&) override { return fail("binary"); }

    bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
        throw std::runtime_error("vocab document: parse error at byte " + std::to_string(pos) +
                                 ": " + ex.what());
    }

private:
    bool add(long long v) {
        if (!have_key) return fail("top-level number");
        if (v < 0) throw std::runtime_error("vocab document: negative id for token '" + current_key + "'");
        if (v > std::numeric_limits<int>::max()) {
            throw std::runtime_error("vocab document: id out of range for token '" + current_key + "'");
        }
        entries.emplace_back(current_key, static_cast<int>(v));
        have_key = false;
        return true;
    }
    bool fail(const char* what) {
        throw std::runtime_error(std::string("vocab document: unexpected ") + what +
                                 (have_key ? " value for token '" + current_key + "'" : ""));
    }
};

std::string json_escape(const std::string& s) {
    return json(s).dump();  // dump of a string value includes the quotes
}

bool blank(const std::string& line) {
    for (char c : line) {
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

}  // namespace

Vocabulary Vocabulary::load(std::istream& in, std::vector<std::string>* warnings) {
    VocabSax sax;
    if (!json::sax_parse(in, &sax)) {
        throw std::runtime_error("vocab document: parse failed");
    }
    return from_entries(sax.entries, warnings);
}

Vocabulary Vocabulary::load_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open vocab file: " + path);
    return load(in, warnings);
}

Vocabulary Vocabulary::from_entries(const std::vector<std::pair<std::string, int>>& entries,
                                    std::vector<std::string>* warnings) {
    Vocabulary v;
    v.by_token_.reserve(entries.size());
    v.by_id_.reserve(entries.size());
    for (const auto& [token, id] : entries) {
        if (id < 0) throw std::runtime_error("vocab document: negative id for token '" + token + "'");
        if (!v.by_token_.emplace(token, id).second) {
            throw std::runtime_error("vocab document: duplicate token '" + token + "'");
        }
        if (!v.by_id_.emplace(id, token).second) {
            throw std::runtime_error("vocab document: duplicate id " + std::to_string(id));
        }
        v.max_id_ = std::max(v.max_id_, id);
    }
    v.dense_ = v.by_token_.empty() || v.max_id_ + 1 == static_cast<int>(v.by_token_.size());
    if (!v.dense_ && warnings) {
        warnings->push_back("vocab ids are not dense: " + std::to_string(v.by_token_.size()) +
                            " entries, max id " + std::to_string(v.max_id_));
    }
    return v;
}

std::optional<int> Vocabulary::id_of(std::string_view token) const {
    auto it = by_token_.find(std::string(token));
    if (it == by_token_.end()) return std::nullopt;
    return it->second;
}

const std::string* Vocabulary::token_of(int id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
}

void Vocabulary::save(std::ostream& out) const {
    // by id, so identical vocabularies serialize identically
    std::vector<std::pair<int, const std::string*>> ordered;
    ordered.reserve(by_id_.size());
    for (const auto& [id, token] : by_id_) ordered.emplace_back(id, &token);
    std::sort(ordered.begin(), ordered.end());
    out << "{";
    bool first = true;
    for (const auto& [id, token] : ordered) {
        if (!first) out << ", ";
        first = false;
        out << json_escape(*token) << ": " << id;
    }
    out << "}\n";
}

MergeRuleTable MergeRuleTable::load(std::istream& in, std::size_t* domain_split) {
    MergeRuleTable t;
    if (domain_split) *domain_split = npos;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        if (line[0] == '#') {
            if (domain_split && line.rfind("#domain", 0) == 0 && *domain_split == npos) {
                *domain_split = t.rules_.size();
            }
            continue;
        }
        std::istringstream fields(line);
        std::string left, right, extra;
        if (!(fields >> left >> right) || (fields >> extra)) {
            throw std::runtime_error("merges document line " + std::to_string(lineno) +
                                     ": expected exactly two fields: '" + line + "'");
        }
        try {
            t.append(left, right);
        } catch (const std::runtime_error&) {
            throw std::runtime_error("merges document line " + std::to_string(lineno) +
                                     ": duplicate pair '" + left + " " + right + "'");
        }
    }
    return t;
}

MergeRuleTable MergeRuleTable::load_file(const std::string& path, std::size_t* domain_split) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open merges file: " + path);
    return load(in, domain_split);
}

MergeRuleTable MergeRuleTable::from_rules(const std::vector<Rule>& rules) {
    MergeRuleTable t;
    for (const auto& [l, r] : rules) t.append(l, r);
    return t;
}

std::optional<std::size_t> MergeRuleTable::rank_of(std::string_view left, std::string_view right) const {
    auto it = rank_.find(Rule(std::string(left), std::string(right)));
    if (it == rank_.end()) return std::nullopt;
    return it->second;
}

void MergeRuleTable::append(const std::string& left, const std::string& right) {
    Rule rule(left, right);
    auto [it, inserted] = rank_.emplace(rule, rules_.size());
    if (!inserted) throw std::runtime_error("duplicate merge rule '" + left + " " + right + "'");
    rules_.push_back(std::move(rule));
}

void MergeRuleTable::save(std::ostream& out, std::size_t domain_split) const {
    out << "#version: adaptok 1\n";
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (i == domain_split) out << "#domain\n";
        out << rules_[i].first << ' ' << rules_[i].second << '\n';
    }
    if (domain_split == rules_.size()) out << "#domain\n";
}

std::optional<int> ExtendedVocabulary::id_of(std::string_view token) const {
    if (auto id = base_.id_of(token)) return id;
    auto it = domain_.ids.find(std::string(token));
    if (it == domain_.ids.end()) return std::nullopt;
    return it->second;
}

const std::string* ExtendedVocabulary::token_of(int id) const {
    if (id >= domain_id_start_) {
        std::size_t i = static_cast<std::size_t>(id - domain_id_start_);
        if (i < domain_.tokens.size()) return &domain_.tokens[i];
        return nullptr;
    }
    return base_.token_of(id);
}

bool ExtendedVocabulary::operator==(const ExtendedVocabulary& other) const {
    return base_ == other.base_ && domain_.tokens == other.domain_.tokens &&
           domain_.appended_merges == other.domain_.appended_merges && merges_ == other.merges_;
}

ExtendResult extend(Vocabulary base, MergeRuleTable base_merges,
                    const std::vector<std::string>& domain_tokens,
                    const std::vector<MergeRuleTable::Rule>& domain_merges) {
    ExtendResult result;
    ExtendedVocabulary& ev = result.ev;
    ev.base_ = std::move(base);
    ev.base_merge_count_ = base_merges.size();
    ev.merges_ = std::move(base_merges);
    // appended ids start after the base range; a base with id holes keeps
    // its max id, so start above it
    ev.domain_id_start_ = std::max(static_cast<int>(ev.base_.size()), ev.base_.max_id() + 1);

    int next_id = ev.domain_id_start_;
    for (const auto& token : domain_tokens) {
        if (token.empty()) throw std::invalid_argument("domain token must be non-empty");
        if (ev.base_.contains(token)) {
            ++result.filtered_in_base;
            continue;
        }
        if (!ev.domain_.ids.emplace(token, next_id).second) {
            ++result.filtered_duplicate;
            continue;
        }
        ev.domain_.tokens.push_back(token);
        ++next_id;
    }
    for (const auto& [l, r] : domain_merges) {
        // a pair already present keeps its base rank; appending it again
        // would never fire
        if (ev.merges_.rank_of(l, r)) continue;
        ev.merges_.append(l, r);
        ev.domain_.appended_merges.emplace_back(l, r);
    }
    ev.domain_.match_index = MatchIndex(ev.domain_.tokens);
    return result;
}

std::vector<std::string> load_domain_tokens(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        tokens.push_back(line);
    }
    return tokens;
}

std::vector<std::string> load_domain_tokens_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open domain token file: " + path);
    return load_domain_tokens(in);
}

void save_domain_tokens(std::ostream& out, const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) out << t << '\n';
}

void save_extended(const ExtendedVocabulary& ev, std::ostream& vocab_out,
                   std::ostream& merges_out, std::ostream& domain_out) {
    // full map: base entries plus the appended domain range
    std::vector<std::pair<std::string, int>> entries;
    for (int id = 0; id <= ev.base().max_id(); ++id) {
        if (const std::string* tok = ev.base().token_of(id)) entries.emplace_back(*tok, id);
    }
    for (std::size_t i = 0; i < ev.domain().tokens.size(); ++i) {
        entries.emplace_back(ev.domain().tokens[i], ev.domain_id_start() + static_cast<int>(i));
    }
    Vocabulary::from_entries(entries).save(vocab_out);

    std::size_t split = ev.domain().appended_merges.empty() ? MergeRuleTable::npos
                                                            : ev.base_merge_count();
    ev.merges().save(merges_out, split);
    save_domain_tokens(domain_out, ev.domain().tokens);
}

ExtendedVocabulary load_extended(std::istream& vocab_in, std::istream& merges_in,
                                 std::istream& domain_in, std::vector<std::string>* warnings) {
    Vocabulary full = Vocabulary::load(vocab_in, warnings);
    std::size_t domain_split = MergeRuleTable::npos;
    MergeRuleTable merges = MergeRuleTable::load(merges_in, &domain_split);
    std::vector<std::string> domain_tokens = load_domain_tokens(domain_in);

    if (domain_tokens.size() > full.size()) {
        throw std::runtime_error("domain token list is larger than the vocabulary");
    }
    // the domain tokens occupy the top of the id range, in order
    int start = full.max_id() + 1 - static_cast<int>(domain_tokens.size());
    std::vector<std::pair<std::string, int>> base_entries;
    base_entries.reserve(full.size() - domain_tokens.size());
    for (int id = 0; id < start; ++id) {
        if (const std::string* tok = full.token_of(id)) base_entries.emplace_back(*tok, id);
    }
    for (std::size_t i = 0; i < domain_tokens.size(); ++i) {
        const std::string* tok = full.token_of(start + static_cast<int>(i));
        if (!tok || *tok != domain_tokens[i]) {
            throw std::runtime_error("domain token '" + domain_tokens[i] +
                                     "' does not occupy the expected id " +
                                     std::to_string(start + static_cast<int>(i)));
        }
    }
    Vocabulary base = Vocabulary::from_entries(base_entries, warnings);

    std::vector<MergeRuleTable::Rule> base_rules(merges.rules().begin(),
                                                 merges.rules().begin() +
                                                     (domain_split == MergeRuleTable::npos
                                                          ? merges.size()
                                                          : domain_split));
    std::vector<MergeRuleTable::Rule> domain_rules;
    if (domain_split != MergeRuleTable::npos) {
        domain_rules.assign(merges.rules().begin() + domain_split, merges.rules().end());
    }
    return extend(std::move(base), MergeRuleTable::from_rules(base_rules), domain_tokens,
                  domain_rules)
        .ev;
}

ExtendedVocabulary load_tokenizer(const std::string& vocab_path, const std::string& merges_path,
                                  const std::string& domain_path,
                                  std::vector<std::string>* warnings) {
    if (domain_path.empty()) {
        Vocabulary base = Vocabulary::load_file(vocab_path, warnings);
        MergeRuleTable merges = MergeRuleTable::load_file(merges_path);
        return extend(std::move(base), std::move(merges), {}).ev;
    }
    std::vector<std::string> domain_tokens = load_domain_tokens_file(domain_path);
    Vocabulary vocab = Vocabulary::load_file(vocab_path, warnings);

    // saved-extended layout: domain tokens already sit at the top ids
    bool already_extended = !domain_tokens.empty() && domain_tokens.size() <= vocab.size();
    if (already_extended) {
        int start = vocab.max_id() + 1 - static_cast<int>(domain_tokens.size());
        for (std::size_t i = 0; i < domain_tokens.size(); ++i) {
            const std::string* tok = vocab.token_of(start + static_cast<int>(i));
            if (!tok || *tok != domain_tokens[i]) {
                already_extended = false;
                break;
            }
        }
    }
    if (already_extended) {
        std::ifstream vin(vocab_path, std::ios::binary);
        std::ifstream min(merges_path, std::ios::binary);
        std::ifstream din(domain_path, std::ios::binary);
        if (!vin || !min || !din) throw std::runtime_error("cannot reopen tokenizer files");
        return load_extended(vin, min, din, warnings);
    }
    std::size_t domain_split = MergeRuleTable::npos;
    MergeRuleTable merges = MergeRuleTable::load_file(merges_path, &domain_split);
    std::vector<MergeRuleTable::Rule> base_rules(
        merges.rules().begin(),
        merges.rules().begin() +
            (domain_split == MergeRuleTable::npos ? merges.size() : domain_split));
    std::vector<MergeRuleTable::Rule> domain_rules;
    if (domain_split != MergeRuleTable::npos) {
        domain_rules.assign(merges.rules().begin() + domain_split, merges.rules().end());
    }
    return extend(std::move(vocab), MergeRuleTable::from_rules(base_rules), domain_tokens,
                  domain_rules)
        .ev;
}

}  // namespace adaptok
