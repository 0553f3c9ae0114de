#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adaptok/adapt.hpp"
#include "adaptok/bpe.hpp"
#include "adaptok/builder.hpp"
#include "adaptok/byte_level.hpp"
#include "adaptok/metrics.hpp"
#include "adaptok/pretokenize.hpp"
#include "adaptok/vocab.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string vocab_path;
    std::string merges_path;
    std::string domain_path;
    std::string mode = "bpe";
    std::string input_path = "-";
    std::string output_path = "-";
    bool jsonl = false;
};

void add_tokenizer_options(CLI::App* cmd, CommonOptions& opt, bool domain_required) {
    cmd->add_option("--vocab", opt.vocab_path, "vocab.json path")->required();
    cmd->add_option("--merges", opt.merges_path, "merges.txt path")->required();
    auto* domain = cmd->add_option("--domain", opt.domain_path,
                                   "domain token file, one token per line");
    if (domain_required) domain->required();
    cmd->add_option("--mode", opt.mode, "tokenizer: bpe or adaptbpe")
        ->check(CLI::IsMember({"bpe", "adaptbpe"}));
    cmd->add_option("--input,-i", opt.input_path, "input file, one document per line ('-' = stdin)");
    cmd->add_option("--output,-o", opt.output_path, "output file ('-' = stdout)");
    cmd->add_flag("--jsonl", opt.jsonl, "input lines are JSON objects with a \"text\" field");
}

std::istream& open_input(const std::string& path, std::ifstream& file) {
    if (path == "-") return std::cin;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open input file: " + path);
    return file;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::string line_text(const std::string& line, bool jsonl) {
    if (!jsonl) return line;
    json doc = json::parse(line);
    return doc.at("text").get<std::string>();
}

std::vector<std::string> read_documents(std::istream& in, bool jsonl) {
    std::vector<std::string> docs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        docs.push_back(line_text(line, jsonl));
    }
    return docs;
}

adaptok::ExtendedVocabulary load_ev(const CommonOptions& opt) {
    std::vector<std::string> warnings;
    adaptok::ExtendedVocabulary ev =
        adaptok::load_tokenizer(opt.vocab_path, opt.merges_path, opt.domain_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return ev;
}

std::string escape_tsv(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

json trace_for_line(const std::string& text, const adaptok::ExtendedVocabulary& ev, bool adaptive) {
    json traces = json::array();
    for (const adaptok::PreToken& pt : adaptok::pre_tokenize(text)) {
        adaptok::MergeTrace trace;
        json entry{{"pre_token", pt.surface}};
        if (adaptive) {
            adaptok::InitSegmentation init;
            adaptok::adapt_encode_word(pt.surface, ev.domain().match_index, ev.merges(), &trace,
                                       &init);
            json segs = json::array();
            for (const auto& seg : init) {
                segs.push_back({{"surface", seg.surface}, {"domain_match", seg.domain_match}});
            }
            entry["init"] = std::move(segs);
        } else {
            adaptok::encode_word(pt.surface, ev.merges(), &trace);
        }
        json applied = json::array();
        for (const auto& step : trace) {
            applied.push_back({{"left", step.left}, {"right", step.right}, {"rank", step.rank}});
        }
        entry["applied"] = std::move(applied);
        traces.push_back(std::move(entry));
    }
    return traces;
}

int run_tokenize(const CommonOptions& opt, const std::string& format, bool with_ids, bool with_trace) {
    adaptok::ExtendedVocabulary ev = load_ev(opt);
    const bool adaptive = opt.mode == "adaptbpe";

    std::ifstream in_file;
    std::ofstream out_file;
    std::istream& in = open_input(opt.input_path, in_file);
    std::ostream& out = open_output(opt.output_path, out_file);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string text = line_text(line, opt.jsonl);
        adaptok::TokenSequence seq =
            adaptive ? adaptok::adapt_encode(text, ev) : adaptok::encode(text, ev);
        if (format == "json") {
            json j{{"tokens", seq.tokens}};
            if (with_ids) j["ids"] = seq.ids;
            if (with_trace) j["trace"] = trace_for_line(text, ev, adaptive);
            out << j.dump() << "\n";
        } else {
            std::string row;
            for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
                if (i) row += '\t';
                row += escape_tsv(seq.tokens[i]);
                if (with_ids) row += "=" + std::to_string(seq.ids[i]);
            }
            out << row << "\n";
        }
    }
    return 0;
}

int run_compare(const CommonOptions& opt) {
    adaptok::ExtendedVocabulary ev = load_ev(opt);
    std::ifstream in_file;
    std::ofstream out_file;
    std::istream& in = open_input(opt.input_path, in_file);
    std::ostream& out = open_output(opt.output_path, out_file);

    adaptok::DiffReport report = adaptok::compare(read_documents(in, opt.jsonl), ev);
    out << report.to_json().dump(2) << "\n";
    return 0;
}

int run_fragscore(const CommonOptions& opt, int min_subwords, bool per_word) {
    adaptok::ExtendedVocabulary ev = load_ev(opt);
    std::ifstream in_file;
    std::ofstream out_file;
    std::istream& in = open_input(opt.input_path, in_file);
    std::ostream& out = open_output(opt.output_path, out_file);

    adaptok::Mode mode = opt.mode == "adaptbpe" ? adaptok::Mode::adaptbpe : adaptok::Mode::bpe;
    adaptok::WordTokenizer tokenize = adaptok::word_tokenizer(ev, mode);
    std::function<bool(const std::string&)> filter;
    if (min_subwords > 0) {
        filter = [&tokenize, min_subwords](const std::string& word) {
            return tokenize(word).size() > static_cast<std::size_t>(min_subwords);
        };
    }
    adaptok::FragmentReport report =
        adaptok::fragment_score(read_documents(in, opt.jsonl), tokenize, filter);
    out << report.to_json(per_word).dump(2) << "\n";
    return 0;
}

int run_build_vocab(const CommonOptions& opt, const std::string& strategy,
                    adaptok::BuildConfig config, const std::string& out_dir) {
    config.validate(strategy == "avocado", strategy == "sizesearch");

    std::vector<std::string> warnings;
    adaptok::Vocabulary base = adaptok::Vocabulary::load_file(opt.vocab_path, &warnings);
    adaptok::MergeRuleTable merges = adaptok::MergeRuleTable::load_file(opt.merges_path);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    std::ifstream in_file;
    std::istream& in = open_input(opt.input_path, in_file);
    adaptok::CandidatePool pool =
        adaptok::collect_candidates(read_documents(in, opt.jsonl), base, merges,
                                    config.threshold_k, config.max_candidates);

    adaptok::BuildResult result;
    if (strategy == "avocado") {
        result = adaptok::build_avocado(pool, base, merges, config.gamma, config.batch);
    } else {
        result = adaptok::build_sizesearch(pool, base, merges, config.size_grid, config.epsilon);
    }

    adaptok::ExtendedVocabulary ev =
        adaptok::extend(std::move(base), std::move(merges), result.tokens, result.merges).ev;
    std::ofstream vocab_out(out_dir + "/vocab.json", std::ios::binary);
    std::ofstream merges_out(out_dir + "/merges.txt", std::ios::binary);
    std::ofstream domain_out(out_dir + "/domain.txt", std::ios::binary);
    std::ofstream manifest_out(out_dir + "/manifest.json", std::ios::binary);
    if (!vocab_out || !merges_out || !domain_out || !manifest_out) {
        throw std::runtime_error("cannot write build artifacts under: " + out_dir);
    }
    adaptok::save_extended(ev, vocab_out, merges_out, domain_out);
    manifest_out << result.manifest(strategy, config).dump(2) << "\n";
    std::cout << result.chosen_size << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"byte-level BPE tokenization with adaptive domain-vocabulary matching"};
    app.require_subcommand(1);

    CommonOptions tok_opt;
    std::string format = "json";
    bool with_ids = false;
    bool with_trace = false;
    CLI::App* tokenize = app.add_subcommand("tokenize", "tokenize one document per line");
    add_tokenizer_options(tokenize, tok_opt, false);
    tokenize->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}));
    tokenize->add_flag("--ids", with_ids, "emit token ids as well");
    tokenize->add_flag("--trace", with_trace, "emit per-word merge traces (json format only)");

    CommonOptions cmp_opt;
    CLI::App* compare = app.add_subcommand("compare", "standard-vs-adaptive corpus report");
    add_tokenizer_options(compare, cmp_opt, true);

    CommonOptions frag_opt;
    int min_subwords = 0;
    bool per_word = false;
    CLI::App* fragscore = app.add_subcommand("fragscore", "fragment-score report for a corpus");
    add_tokenizer_options(fragscore, frag_opt, false);
    fragscore->add_option("--min-subwords", min_subwords,
                          "keep only words split into more than this many subwords");
    fragscore->add_flag("--per-word", per_word, "include per-word stats in the report");

    CommonOptions build_opt;
    std::string strategy;
    std::string out_dir = ".";
    std::string grid_spec;
    adaptok::BuildConfig config;
    CLI::App* build = app.add_subcommand("build-vocab", "construct a domain vocabulary");
    build->add_option("--vocab", build_opt.vocab_path, "base vocab.json")->required();
    build->add_option("--merges", build_opt.merges_path, "base merges.txt")->required();
    build->add_option("--input,-i", build_opt.input_path, "target corpus, one document per line");
    build->add_flag("--jsonl", build_opt.jsonl, "input lines are JSON objects with a \"text\" field");
    build->add_option("--strategy", strategy, "avocado or sizesearch")
        ->required()
        ->check(CLI::IsMember({"avocado", "sizesearch"}));
    build->add_option("--gamma", config.gamma, "fragment-score threshold (avocado)");
    build->add_option("--size-grid", grid_spec, "comma-separated sizes (sizesearch)");
    build->add_option("--epsilon", config.epsilon, "relative tolerance for size selection");
    build->add_option("--min-subwords", config.threshold_k,
                      "candidate words split into more than this many subwords");
    build->add_option("--batch", config.batch, "tokens added per score recomputation");
    build->add_option("--max-candidates", config.max_candidates, "candidate training budget");
    build->add_option("--out-dir", out_dir, "directory for the emitted artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tokenize->parsed()) return run_tokenize(tok_opt, format, with_ids, with_trace);
        if (compare->parsed()) return run_compare(cmp_opt);
        if (fragscore->parsed()) return run_fragscore(frag_opt, min_subwords, per_word);
        if (build->parsed()) {
            if (!grid_spec.empty()) {
                config.size_grid.clear();
                std::stringstream ss(grid_spec);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    config.size_grid.push_back(std::stoul(item));
                }
            }
            return run_build_vocab(build_opt, strategy, config, out_dir);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
