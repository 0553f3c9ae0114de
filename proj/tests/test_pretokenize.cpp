#include <doctest.h>

#include <random>

#include "adaptok/byte_level.hpp"
#include "adaptok/pretokenize.hpp"

using namespace adaptok;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& pt : pre_tokenize(text)) out.push_back(pt.surface);
    return out;
}

std::string roundtrip(std::string_view text) {
    std::string joined;
    for (const auto& pt : pre_tokenize(text)) joined += pt.surface;
    return byte_decode(joined);
}

std::string random_utf8(std::mt19937& rng, std::size_t max_cps) {
    std::string out;
    std::size_t n = rng() % (max_cps + 1);
    for (std::size_t i = 0; i < n; ++i) {
        switch (rng() % 6) {
            case 0: out.push_back(static_cast<char>('a' + rng() % 26)); break;
            case 1: out.push_back(static_cast<char>('0' + rng() % 10)); break;
            case 2: out.push_back(" \t\n'"[rng() % 4]); break;
            case 3: out += "\xC3\xA9"; break;        // e acute
            case 4: out += "\xE4\xB8\xAD"; break;    // CJK
            default: out += "\xF0\x9F\x99\x82"; break;  // emoji
        }
    }
    return out;
}

}  // namespace

TEST_CASE("space attaches to the following word") {
    CHECK(surfaces("the cat") == std::vector<std::string>{"the", space_marker() + "cat"});
}

TEST_CASE("empty text yields no pre-tokens") {
    CHECK(pre_tokenize("").empty());
}

TEST_CASE("a bare word is a single pre-token") {
    auto pts = pre_tokenize("hypercholesterolemia");
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].surface == "hypercholesterolemia");
    CHECK(pts[0].begin == 0);
    CHECK(pts[0].end == 20);
}

TEST_CASE("contractions split off") {
    CHECK(surfaces("don't") == std::vector<std::string>{"don", "'t"});
    CHECK(surfaces("we're I'll") ==
          std::vector<std::string>{"we", "'re", space_marker() + "I", "'ll"});
}

TEST_CASE("digits and punctuation form their own runs") {
    CHECK(surfaces("abc123") == std::vector<std::string>{"abc", "123"});
    CHECK(surfaces("x, y!") == std::vector<std::string>{"x", ",", space_marker() + "y", "!"});
}

TEST_CASE("runs of spaces keep one space for the next word") {
    auto got = surfaces("a  b");
    REQUIRE(got.size() == 3);
    CHECK(got[0] == "a");
    CHECK(got[1] == space_marker());
    CHECK(got[2] == space_marker() + "b");
}

TEST_CASE("trailing whitespace is kept whole") {
    auto got = surfaces("hi  ");
    REQUIRE(got.size() == 2);
    CHECK(got[0] == "hi");
    CHECK(got[1] == space_marker() + space_marker());
}

TEST_CASE("newline before a word stays its own token") {
    auto got = surfaces("a\nb");
    REQUIRE(got.size() == 3);
    CHECK(got[1] == byte_encode("\n"));
    CHECK(got[2] == "b");
}

TEST_CASE("byte spans tile the text in order") {
    std::string text = "one two,  three\n";
    auto pts = pre_tokenize(text);
    std::size_t expect_begin = 0;
    for (const auto& pt : pts) {
        CHECK(pt.begin == expect_begin);
        CHECK(pt.end > pt.begin);
        expect_begin = pt.end;
    }
    CHECK(expect_begin == text.size());
}

TEST_CASE("word tokens carry at most one leading space marker") {
    // pure-whitespace tokens (indentation runs) may hold several whitespace
    // symbols; any token with real content allows whitespace only as a
    // single marker at position 0
    auto is_ws_symbol = [](const std::string& sym) {
        std::string raw = byte_decode(sym);
        return raw.size() == 1 && (raw[0] == ' ' || raw[0] == '\t' || raw[0] == '\n' ||
                                   raw[0] == '\r' || raw[0] == '\v' || raw[0] == '\f');
    };
    std::mt19937 rng(11);
    for (int round = 0; round < 300; ++round) {
        for (const auto& pt : pre_tokenize(random_utf8(rng, 40))) {
            auto syms = split_symbols(pt.surface);
            bool has_content = false;
            for (const auto& sym : syms) {
                if (!is_ws_symbol(sym)) has_content = true;
            }
            if (!has_content) continue;
            for (std::size_t i = 0; i < syms.size(); ++i) {
                if (i == 0) {
                    if (is_ws_symbol(syms[i])) CHECK(syms[i] == space_marker());
                } else {
                    CHECK(!is_ws_symbol(syms[i]));
                }
            }
        }
    }
}

TEST_CASE("pre-tokenization is lossless on random input") {
    std::mt19937 rng(13);
    for (int round = 0; round < 1000; ++round) {
        std::string text = random_utf8(rng, 60);
        CHECK(roundtrip(text) == text);
    }
    // raw bytes, including invalid utf-8
    for (int round = 0; round < 300; ++round) {
        std::string text;
        std::size_t len = rng() % 32;
        for (std::size_t i = 0; i < len; ++i) text.push_back(static_cast<char>(rng() % 256));
        CHECK(roundtrip(text) == text);
    }
}

TEST_CASE("pre-tokenization is deterministic") {
    std::string text = "Mixed 42 input, with\tthings숫자 and \xF0\x9F\x99\x82 more";
    CHECK(pre_tokenize(text) == pre_tokenize(text));
}
