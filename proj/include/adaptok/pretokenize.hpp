#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adaptok {

// One pre-token: the byte-level surface (space marker included) plus the
// byte span it covers in the original text.
struct PreToken {
    std::string surface;
    std::size_t begin = 0;  // byte offset into the original text
    std::size_t end = 0;    // one past the last byte

    bool operator==(const PreToken&) const = default;
};

// Split raw text into pre-tokens with the GPT-2 rule family: contractions,
// letter runs, digit runs, punctuation runs, whitespace handling with one
// space attached as a prefix to the following word. Surfaces are returned
// byte-encoded. Total over arbitrary bytes; joining the surfaces and
// byte-decoding reconstructs the input exactly.
std::vector<PreToken> pre_tokenize(std::string_view text);

}  // namespace adaptok
