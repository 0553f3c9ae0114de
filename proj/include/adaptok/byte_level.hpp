#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace adaptok {

// Byte-level symbol alphabet: a fixed bijection between the 256 byte values
// and printable unicode codepoints, following the vocab.json convention of
// byte-level BPE models. Printable bytes map to themselves, the rest are
// remapped above U+00FF. The space byte 0x20 surfaces as U+0120 ("Ġ").

// Symbol (UTF-8 encoded codepoint) for each byte value.
const std::array<std::string, 256>& byte_symbol_table();

// The symbol for 0x20, prefixed to words that follow a space.
const std::string& space_marker();

// Map raw bytes to their symbol string. Total over arbitrary bytes.
std::string byte_encode(std::string_view bytes);

// Exact inverse of byte_encode. Throws std::runtime_error on any symbol
// outside the 256-entry alphabet.
std::string byte_decode(std::string_view symbols);

// Split a symbol string into individual symbols (one codepoint each).
// Bytes that do not form valid UTF-8 are kept as single-byte symbols so the
// split is total and lossless.
std::vector<std::string> split_symbols(std::string_view symbols);

// Number of symbols in a symbol string (codepoint count).
std::size_t symbol_count(std::string_view symbols);

}  // namespace adaptok
