#include "adaptok/byte_level.hpp"

#include <stdexcept>
#include <unordered_map>

namespace adaptok {

namespace {

std::string encode_codepoint(uint32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

bool printable_byte(int b) {
    return (b >= '!' && b <= '~') || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF);
}

std::array<std::string, 256> build_table() {
    std::array<std::string, 256> table;
    int next_extra = 0;
    for (int b = 0; b < 256; ++b) {
        uint32_t cp;
        if (printable_byte(b)) {
            cp = static_cast<uint32_t>(b);
        } else {
            cp = 256 + next_extra++;
        }
        table[b] = encode_codepoint(cp);
    }
    return table;
}

const std::unordered_map<std::string, unsigned char>& symbol_to_byte() {
    static const std::unordered_map<std::string, unsigned char> rev = [] {
        std::unordered_map<std::string, unsigned char> m;
        const auto& table = byte_symbol_table();
        for (int b = 0; b < 256; ++b) m.emplace(table[b], static_cast<unsigned char>(b));
        return m;
    }();
    return rev;
}

// Length of the UTF-8 sequence starting at `lead`, or 0 if `lead` cannot
// start a sequence.
std::size_t utf8_seq_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return 2;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return 4;
    return 0;
}

}  // namespace

const std::array<std::string, 256>& byte_symbol_table() {
    static const std::array<std::string, 256> table = build_table();
    return table;
}

const std::string& space_marker() {
    return byte_symbol_table()[0x20];
}

std::string byte_encode(std::string_view bytes) {
    const auto& table = byte_symbol_table();
    std::string out;
    out.reserve(bytes.size());
    for (unsigned char b : bytes) out += table[b];
    return out;
}

std::string byte_decode(std::string_view symbols) {
    const auto& rev = symbol_to_byte();
    std::string out;
    out.reserve(symbols.size());
    std::size_t i = 0;
    while (i < symbols.size()) {
        std::size_t len = utf8_seq_len(static_cast<unsigned char>(symbols[i]));
        if (len == 0 || i + len > symbols.size()) {
            throw std::runtime_error("byte_decode: malformed symbol sequence");
        }
        auto it = rev.find(std::string(symbols.substr(i, len)));
        if (it == rev.end()) {
            throw std::runtime_error("byte_decode: symbol outside the byte alphabet: '" +
                                     std::string(symbols.substr(i, len)) + "'");
        }
        out.push_back(static_cast<char>(it->second));
        i += len;
    }
    return out;
}

std::vector<std::string> split_symbols(std::string_view symbols) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < symbols.size()) {
        std::size_t len = utf8_seq_len(static_cast<unsigned char>(symbols[i]));
        if (len == 0 || i + len > symbols.size()) len = 1;
        // continuation bytes must actually follow, otherwise fall back to
        // a single-byte symbol
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(symbols[i + k]) & 0xC0) != 0x80) {
                len = 1;
                break;
            }
        }
        out.emplace_back(symbols.substr(i, len));
        i += len;
    }
    return out;
}

std::size_t symbol_count(std::string_view symbols) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < symbols.size()) {
        std::size_t len = utf8_seq_len(static_cast<unsigned char>(symbols[i]));
        if (len == 0 || i + len > symbols.size()) len = 1;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(symbols[i + k]) & 0xC0) != 0x80) {
                len = 1;
                break;
            }
        }
        ++n;
        i += len;
    }
    return n;
}

}  // namespace adaptok
