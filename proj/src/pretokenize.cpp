#include "adaptok/pretokenize.hpp"

#include <algorithm>
#include <cstdint>

#include "adaptok/byte_level.hpp"

namespace adaptok {

namespace {

struct CpRange {
    uint32_t lo;
    uint32_t hi;
};

#include "unicode_ranges.inc"

template <std::size_t N>
bool in_ranges(const CpRange (&ranges)[N], uint32_t cp) {
    auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                               [](uint32_t v, const CpRange& r) { return v < r.lo; });
    return it != std::begin(ranges) && cp <= std::prev(it)->hi;
}

enum class Klass { letter, number, space, other };

Klass classify(uint32_t cp, bool valid) {
    if (!valid) return Klass::other;
    if (in_ranges(kLetterRanges, cp)) return Klass::letter;
    if (in_ranges(kNumberRanges, cp)) return Klass::number;
    if (in_ranges(kSpaceRanges, cp)) return Klass::space;
    return Klass::other;
}

struct Cp {
    uint32_t value;
    std::size_t offset;  // byte offset in the text
    std::size_t length;  // bytes
    Klass klass;
};

// Decode text into codepoints. Bytes that are not valid UTF-8 become
// single-byte entries classified as `other`, keeping the scan total.
std::vector<Cp> decode_codepoints(std::string_view text) {
    std::vector<Cp> cps;
    cps.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char lead = static_cast<unsigned char>(text[i]);
        std::size_t len;
        uint32_t cp = 0;
        bool valid = true;
        if (lead < 0x80) {
            len = 1;
            cp = lead;
        } else if ((lead & 0xE0) == 0xC0) {
            len = 2;
            cp = lead & 0x1F;
        } else if ((lead & 0xF0) == 0xE0) {
            len = 3;
            cp = lead & 0x0F;
        } else if ((lead & 0xF8) == 0xF0) {
            len = 4;
            cp = lead & 0x07;
        } else {
            len = 1;
            valid = false;
        }
        if (valid && len > 1) {
            if (i + len > text.size()) {
                len = 1;
                valid = false;
            } else {
                for (std::size_t k = 1; k < len; ++k) {
                    unsigned char c = static_cast<unsigned char>(text[i + k]);
                    if ((c & 0xC0) != 0x80) {
                        len = 1;
                        valid = false;
                        break;
                    }
                    cp = (cp << 6) | (c & 0x3F);
                }
            }
        }
        if (!valid) cp = lead;
        cps.push_back({cp, i, len, classify(cp, valid)});
        i += len;
    }
    return cps;
}

bool is_contraction_at(const std::vector<Cp>& cps, std::size_t i, std::size_t& suffix_len) {
    if (cps[i].value != '\'' || i + 1 >= cps.size()) return false;
    uint32_t a = cps[i + 1].value;
    if (a == 's' || a == 't' || a == 'm' || a == 'd') {
        suffix_len = 1;
        return true;
    }
    if (i + 2 < cps.size()) {
        uint32_t b = cps[i + 2].value;
        if ((a == 'r' && b == 'e') || (a == 'v' && b == 'e') || (a == 'l' && b == 'l')) {
            suffix_len = 2;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<PreToken> pre_tokenize(std::string_view text) {
    std::vector<PreToken> out;
    const std::vector<Cp> cps = decode_codepoints(text);
    const std::size_t n = cps.size();

    auto emit = [&](std::size_t first, std::size_t last) {  // [first, last)
        std::size_t b = cps[first].offset;
        std::size_t e = cps[last - 1].offset + cps[last - 1].length;
        out.push_back({byte_encode(text.substr(b, e - b)), b, e});
    };

    std::size_t i = 0;
    while (i < n) {
        std::size_t suffix_len = 0;
        if (is_contraction_at(cps, i, suffix_len)) {
            emit(i, i + 1 + suffix_len);
            i += 1 + suffix_len;
            continue;
        }
        // optional single space attached to the run that follows
        std::size_t k = i;
        if (cps[i].value == ' ' && i + 1 < n && cps[i + 1].klass != Klass::space) k = i + 1;
        Klass c = cps[k].klass;
        if (c == Klass::letter || c == Klass::number) {
            std::size_t j = k;
            while (j < n && cps[j].klass == c) ++j;
            emit(i, j);
            i = j;
            continue;
        }
        if (c == Klass::other) {
            std::size_t j = k;
            while (j < n && cps[j].klass == Klass::other) ++j;
            emit(i, j);
            i = j;
            continue;
        }
        // whitespace run; GPT-2 leaves the last space of a run to prefix the
        // next word, so a run followed by more text sheds its final character
        std::size_t j = i;
        while (j < n && cps[j].klass == Klass::space) ++j;
        if (j == n) {
            emit(i, j);
            i = j;
        } else if (j - i > 1) {
            emit(i, j - 1);
            i = j - 1;
        } else {
            // a single non-space whitespace character before non-whitespace
            emit(i, i + 1);
            i += 1;
        }
    }
    return out;
}

}  // namespace adaptok
