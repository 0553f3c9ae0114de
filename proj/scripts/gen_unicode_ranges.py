#!/usr/bin/env python3
"""Regenerates src/unicode_ranges.inc from Python's unicodedata.

Emits sorted, closed [lo, hi] codepoint ranges for the three character
classes the pre-tokenizer needs: letters (L*), numbers (N*), and
whitespace (str.isspace, which is what Python-based BPE pre-tokenizers
use for \\s).

Usage: python3 scripts/gen_unicode_ranges.py > src/unicode_ranges.inc
"""

import sys
import unicodedata


def ranges(pred):
    out = []
    lo = None
    for cp in range(0x110000):
        if pred(cp):
            if lo is None:
                lo = cp
        elif lo is not None:
            out.append((lo, cp - 1))
            lo = None
    if lo is not None:
        out.append((lo, 0x10FFFF))
    return out


def emit(name, rs):
    print(f"static constexpr CpRange {name}[] = {{")
    for i in range(0, len(rs), 4):
        row = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in rs[i : i + 4])
        print(f"    {row},")
    print("};")
    print()


def main():
    print("// Generated by scripts/gen_unicode_ranges.py "
          f"(Unicode {unicodedata.unidata_version}). Do not edit by hand.")
    print()
    letters = ranges(lambda cp: unicodedata.category(chr(cp)).startswith("L"))
    numbers = ranges(lambda cp: unicodedata.category(chr(cp)).startswith("N"))
    spaces = ranges(lambda cp: chr(cp).isspace())
    emit("kLetterRanges", letters)
    emit("kNumberRanges", numbers)
    emit("kSpaceRanges", spaces)
    return 0


if __name__ == "__main__":
    sys.exit(main())
