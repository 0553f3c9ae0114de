#!/usr/bin/env python3
"""Cross-checks the C++ pre-tokenizer against the canonical GPT-2 pattern.

Needs the third-party `regex` module (the engine the original pattern is
written for) and the adaptok_pretok_dump helper binary:

    python3 scripts/check_pretokenize.py build/tests/adaptok_pretok_dump

Generates deterministic random texts over widely-assigned codepoints (so
Unicode-version drift between the `regex` module and the generated C++
tables does not produce spurious diffs) and compares token-for-token.
"""

import json
import random
import subprocess
import sys

import regex

PATTERN = regex.compile(
    r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""
)

POOL = (
    [chr(c) for c in range(0x20, 0x7F)]
    + list("\t\n\r\x0b\x0c")
    + list("éüßñÅçøĠ středa 中文字 日本語 한국어 Ωδελτα абвгд")
    + list("🙂🙃🚀")
    + list("   ")
    + list("٠١٢٣€—…·*'''")
)


def reference(text):
    return PATTERN.findall(text)


def main():
    if len(sys.argv) != 2:
        print(__doc__)
        return 2
    tool = sys.argv[1]

    rng = random.Random(995511)
    cases = []
    for _ in range(4000):
        n = rng.randrange(0, 60)
        cases.append("".join(rng.choice(POOL) for _ in range(n)))
    cases += [
        "",
        " ",
        "   ",
        "don't we'll I'm you're they've she'd it's can't",
        "'s't're've'm'll'd",
        "a  b\t\tc\n\nd",
        "trailing space ",
        "trailing spaces   ",
        "\ttab\tstops\t",
        "mixed \t \n ws",
        "number42 42number 4 2",
        "...!?!--+== (brackets) [and] {more}",
        "ĠweirdĠliteralĠmarkers",
        "CamelCase UPPER lower mIxEd",
        "'S 'T 'RE uppercase contractions stay split",
    ]

    out = subprocess.run(
        [tool], input=json.dumps(cases).encode(), capture_output=True, check=True
    )
    got_all = json.loads(out.stdout)

    bad = 0
    for text, got in zip(cases, got_all):
        want = reference(text)
        if got != want:
            bad += 1
            if bad <= 10:
                print(f"MISMATCH on {text!r}\n  want {want!r}\n  got  {got!r}")
    print(f"{len(cases)} cases, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
