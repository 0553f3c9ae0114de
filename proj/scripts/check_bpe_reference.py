#!/usr/bin/env python3
"""Cross-checks full tokenization against an independent Python reference.

Implements the byte-level BPE convention (bytes-to-unicode table, GPT-2
pre-tokenization via the `regex` module, lowest-rank-first merge loop) from
scratch and compares with the checked-in golden token file:

    python3 scripts/check_bpe_reference.py tests/fixtures
"""

import json
import sys

import regex

PATTERN = regex.compile(
    r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""
)


def bytes_to_unicode():
    bs = (
        list(range(ord("!"), ord("~") + 1))
        + list(range(ord("\xa1"), ord("\xac") + 1))
        + list(range(ord("\xae"), ord("\xff") + 1))
    )
    cs = bs[:]
    n = 0
    for b in range(2**8):
        if b not in bs:
            bs.append(b)
            cs.append(2**8 + n)
            n += 1
    return dict(zip(bs, [chr(c) for c in cs]))


BYTE_ENCODER = bytes_to_unicode()


def get_pairs(word):
    return {(word[i], word[i + 1]) for i in range(len(word) - 1)}


def bpe(token, ranks, cache={}):
    if token in cache:
        return cache[token]
    word = tuple(token)
    pairs = get_pairs(word)
    while pairs:
        bigram = min(pairs, key=lambda p: ranks.get(p, float("inf")))
        if bigram not in ranks:
            break
        first, second = bigram
        new_word = []
        i = 0
        while i < len(word):
            try:
                j = word.index(first, i)
            except ValueError:
                new_word.extend(word[i:])
                break
            new_word.extend(word[i:j])
            i = j
            if word[i] == first and i < len(word) - 1 and word[i + 1] == second:
                new_word.append(first + second)
                i += 2
            else:
                new_word.append(word[i])
                i += 1
        word = tuple(new_word)
        if len(word) == 1:
            break
        pairs = get_pairs(word)
    cache[token] = word
    return word


def tokenize(text, ranks, vocab):
    tokens, ids = [], []
    for chunk in PATTERN.findall(text):
        mapped = "".join(BYTE_ENCODER[b] for b in chunk.encode("utf-8"))
        for piece in bpe(mapped, ranks):
            if piece in vocab:
                tokens.append(piece)
                ids.append(vocab[piece])
            else:
                for sym in piece:
                    tokens.append(sym)
                    ids.append(vocab[sym])
    return tokens, ids


def main():
    if len(sys.argv) != 2:
        print(__doc__)
        return 2
    fixtures = sys.argv[1]

    vocab = json.load(open(f"{fixtures}/vocab.json", encoding="utf-8"))
    ranks = {}
    for line in open(f"{fixtures}/merges.txt", encoding="utf-8"):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        left, right = line.split(" ")
        ranks[(left, right)] = len(ranks)

    golden = [json.loads(l) for l in open(f"{fixtures}/golden_tokens.jsonl", encoding="utf-8")]
    lines = open(f"{fixtures}/english.txt", encoding="utf-8").read().splitlines()

    bad = 0
    for text, want in zip(lines, golden):
        tokens, ids = tokenize(text, ranks, vocab)
        if tokens != want["tokens"] or ids != want["ids"]:
            bad += 1
            print(f"MISMATCH on {text!r}\n  want {want['tokens']!r}\n  got  {tokens!r}")
    print(f"{len(lines)} lines, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
