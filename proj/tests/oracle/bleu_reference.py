#!/usr/bin/env python3
"""Independent reference BLEU used once to freeze test fixture values.

Transcribes the mteval-v13a tokenization and corpus BLEU exactly as the
standard public scorers define them (regex rules applied sequentially,
clipped n-gram precision for n=1..4, brevity penalty, no smoothing).
Run: python3 bleu_reference.py  -> prints the frozen stats and scores.
"""

import math
import re
from collections import Counter

RULES = [
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),  # punctuation
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),  # . , unless preceded by a digit
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),  # . , unless followed by a digit
    (re.compile(r"([0-9])(-)"), r"\1 - "),  # dash after a digit
]


def tokenize_13a(line: str):
    norm = line
    norm = norm.replace("<skipped>", "")
    norm = norm.replace("-\n", "")
    norm = norm.replace("\n", " ")
    norm = norm.replace("&quot;", '"')
    norm = norm.replace("&amp;", "&")
    norm = norm.replace("&lt;", "<")
    norm = norm.replace("&gt;", ">")
    norm = f" {norm} "
    for pattern, repl in RULES:
        norm = pattern.sub(repl, norm)
    return norm.split()


def ngrams(tokens, n):
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def sentence_stats(hyp, ref, lowercase=True):
    if lowercase:
        hyp, ref = hyp.lower(), ref.lower()
    ht, rt = tokenize_13a(hyp), tokenize_13a(ref)
    stats = {"hyp_len": len(ht), "ref_len": len(rt), "match": [0] * 4, "total": [0] * 4}
    for n in range(1, 5):
        hc, rc = ngrams(ht, n), ngrams(rt, n)
        stats["total"][n - 1] = sum(hc.values())
        stats["match"][n - 1] = sum(min(c, rc[g]) for g, c in hc.items())
    return stats


def corpus_bleu(pairs, lowercase=True):
    agg = {"hyp_len": 0, "ref_len": 0, "match": [0] * 4, "total": [0] * 4}
    for hyp, ref in pairs:
        s = sentence_stats(hyp, ref, lowercase)
        agg["hyp_len"] += s["hyp_len"]
        agg["ref_len"] += s["ref_len"]
        for n in range(4):
            agg["match"][n] += s["match"][n]
            agg["total"][n] += s["total"][n]
    bp = 1.0 if agg["hyp_len"] >= agg["ref_len"] else math.exp(1 - agg["ref_len"] / agg["hyp_len"])
    if any(m == 0 for m in agg["match"]):
        return 0.0, bp, agg
    log_p = sum(math.log(m / t) for m, t in zip(agg["match"], agg["total"]))
    return bp * math.exp(log_p / 4) * 100, bp, agg


FIXTURE = [
    (
        "kenapa saat mau login seperti ini terus?",
        "Mengapa ketika mau login seperti begini terus?",
    ),
    (
        "saya sudah coba restart hp 2 kali, tetap tidak bisa.",
        "Saya sudah mencoba memulai ulang ponsel 2 kali, tetap tidak bisa.",
    ),
    (
        "min tolong dicek ya pulsa saya hilang 50%",
        "Admin, tolong dicek, pulsa saya hilang 50%.",
    ),
    ("paket data sudah aktif kembali terima kasih", "Paket data sudah aktif kembali, terima kasih."),
    ("kok齐 aneh", "kok aneh ya"),
]

if __name__ == "__main__":
    for i, (hyp, ref) in enumerate(FIXTURE):
        s = sentence_stats(hyp, ref)
        print(f"sentence {i}: hyp_len={s['hyp_len']} ref_len={s['ref_len']} "
              f"match={s['match']} total={s['total']}")
    score, bp, agg = corpus_bleu(FIXTURE)
    print(f"corpus: bleu={score:.10f} bp={bp:.10f}")
    print(f"agg: hyp_len={agg['hyp_len']} ref_len={agg['ref_len']} "
          f"match={agg['match']} total={agg['total']}")
    print("tokens0:", tokenize_13a(FIXTURE[0][0].lower()))
    print("tokens2:", tokenize_13a(FIXTURE[2][0].lower()))
