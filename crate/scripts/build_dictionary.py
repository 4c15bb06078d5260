#!/usr/bin/env python3
"""Regenerate crates/core/data/dictionary.tsv from the wordfreq Turkish list.

Usage: pip install wordfreq && python3 scripts/build_dictionary.py

Word frequencies come from wordfreq (https://github.com/rspeer/wordfreq),
whose data is distributed under CC BY-SA 4.0.
"""
import pathlib
import re

import wordfreq

TOP_N = 20000
SCALE = 1e9
LETTERS = re.compile(r"^[a-zçğıöşü]+$")
FOLD = str.maketrans("çğıöşü", "cgiosu")
DIACRITICS = set("çğıöşü")

# Words the test suite and sample corpus rely on, added even when they fall
# outside the top-N cut.
EXTRA = """
gelirim geldim geliyorum germ bildirim bilim biliyorum sonuçlar sonuç
çok sağlam şımarık güzel şok selam merhaba tamam görüşürüz kendine bak
emanet ol iğrenç muhteşem mükemmel harika etkileyici süper efsane berbat
rezalet sıkıcı gereksiz nefret vasat kaliteli şölen yapıt görsel sinema
film kesinlikle tavsiye izleyin izlemeyin beğendim saçma sapan kaybı
""".split()

ROOT = pathlib.Path(__file__).resolve().parent.parent
abbrev_keys = {
    line.split("\t", 1)[0]
    for line in (ROOT / "crates/core/data/abbreviations.tsv").read_text("utf-8").splitlines()
    if line and not line.startswith("#")
}


def ndia(word):
    return sum(c in DIACRITICS for c in word)


freqs = wordfreq.get_frequency_dict("tr")
ranked = [
    w
    for w in sorted(freqs, key=lambda w: (-freqs[w], w))
    if LETTERS.match(w) and (len(w) >= 2 or w == "o") and w not in abbrev_keys
][:TOP_N]
chosen = set(ranked) | set(EXTRA)

groups = {}
for w in chosen:
    groups.setdefault(w.translate(FOLD), []).append(w)

def freq(w):
    return max(1, round(freqs.get(w, 0.0) * SCALE))

# Drop ASCII-degraded spellings ("cok") dominated by a diacritic variant.
kept = []
for members in groups.values():
    for w in members:
        if any(freq(o) >= 5 * freq(w) and ndia(o) > ndia(w) for o in members):
            continue
        kept.append(w)

kept.sort(key=lambda w: (-freq(w), w))
out = ROOT / "crates/core/data/dictionary.tsv"
with out.open("w", encoding="utf-8") as fh:
    for w in kept:
        fh.write(f"{w}\t{freq(w)}\n")
print(f"wrote {len(kept)} words to {out}")
